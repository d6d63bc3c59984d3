"""Command-line interface.

Subcommands:
  stationary    bandwidth limit of a fixed-distance link with equal arrays
  mobile        limit for mobility coefficient M and Tx/Rx size ratio L
  mobile-fixed  limit with the receiver array side pinned
  power         transmit power needed for a target bandwidth
  fraunhofer    near-field boundary of two square arrays
  check         both far-field conditions for a concrete design
  sweep         figure datasets as CSV or JSON
  oracle        brute-force cross-check of a closed-form limit

Exit status: 0 on success, 1 for an infeasible design under --strict (or an
oracle that fails to converge), 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .config import Effective, ScenarioConfig, load_config, read_json, resolve
from .errors import ConfigError, InvalidInputError, OracleConvergenceError
from .feasibility import (
    max_bandwidth_general,
    max_bandwidth_mobile,
    max_bandwidth_mobile_fixed_rx,
    max_bandwidth_stationary,
    max_capacity,
    mobility_penalty,
    optimal_symmetric_size,
    ratio_split_sizes,
    required_tx_power,
    solve_d1_interval,
)
from .geometry import (
    elements_from_size,
    fraunhofer_classic,
    fraunhofer_from_elements,
    fraunhofer_two_arrays,
    size_from_elements,
)
from .linkbudget import (
    LinkGeometry,
    RadioParams,
    condition1_holds,
    condition2_holds,
    condition2_product_holds,
    snr_at_distance,
)
from .oracle import OracleConfig, oracle_max_bandwidth, oracle_required_power
from .sweep import SCENARIOS, emit_table, run_sweep, spec_from_document, write_table
from .units import dbm_to_watts, wavelength

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 1, 2

RADIO = ("ptx_dbm", "snr_db", "nf_db", "temp_k")

_FLAG_HELP = {
    "ptx_dbm": "transmit power (dBm)",
    "snr_db": "SNR threshold at the cell edge (dB)",
    "nf_db": "receiver noise figure (dB)",
    "temp_k": "system temperature (K)",
    "freq_hz": "carrier frequency (Hz)",
    "distance_m": "link distance of a stationary link (m)",
    "dmin_m": "minimum Tx-Rx distance (m)",
    "dmax_m": "maximum Tx-Rx distance (m); defaults to --dmin-m",
    "mobility_m": "mobility coefficient M = dmax/dmin",
    "ineq_l": "antenna inequality coefficient L = D1/D2",
    "d2_max_m": "receiver array side (m)",
    "bandwidth_hz": "signal bandwidth (Hz)",
    "d1_m": "Tx array side (m)",
    "d2_m": "Rx array side (m)",
    "n1": "Tx elements per side",
    "n2": "Rx elements per side",
}


def _add_params(parser: argparse.ArgumentParser, keys: Sequence[str]) -> None:
    for key in keys:
        parser.add_argument("--" + key.replace("_", "-"), dest=key, type=float, default=None, help=_FLAG_HELP[key])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario file; flags override its values")
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--strict", action="store_true", help="exit 1 when the design is infeasible")

    parser = argparse.ArgumentParser(
        prog="thz-farfield",
        description="Far-field bandwidth and power limits for terahertz array links.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log parameter provenance")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("stationary", parents=[common], help="stationary bandwidth limit")
    _add_params(p, RADIO + ("freq_hz", "distance_m"))

    p = sub.add_parser("mobile", parents=[common], help="mobile bandwidth limit for (M, L)")
    _add_params(p, RADIO + ("mobility_m", "ineq_l", "freq_hz", "dmin_m"))

    p = sub.add_parser("mobile-fixed", parents=[common], help="mobile limit with a fixed Rx array")
    _add_params(p, RADIO + ("d2_max_m", "freq_hz", "dmin_m", "dmax_m"))

    p = sub.add_parser("power", parents=[common], help="required transmit power")
    _add_params(p, ("bandwidth_hz", "mobility_m", "ineq_l", "snr_db", "nf_db", "temp_k"))

    p = sub.add_parser("fraunhofer", parents=[common], help="two-array Fraunhofer distance")
    _add_params(p, ("d1_m", "d2_m", "n1", "n2", "freq_hz"))

    p = sub.add_parser("check", parents=[common], help="check a design against both conditions")
    _add_params(p, RADIO + ("freq_hz", "dmin_m", "dmax_m", "d1_m", "d2_m", "bandwidth_hz"))

    p = sub.add_parser("sweep", parents=[common], help="emit a figure dataset")
    p.add_argument("--scenario", required=True, choices=SCENARIOS)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("oracle", parents=[common], help="brute-force verification")
    p.add_argument("--mode", choices=("bandwidth", "power"), default="bandwidth")
    p.add_argument("--grid", type=int, default=512, help="grid points per array-side axis")
    p.add_argument("--tol", type=float, default=1e-4, help="relative bisection tolerance")
    p.add_argument("--max-iter", type=int, default=200)
    _add_params(p, RADIO + ("freq_hz", "dmin_m", "dmax_m", "bandwidth_hz", "mobility_m", "ineq_l"))
    return parser


def _effective(args) -> Effective:
    config = load_config(args.config) if args.config else ScenarioConfig()
    flags = {k: v for k, v in vars(args).items() if k in _FLAG_HELP}
    return resolve(config, flags)


def _radio(eff: Effective) -> RadioParams:
    return RadioParams(*eff.require(*RADIO))


def _geometry(eff: Effective) -> LinkGeometry:
    return LinkGeometry(*eff.require("freq_hz", "dmin_m", "dmax_m"))


def cmd_stationary(args, eff):
    radio = _radio(eff)
    limit = max_bandwidth_stationary(radio).max_bandwidth_hz
    result = {
        "max_bandwidth_hz": limit,
        "max_capacity_bps": max_capacity(limit, radio.snr_threshold_db),
    }
    keys = list(RADIO)
    if eff["freq_hz"] is not None and eff["distance_m"] is not None:
        lam = float(wavelength(eff["freq_hz"]))
        side = optimal_symmetric_size(lam, eff["distance_m"])
        result.update(
            wavelength_m=lam,
            optimal_side_m=side,
            optimal_elements_per_side=float(elements_from_size(side, lam)),
            fraunhofer_distance_m=float(fraunhofer_two_arrays(side, side, lam)),
        )
        keys += ["freq_hz", "distance_m"]
    return result, keys, True


def cmd_mobile(args, eff):
    radio = _radio(eff)
    m, l = eff.require("mobility_m", "ineq_l")
    stationary = max_bandwidth_stationary(radio).max_bandwidth_hz
    limit = max_bandwidth_mobile(radio, m, l).max_bandwidth_hz
    size_penalty = (l + 1.0) ** 4 / (16.0 * l**2)
    result = {
        "max_bandwidth_hz": limit,
        "stationary_bandwidth_hz": stationary,
        "distance_penalty": m**2,
        "size_penalty": size_penalty,
        "mobility_penalty": mobility_penalty(m, l),
        "mobility_penalty_db": 10.0 * math.log10(mobility_penalty(m, l)),
        "max_capacity_bps": max_capacity(limit, radio.snr_threshold_db),
    }
    keys = list(RADIO) + ["mobility_m", "ineq_l"]
    if eff.given("freq_hz") or eff.given("dmin_m"):
        lam = float(wavelength(eff["freq_hz"]))
        d1, d2 = ratio_split_sizes(lam, eff["dmin_m"], l)
        result.update(d1_m=d1, d2_m=d2)
        keys += ["freq_hz", "dmin_m"]
    return result, keys, True


def cmd_mobile_fixed(args, eff):
    radio = _radio(eff)
    geom = _geometry(eff)
    (d2_max,) = eff.require("d2_max_m")
    limit = max_bandwidth_mobile_fixed_rx(radio, geom, d2_max)
    result = {
        "max_bandwidth_hz": limit.max_bandwidth_hz,
        "d1_m": limit.optimal_d1_m,
        "d2_m": limit.optimal_d2_m,
        "mobility": geom.mobility,
        "max_capacity_bps": max_capacity(limit.max_bandwidth_hz, radio.snr_threshold_db),
    }
    return result, list(RADIO) + ["d2_max_m", "freq_hz", "dmin_m", "dmax_m"], True


def cmd_power(args, eff):
    b, m, l, snr, nf, t = eff.require("bandwidth_hz", "mobility_m", "ineq_l", "snr_db", "nf_db", "temp_k")
    ptx = required_tx_power(b, m, l, snr, nf, t)
    result = {"required_ptx_dbm": ptx, "required_ptx_w": float(dbm_to_watts(ptx))}
    return result, ["bandwidth_hz", "mobility_m", "ineq_l", "snr_db", "nf_db", "temp_k"], True


def cmd_fraunhofer(args, eff):
    (freq,) = eff.require("freq_hz")
    lam = float(wavelength(freq))
    if eff["d1_m"] is not None or eff["d2_m"] is not None:
        if eff["n1"] is not None or eff["n2"] is not None:
            raise ConfigError("give either --d1-m/--d2-m or --n1/--n2, not both")
        d1, d2 = eff.require("d1_m", "d2_m")
        keys = ["d1_m", "d2_m", "freq_hz"]
        d_f = float(fraunhofer_two_arrays(d1, d2, lam))
    else:
        n1, n2 = eff.require("n1", "n2")
        keys = ["n1", "n2", "freq_hz"]
        d_f = float(fraunhofer_from_elements(n1, n2, lam))
        d1, d2 = float(size_from_elements(n1, lam)), float(size_from_elements(n2, lam))
    result = {
        "fraunhofer_distance_m": d_f,
        "wavelength_m": lam,
        "d1_m": d1,
        "d2_m": d2,
        "n1": float(elements_from_size(d1, lam)),
        "n2": float(elements_from_size(d2, lam)),
        "classic_tx_only_m": float(fraunhofer_classic(d1, lam)),
    }
    return result, keys, True


def cmd_check(args, eff):
    radio = _radio(eff)
    geom = _geometry(eff)
    d1, d2, b = eff.require("d1_m", "d2_m", "bandwidth_hz")
    c1 = bool(condition1_holds(geom, d1, d2))
    c2 = bool(condition2_holds(radio, geom, d1, d2, b))
    report = solve_d1_interval(radio, geom, b)
    limit = max_bandwidth_general(radio, geom)
    result = {
        "condition1_far_field": c1,
        "condition2_snr": c2,
        "condition2_product_form": bool(condition2_product_holds(radio, geom, d1, d2, b)),
        "feasible_design": c1 and c2,
        "fraunhofer_distance_m": float(fraunhofer_two_arrays(d1, d2, geom.wavelength_m)),
        "snr_at_dmax_db": float(snr_at_distance(radio, geom.wavelength_m, d1, d2, b, geom.d_max_m)),
        "d1_interval_feasible": report.feasible,
        "d1_interval_low_m": report.root_low_x1,
        "d1_interval_high_m": report.root_high_x2,
        "discriminant_m2": report.discriminant,
        "max_bandwidth_hz": limit.max_bandwidth_hz,
        "optimal_side_m": limit.optimal_d1_m,
    }
    keys = list(RADIO) + ["freq_hz", "dmin_m", "dmax_m", "d1_m", "d2_m", "bandwidth_hz"]
    return result, keys, c1 and c2


def cmd_oracle(args, eff):
    cfg = OracleConfig(args.grid, args.tol, args.max_iter)
    if args.mode == "bandwidth":
        verdict = oracle_max_bandwidth(_radio(eff), _geometry(eff), cfg)
        keys = list(RADIO) + ["freq_hz", "dmin_m", "dmax_m"]
    else:
        b, m, l, snr, nf, t = eff.require("bandwidth_hz", "mobility_m", "ineq_l", "snr_db", "nf_db", "temp_k")
        verdict = oracle_required_power(b, m, l, snr, nf, t, cfg)
        keys = ["bandwidth_hz", "mobility_m", "ineq_l", "snr_db", "nf_db", "temp_k"]
    result = dict(vars(verdict))
    result.update(mode=args.mode, grid=args.grid, tol=args.tol)
    return result, keys, True


def cmd_sweep(args) -> int:
    doc = read_json(args.config) if args.config else None
    if doc is not None and not isinstance(doc, dict):
        raise ConfigError(f"{args.config}: top level must be a JSON object")
    table = run_sweep(spec_from_document(args.scenario, doc))
    fmt = "json" if args.json else args.format
    if args.out == "-":
        sys.stdout.buffer.write(emit_table(table, fmt))
        sys.stdout.flush()
    else:
        write_table(table, fmt, args.out)
    if args.strict and not all(row["feasible"] for row in table.rows):
        return EXIT_INFEASIBLE
    return EXIT_OK


COMMANDS = {
    "stationary": cmd_stationary,
    "mobile": cmd_mobile,
    "mobile-fixed": cmd_mobile_fixed,
    "power": cmd_power,
    "fraunhofer": cmd_fraunhofer,
    "check": cmd_check,
    "oracle": cmd_oracle,
}


def _format(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _print_result(command: str, result: dict, params: dict, as_json: bool) -> None:
    if as_json:
        doc = {"command": command, "params": params, "result": result}
        print(json.dumps(doc, indent=2))
        return
    print(f"[{command}]")
    width = max(len(k) for k in result)
    for key, value in result.items():
        print(f"  {key:<{width}}  {_format(value)}")
    print("parameters:")
    for key, entry in params.items():
        note = f", config had {_format(entry['config_value'])}" if "config_value" in entry else ""
        print(f"  {key} = {_format(entry['value'])} ({entry['source']}{note})")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        eff = _effective(args)
        result, keys, ok = COMMANDS[args.command](args, eff)
    except (ConfigError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OracleConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _print_result(args.command, result, eff.echo(keys), args.json)
    if args.strict and not ok:
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
