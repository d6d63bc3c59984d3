"""Parameter sweeps behind the stationary/mobile figure datasets.

A :class:`SweepSpec` names fixed parameters, one or two swept axes, an
optional list of series (curves that override some fixed values) and the
quantity to compute. :func:`run_sweep` evaluates every grid point in a fixed
order and :func:`emit_table` serialises the result as CSV or JSON.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import __version__
from .errors import ConfigError
from .feasibility import (
    max_bandwidth_general,
    max_bandwidth_mobile,
    max_bandwidth_stationary,
    max_capacity,
    mobility_penalty,
    ratio_split_sizes,
    required_tx_power,
)
from .geometry import elements_from_size
from .linkbudget import DEFAULT_TEMPERATURE_K, LinkGeometry, RadioParams
from .units import wavelength

PARAMETERS = (
    "ptx_dbm",
    "snr_db",
    "nf_db",
    "temperature_k",
    "frequency_hz",
    "d_min_m",
    "m",
    "l",
    "bandwidth_hz",
)
SWEEPABLE = ("ptx_dbm", "snr_db", "nf_db", "frequency_hz", "m", "l", "bandwidth_hz")
OUTPUTS = ("max_bandwidth", "antenna_size", "required_power")
SCENARIOS = ("fig2a", "fig2b", "fig2c", "fig4a", "fig4b", "fig4c", "fig7", "custom")

# Values used when a scenario leaves a needed parameter unset. Each use is
# listed under meta["defaults"].
DEFAULTS = {
    "ptx_dbm": 23.0,
    "snr_db": 20.0,
    "nf_db": 10.0,
    "temperature_k": DEFAULT_TEMPERATURE_K,
    "frequency_hz": 300e9,
    "d_min_m": 10.0,
    "m": 1.0,
    "l": 1.0,
}

_NEEDS = {
    "max_bandwidth": ("ptx_dbm", "snr_db", "nf_db", "temperature_k", "m", "l"),
    "antenna_size": ("ptx_dbm", "snr_db", "nf_db", "temperature_k", "m", "l", "frequency_hz", "d_min_m"),
    "required_power": ("bandwidth_hz", "snr_db", "nf_db", "temperature_k", "m", "l"),
}

_RESULT_COLUMNS = {
    "max_bandwidth": ("mobility_penalty", "max_bandwidth_hz", "max_capacity_bps"),
    "antenna_size": ("wavelength_m", "d1_m", "d2_m", "n1", "n2", "max_bandwidth_hz"),
    "required_power": ("required_ptx_dbm",),
}


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    @classmethod
    def linear(cls, name: str, start: float, stop: float, step: float) -> "Axis":
        """Evenly spaced values from ``start`` to ``stop`` inclusive."""
        if not step > 0:
            raise ConfigError(f"axis {name!r}: step must be > 0, got {step!r}")
        if stop < start:
            raise ConfigError(f"axis {name!r}: empty range [{start!r}, {stop!r}]")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return cls(name, tuple(float(start + i * step) for i in range(count)))

    @classmethod
    def log(cls, name: str, start: float, stop: float, per_decade: int) -> "Axis":
        """``per_decade`` log-spaced values per decade from ``start`` to ``stop`` inclusive."""
        if not (start > 0 and stop >= start and per_decade >= 1):
            raise ConfigError(f"axis {name!r}: invalid log range {start!r}..{stop!r}/{per_decade!r}")
        lo, hi = math.log10(start), math.log10(stop)
        count = int(round((hi - lo) * per_decade)) + 1
        return cls(name, tuple(float(10.0 ** (lo + i / per_decade)) for i in range(count)))


@dataclass(frozen=True)
class Series:
    label: str
    overrides: dict[str, float] = field(default_factory=dict)


@dataclass
class SweepSpec:
    scenario_id: str
    fixed_params: dict[str, float]
    axes: list[Axis]
    output_quantity: str
    series: list[Series] = field(default_factory=lambda: [Series("")])

    def validate(self) -> None:
        if self.scenario_id not in SCENARIOS:
            raise ConfigError(f"scenario_id: unknown scenario {self.scenario_id!r}")
        if self.output_quantity not in OUTPUTS:
            raise ConfigError(f"output_quantity: must be one of {OUTPUTS}, got {self.output_quantity!r}")
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError(f"axes: need 1 or 2 swept axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError(f"axes: duplicate axis in {names}")
        for axis in self.axes:
            if axis.name not in SWEEPABLE:
                raise ConfigError(f"axes: {axis.name!r} cannot be swept; choose from {SWEEPABLE}")
            if not axis.values:
                raise ConfigError(f"axes: {axis.name!r} has no values")
            if axis.name in self.fixed_params:
                raise ConfigError(f"fixed_params: {axis.name!r} is also a swept axis")
        for key in self.fixed_params:
            if key not in PARAMETERS:
                raise ConfigError(f"fixed_params: unknown parameter {key!r}")
        if not self.series:
            raise ConfigError("series: at least one series is required")
        for s in self.series:
            for key in s.overrides:
                if key not in PARAMETERS:
                    raise ConfigError(f"series {s.label!r}: unknown parameter {key!r}")
                if key in names:
                    raise ConfigError(f"series {s.label!r}: {key!r} is also a swept axis")
        if self.output_quantity == "required_power":
            provided = set(self.fixed_params) | set(names)
            if "bandwidth_hz" not in provided and not all("bandwidth_hz" in s.overrides for s in self.series):
                raise ConfigError("bandwidth_hz: required_power needs a bandwidth")


@dataclass
class SweepTable:
    columns: list[str]
    rows: list[dict[str, Any]]
    meta: dict[str, Any]


def _present(spec: SweepSpec) -> list[str]:
    keys = set(spec.fixed_params) | {a.name for a in spec.axes}
    for s in spec.series:
        keys |= set(s.overrides)
    keys |= set(_NEEDS[spec.output_quantity])
    return [k for k in PARAMETERS if k in keys]


def _evaluate(output: str, p: dict[str, float]) -> tuple[dict[str, float], bool]:
    radio = None
    if "ptx_dbm" in p:
        radio = RadioParams(p["ptx_dbm"], p["snr_db"], p["nf_db"], p["temperature_k"])
    if output == "required_power":
        ptx = required_tx_power(p["bandwidth_hz"], p["m"], p["l"], p["snr_db"], p["nf_db"], p["temperature_k"])
        feasible = ptx <= p["ptx_dbm"] if "ptx_dbm" in p else True
        return {"required_ptx_dbm": ptx}, feasible

    if p["m"] == 1 and p["l"] == 1:
        limit = max_bandwidth_stationary(radio).max_bandwidth_hz
    else:
        limit = max_bandwidth_mobile(radio, p["m"], p["l"]).max_bandwidth_hz
    feasible = p["bandwidth_hz"] <= limit if "bandwidth_hz" in p else True
    if output == "max_bandwidth":
        return {
            "mobility_penalty": mobility_penalty(p["m"], p["l"]),
            "max_bandwidth_hz": limit,
            "max_capacity_bps": max_capacity(limit, p["snr_db"]),
        }, feasible

    lam = float(wavelength(p["frequency_hz"]))
    d1, d2 = ratio_split_sizes(lam, p["d_min_m"], p["l"])
    return {
        "wavelength_m": lam,
        "d1_m": d1,
        "d2_m": d2,
        "n1": float(elements_from_size(d1, lam)),
        "n2": float(elements_from_size(d2, lam)),
        "max_bandwidth_hz": limit,
    }, feasible


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate ``spec`` at every grid point.

    Rows are ordered by series, then lexicographically over the axes in the
    order they are declared.
    """
    spec.validate()
    present = _present(spec)
    axis_names = [a.name for a in spec.axes]
    defaulted: dict[str, float] = {}

    rows = []
    for s in spec.series:
        base = dict(spec.fixed_params)
        base.update(s.overrides)
        for key in present:
            if key not in base and key not in axis_names:
                if key not in DEFAULTS:
                    raise ConfigError(f"{key}: no value given and no default exists")
                base[key] = DEFAULTS[key]
                defaulted[key] = DEFAULTS[key]
        for point in itertools.product(*(a.values for a in spec.axes)):
            params = dict(base)
            params.update(zip(axis_names, point))
            results, feasible = _evaluate(spec.output_quantity, params)
            row: dict[str, Any] = {"series": s.label}
            row.update({k: float(params[k]) for k in axis_names})
            row.update({k: float(params[k]) for k in present if k not in axis_names})
            if "d_min_m" in params:
                row["d_max_m"] = float(params["d_min_m"] * params["m"])
            row.update({k: float(v) for k, v in results.items()})
            row["feasible"] = bool(feasible)
            rows.append(row)

    columns = list(rows[0].keys())
    meta = {
        "tool": "thz-farfield",
        "version": __version__,
        "scenario": spec.scenario_id,
        "output_quantity": spec.output_quantity,
        "fixed_params": {k: float(v) for k, v in spec.fixed_params.items()},
        "defaults": defaulted,
        "temperature_k": float(
            spec.fixed_params.get("temperature_k", defaulted.get("temperature_k", DEFAULT_TEMPERATURE_K))
        ),
        "axes": [{"name": a.name, "values": list(a.values)} for a in spec.axes],
        "series": [{"label": s.label, "overrides": dict(s.overrides)} for s in spec.series],
    }
    return SweepTable(columns, rows, meta)


def _format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_table(table: SweepTable, fmt: str = "csv") -> bytes:
    """Serialise a table.

    CSV has one header line and one line per row, floats in shortest
    round-trip form. JSON is ``{"meta": ..., "rows": [...]}``.
    """
    if not table.rows:
        raise ConfigError("cannot emit an empty table")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_format_cell(row[c]) for c in table.columns])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {"meta": table.meta, "rows": table.rows}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    raise ConfigError(f"format: must be 'csv' or 'json', got {fmt!r}")


def write_table(table: SweepTable, fmt: str, path: str) -> None:
    data = emit_table(table, fmt)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"could not write {fmt} sweep output to {path!r}: {exc}") from exc


# --- presets ---------------------------------------------------------------

_GHZ = 1e9


def preset(scenario_id: str) -> SweepSpec:
    """Built-in sweep for one of the figure scenarios.

    Ranges not pinned by the source scenarios are chosen to cover every
    quantitative claim about them; those choices end up in ``meta``.
    """
    freq_axis = Axis.linear("frequency_hz", 100 * _GHZ, 1000 * _GHZ, 10 * _GHZ)
    if scenario_id == "fig2a":
        return SweepSpec(
            "fig2a",
            {"snr_db": 30.0, "temperature_k": 296.0, "m": 1.0, "l": 1.0},
            [Axis("nf_db", (0.0, 5.0, 10.0, 15.0)), Axis.linear("ptx_dbm", -20, 40, 1)],
            "max_bandwidth",
        )
    if scenario_id == "fig2b":
        return SweepSpec(
            "fig2b",
            {"ptx_dbm": 17.0, "temperature_k": 296.0, "m": 1.0, "l": 1.0},
            [Axis("nf_db", (0.0, 5.0, 10.0, 15.0)), Axis.linear("snr_db", 0, 40, 1)],
            "max_bandwidth",
        )
    if scenario_id == "fig2c":
        return SweepSpec(
            "fig2c",
            {"ptx_dbm": 17.0, "snr_db": 30.0, "nf_db": 10.0, "temperature_k": 296.0, "m": 1.0, "l": 1.0},
            [freq_axis],
            "antenna_size",
            [Series(f"d={d:g}m", {"d_min_m": d}) for d in (10.0, 50.0, 100.0, 200.0)],
        )
    if scenario_id == "fig4a":
        return SweepSpec(
            "fig4a",
            {"ptx_dbm": 23.0, "nf_db": 10.0, "snr_db": 20.0, "temperature_k": 296.0, "l": 1.0},
            [Axis.linear("m", 1, 100, 1)],
            "max_bandwidth",
        )
    if scenario_id == "fig4b":
        return SweepSpec(
            "fig4b",
            {"ptx_dbm": 23.0, "nf_db": 10.0, "snr_db": 20.0, "temperature_k": 296.0},
            [Axis.linear("l", 1, 50, 1)],
            "max_bandwidth",
            [Series(f"M={m:g}", {"m": m}) for m in (1.0, 40.0, 50.0)],
        )
    if scenario_id == "fig4c":
        return SweepSpec(
            "fig4c",
            {"ptx_dbm": 23.0, "nf_db": 10.0, "snr_db": 20.0, "temperature_k": 296.0, "d_min_m": 10.0, "m": 1.0},
            [freq_axis],
            "antenna_size",
            [Series(f"L={l:g}", {"l": l}) for l in (20.0, 30.0)],
        )
    if scenario_id == "fig7":
        return SweepSpec(
            "fig7",
            {"snr_db": 20.0, "nf_db": 10.0, "temperature_k": 296.0},
            [Axis.log("bandwidth_hz", 1e8, 1e12, 10)],
            "required_power",
            [
                Series("stationary", {"l": 1.0, "m": 1.0}),
                Series("smartphone-indoor", {"l": 20.0, "m": 50.0}),
                Series("smartphone-outdoor", {"l": 20.0, "m": 40.0}),
                Series("xr-indoor", {"l": 30.0, "m": 50.0}),
                Series("xr-outdoor", {"l": 30.0, "m": 40.0}),
            ],
        )
    raise ConfigError(f"scenario: no preset named {scenario_id!r}")


# scenario-config spellings accepted in a sweep document's "fixed" block
_ALIASES = {
    "temp_k": "temperature_k",
    "freq_hz": "frequency_hz",
    "dmin_m": "d_min_m",
    "mobility_m": "m",
    "ineq_l": "l",
}


def _axis_from_doc(doc: dict) -> Axis:
    if not isinstance(doc, dict) or "name" not in doc:
        raise ConfigError(f"axes: each axis needs a 'name', got {doc!r}")
    name = doc["name"]
    unknown = set(doc) - {"name", "values", "start", "stop", "step", "per_decade"}
    if unknown:
        raise ConfigError(f"axes[{name}]: unknown key {sorted(unknown)[0]!r}")
    if "values" in doc:
        return Axis(name, tuple(float(v) for v in doc["values"]))
    try:
        if "per_decade" in doc:
            return Axis.log(name, float(doc["start"]), float(doc["stop"]), int(doc["per_decade"]))
        return Axis.linear(name, float(doc["start"]), float(doc["stop"]), float(doc["step"]))
    except KeyError as exc:
        raise ConfigError(f"axes[{name}]: missing {exc.args[0]!r}") from None


def spec_from_document(scenario_id: str, doc: Optional[dict] = None) -> SweepSpec:
    """Build a spec from a preset and/or a JSON sweep document.

    The document may contain ``fixed`` (parameter overrides), ``axes``,
    ``series`` and ``output``. For ``custom`` the last three are required;
    for presets they replace the preset's own.
    """
    doc = dict(doc or {})
    unknown = set(doc) - {"fixed", "axes", "series", "output"}
    if unknown:
        raise ConfigError(f"sweep config: unknown key {sorted(unknown)[0]!r}")
    if scenario_id == "custom":
        for key in ("axes", "output"):
            if key not in doc:
                raise ConfigError(f"sweep config: custom scenario needs {key!r}")
        spec = SweepSpec("custom", {}, [], doc["output"])
    else:
        spec = preset(scenario_id)
    if "axes" in doc:
        spec.axes = [_axis_from_doc(a) for a in doc["axes"]]
    if "output" in doc:
        spec.output_quantity = doc["output"]
    if "series" in doc:
        spec.series = [
            Series(str(s.get("label", "")), {k: float(v) for k, v in s.get("overrides", {}).items()})
            for s in doc["series"]
        ]
    swept = {a.name for a in spec.axes}
    overrides = {_ALIASES.get(k, k): float(v) for k, v in doc.get("fixed", {}).items()}
    fixed = {k: v for k, v in spec.fixed_params.items() if k not in swept}
    fixed.update(overrides)
    spec.fixed_params = fixed
    spec.validate()
    return spec


def scenario_ids() -> Sequence[str]:
    return SCENARIOS
