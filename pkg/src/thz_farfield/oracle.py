"""Brute-force cross-check of the closed-form limits.

The oracle never touches the quadratic algebra in :mod:`.feasibility`. It
lays a uniform grid over candidate array sides, asks the link-budget
primitives directly whether each pair is far-field and meets the SNR
threshold, and bisects the bandwidth (or transmit power) on that predicate.
A finite grid can only miss feasible designs, so the oracle limit
under-approximates the exact one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInputError, OracleConvergenceError
from .feasibility import max_bandwidth_general, required_tx_power
from .linkbudget import LinkGeometry, RadioParams, condition1_holds, condition2_holds

BANDWIDTH_BRACKET_HZ = (1.0, 1e16)
POWER_BRACKET_DBM = (-100.0, 200.0)
_EXPAND_LOG2 = 16.0
_EXPAND_DB = 100.0


@dataclass(frozen=True)
class OracleConfig:
    """Search resolution.

    Attributes:
        d_grid_points: Grid points per array-side axis, endpoints included.
        b_rel_tolerance: Bisection stops once ``hi / lo <= 1 + b_rel_tolerance``.
            The power search uses the equivalent ``10 log10(1 + tol)`` dB.
        max_iterations: Budget shared by bracket expansion and bisection.
    """

    d_grid_points: int = 512
    b_rel_tolerance: float = 1e-4
    max_iterations: int = 200

    def __post_init__(self):
        if self.d_grid_points < 64:
            raise InvalidInputError(f"d_grid_points must be >= 64, got {self.d_grid_points}")
        if not 0 < self.b_rel_tolerance <= 1e-3:
            raise InvalidInputError(
                f"b_rel_tolerance must be in (0, 1e-3], got {self.b_rel_tolerance}"
            )
        if self.max_iterations < 1:
            raise InvalidInputError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class OracleVerdict:
    analytic_limit_hz: float
    oracle_limit_hz: float
    relative_gap: float
    witness_d1_m: float
    witness_d2_m: float
    iterations: int


@dataclass(frozen=True)
class PowerVerdict:
    analytic_ptx_dbm: float
    oracle_ptx_dbm: float
    gap_db: float
    witness_d1_m: float
    witness_d2_m: float
    iterations: int


def _pair_grid(geom: LinkGeometry, points: int):
    side = np.linspace(0.0, geom.max_aperture_sum_m, points)
    d1, d2 = np.meshgrid(side, side, indexing="ij")
    return d1.ravel(), d2.ravel()


def _first_witness(radio, geom, d1, d2, bandwidth_hz):
    """Return the passing pair with the largest aperture product, or ``None``."""
    ok = condition1_holds(geom, d1, d2) & condition2_holds(radio, geom, d1, d2, bandwidth_hz)
    if not ok.any():
        return None
    idx = np.flatnonzero(ok)
    best = idx[np.argmax(d1[idx] * d2[idx])]
    return float(d1[best]), float(d2[best])


def oracle_feasible(
    radio: RadioParams, geom: LinkGeometry, bandwidth_hz: float, cfg: OracleConfig = OracleConfig()
) -> tuple[bool, Optional[tuple[float, float]]]:
    """Grid search for a pair ``(D1, D2)`` passing both conditions at ``bandwidth_hz``.

    Returns:
        ``(True, (D1, D2))`` with the best-margin witness, or ``(False, None)``.
    """
    if not bandwidth_hz > 0:
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    d1, d2 = _pair_grid(geom, cfg.d_grid_points)
    witness = _first_witness(radio, geom, d1, d2, bandwidth_hz)
    return witness is not None, witness


def _bisect(predicate, lo, hi, step, stop_width, max_iterations):
    """Threshold of a predicate that is true below and false above it.

    Expands ``[lo, hi]`` by ``step`` until it brackets the switch, then
    halves it until narrower than ``stop_width``. Returns the final bracket,
    the last witness found at ``lo`` and the iteration count.
    """
    iterations = 0
    ok, lo_witness = predicate(lo)
    while not ok:
        iterations += 1
        if iterations > max_iterations:
            raise OracleConvergenceError(f"no feasible point found down to {lo!r}")
        hi, lo = lo, lo - step
        ok, lo_witness = predicate(lo)
    ok, witness = predicate(hi)
    while ok:
        iterations += 1
        if iterations > max_iterations:
            raise OracleConvergenceError(f"no infeasible point found up to {hi!r}")
        lo, lo_witness = hi, witness
        hi = hi + step
        ok, witness = predicate(hi)
    while hi - lo > stop_width:
        iterations += 1
        if iterations > max_iterations:
            raise OracleConvergenceError(
                f"bisection did not reach width {stop_width!r} within {max_iterations} iterations"
            )
        mid = 0.5 * (lo + hi)
        ok, witness = predicate(mid)
        if ok:
            lo, lo_witness = mid, witness
        else:
            hi = mid
    return lo, hi, lo_witness, iterations


def oracle_max_bandwidth(
    radio: RadioParams, geom: LinkGeometry, cfg: OracleConfig = OracleConfig()
) -> OracleVerdict:
    """Largest grid-feasible bandwidth, compared with the closed-form limit.

    Bisection runs on ``log2(B)`` starting from ``[1 Hz, 1e16 Hz]``; the
    bracket is widened when the limit falls outside it.
    """
    d1, d2 = _pair_grid(geom, cfg.d_grid_points)
    near_ok = condition1_holds(geom, d1, d2)
    d1, d2 = d1[near_ok], d2[near_ok]

    def predicate(log2_b):
        witness = _first_witness(radio, geom, d1, d2, 2.0**log2_b)
        return witness is not None, witness

    lo, _, witness, iterations = _bisect(
        predicate,
        math.log2(BANDWIDTH_BRACKET_HZ[0]),
        math.log2(BANDWIDTH_BRACKET_HZ[1]),
        _EXPAND_LOG2,
        math.log2(1.0 + cfg.b_rel_tolerance),
        cfg.max_iterations,
    )
    oracle_b = 2.0**lo
    analytic_b = max_bandwidth_general(radio, geom).max_bandwidth_hz
    gap = abs(analytic_b - oracle_b) / max(analytic_b, np.finfo(float).tiny)
    return OracleVerdict(analytic_b, oracle_b, gap, witness[0], witness[1], iterations)


def oracle_required_power(
    bandwidth_hz: float,
    mobility: float,
    ineq_l: float,
    snr_db: float,
    nf_db: float,
    temperature_k: float = 296.0,
    cfg: OracleConfig = OracleConfig(),
    *,
    frequency_hz: float = 300e9,
    d_min_m: float = 1.0,
) -> PowerVerdict:
    """Smallest grid-feasible transmit power for ``bandwidth_hz`` with ``D1 = L D2``.

    The result does not depend on the carrier or the absolute distances, so
    any ``frequency_hz`` and ``d_min_m`` can be used to build the grid.
    """
    if not (mobility >= 1 and ineq_l >= 1):
        raise InvalidInputError(f"mobility and ineq_l must be >= 1, got {mobility!r}, {ineq_l!r}")
    if not bandwidth_hz > 0:
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    geom = LinkGeometry.from_mobility(frequency_hz, d_min_m, mobility)
    d1 = np.linspace(0.0, geom.max_aperture_sum_m, cfg.d_grid_points)
    d2 = d1 / ineq_l
    near_ok = condition1_holds(geom, d1, d2)
    d1, d2 = d1[near_ok], d2[near_ok]

    # infeasible below the threshold, so bisect on -P to reuse _bisect
    def predicate(neg_ptx_dbm):
        radio = RadioParams(-neg_ptx_dbm, snr_db, nf_db, temperature_k)
        witness = _first_witness(radio, geom, d1, d2, bandwidth_hz)
        return witness is not None, witness

    lo, _, witness, iterations = _bisect(
        predicate,
        -POWER_BRACKET_DBM[1],
        -POWER_BRACKET_DBM[0],
        _EXPAND_DB,
        10.0 * math.log10(1.0 + cfg.b_rel_tolerance),
        cfg.max_iterations,
    )
    oracle_p = -lo
    analytic_p = required_tx_power(bandwidth_hz, mobility, ineq_l, snr_db, nf_db, temperature_k)
    return PowerVerdict(analytic_p, oracle_p, oracle_p - analytic_p, witness[0], witness[1], iterations)
