"""Closed-form far-field limits.

Combining the far-field condition ``D1 + D2 <= sqrt(wavelength d_min) / 2``
with the SNR condition ``D1 D2 >= wavelength d_max sqrt(Z) 10^(S_L/20)``
(``Z = NF k T B / P_Tx``) and eliminating ``D2`` leaves a monic quadratic
inequality ``D1^2 + p D1 + q <= 0``. A design exists iff its discriminant
``(p/2)^2 - q`` is non-negative, which bounds the bandwidth. The remaining
functions specialise that bound to stationary links, to a fixed receiver
size, and to a fixed Tx/Rx size ratio.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInputError, NoFarFieldDesignError
from .linkbudget import LinkGeometry, RadioParams
from .units import BOLTZMANN_K, db_to_linear

# 30 dB (W -> mW) plus 10 log10(256); printed rounded as 54.08 in the literature.
POWER_CONSTANT_DB = 30.0 + 10.0 * math.log10(256.0)

# Discriminants within this fraction of (p/2)^2 are treated as a double root.
DISCRIMINANT_RTOL = 1e-12


class Regime(str, enum.Enum):
    STATIONARY = "stationary"
    MOBILE_RATIO = "mobile_ratio"
    MOBILE_FIXED_RX = "mobile_fixed_rx"
    GENERAL = "general"


@dataclass(frozen=True)
class FeasibilityReport:
    """Admissible Tx sizes for one bandwidth.

    ``root_low_x1`` / ``root_high_x2`` bound the admissible ``D1`` and are
    ``None`` when the discriminant is negative.
    """

    p: float
    q: float
    discriminant: float
    root_low_x1: Optional[float]
    root_high_x2: Optional[float]

    @property
    def feasible(self) -> bool:
        return self.discriminant >= 0

    def design(self) -> tuple[float, float]:
        """Smallest admissible Tx side and the Rx side that exhausts the far-field budget.

        Both conditions hold with equality for this pair.
        """
        if not self.feasible:
            raise NoFarFieldDesignError("bandwidth exceeds the far-field limit; no design exists")
        return self.root_low_x1, -self.p - self.root_low_x1


@dataclass(frozen=True)
class BandwidthLimit:
    max_bandwidth_hz: float
    regime: Regime
    optimal_d1_m: Optional[float] = None
    optimal_d2_m: Optional[float] = None


def _radio_linear_factor(radio: RadioParams) -> float:
    # 10^((P_Tx,dBm - S_L,dB - N_F,dB - 30) / 10), i.e. P_Tx / (S_L N_F) in W
    return float(
        db_to_linear(radio.ptx_dbm - radio.snr_threshold_db - radio.noise_figure_db - 30.0)
    )


def _check_ratio(name, value):
    if not (np.isfinite(value) and value >= 1):
        raise InvalidInputError(f"{name} must be >= 1, got {value!r}")


def optimal_symmetric_size(wavelength_m: float, d_min_m: float) -> float:
    """Side length ``sqrt(wavelength d_min) / 4`` shared by both arrays at the optimum."""
    if not (wavelength_m > 0 and d_min_m > 0):
        raise InvalidInputError(
            f"wavelength and d_min must be > 0, got {wavelength_m!r}, {d_min_m!r}"
        )
    return math.sqrt(wavelength_m * d_min_m) / 4.0


def ratio_split_sizes(wavelength_m: float, d_min_m: float, ineq_l: float) -> tuple[float, float]:
    """Array sides ``(D1, D2)`` with ``D1 = L D2`` that exactly fill the far-field budget."""
    _check_ratio("ineq_l", ineq_l)
    total = 2.0 * optimal_symmetric_size(wavelength_m, d_min_m)
    d2 = total / (ineq_l + 1.0)
    return total - d2, d2


def solve_d1_interval(radio: RadioParams, geom: LinkGeometry, bandwidth_hz: float) -> FeasibilityReport:
    """Interval of Tx sizes ``D1`` that satisfy both conditions at ``bandwidth_hz``.

    The receiver takes the remaining far-field budget,
    ``D2 = sqrt(wavelength d_min) / 2 - D1``.
    """
    if not (np.isfinite(bandwidth_hz) and bandwidth_hz > 0):
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    lam = geom.wavelength_m
    p = -math.sqrt(lam * geom.d_min_m) / 2.0
    z = radio.noise_factor * BOLTZMANN_K * radio.temperature_k * bandwidth_hz / radio.ptx_w
    q = lam * geom.d_max_m * math.sqrt(z) * float(db_to_linear(radio.snr_threshold_db / 2.0))
    half_p_sq = (p / 2.0) ** 2
    disc = half_p_sq - q
    if abs(disc) <= DISCRIMINANT_RTOL * half_p_sq:
        disc = 0.0
    if disc < 0:
        return FeasibilityReport(p, q, disc, None, None)
    x2 = -p / 2.0 + math.sqrt(disc)
    # smaller root from the product q = x1 x2 avoids cancellation when q << (p/2)^2
    x1 = min(q / x2, x2)
    return FeasibilityReport(p, q, disc, x1, x2)


def max_bandwidth_general(radio: RadioParams, geom: LinkGeometry) -> BandwidthLimit:
    """Largest bandwidth with a far-field, SNR-compliant design over ``[d_min, d_max]``.

    ``B <= P_Tx d_min^2 / (256 d_max^2 S_L N_F k T)``, reached with
    ``D1 = D2 = sqrt(wavelength d_min) / 4``. The carrier frequency drops out.
    """
    ratio = geom.d_min_m / geom.d_max_m
    limit = (
        radio.ptx_w
        / (256.0 * radio.snr_threshold * radio.noise_factor * BOLTZMANN_K * radio.temperature_k)
        * ratio
        * ratio
    )
    side = optimal_symmetric_size(geom.wavelength_m, geom.d_min_m)
    return BandwidthLimit(limit, Regime.GENERAL, side, side)


def max_bandwidth_stationary(radio: RadioParams) -> BandwidthLimit:
    """Far-field bandwidth limit of a fixed-distance link with equal arrays."""
    limit = _radio_linear_factor(radio) / (256.0 * BOLTZMANN_K * radio.temperature_k)
    return BandwidthLimit(limit, Regime.STATIONARY)


def max_bandwidth_mobile_fixed_rx(
    radio: RadioParams, geom: LinkGeometry, d2_max_m: float
) -> BandwidthLimit:
    """Limit when the receiver array side is pinned to ``d2_max_m``.

    The Tx takes the rest of the far-field budget,
    ``D1 = sqrt(wavelength d_min) / 2 - d2_max_m``.

    Raises:
        NoFarFieldDesignError: ``d2_max_m`` is not inside
            ``(0, sqrt(wavelength d_min) / 2)``.
    """
    lam = geom.wavelength_m
    root = math.sqrt(lam * geom.d_min_m)
    if not (0 < d2_max_m < root / 2.0):
        raise NoFarFieldDesignError(
            f"d2_max_m={d2_max_m!r} leaves no far-field design; it must lie in (0, {root / 2.0!r})"
        )
    aperture = d2_max_m * (root - 2.0 * d2_max_m)
    limit = (
        aperture**2
        / (4.0 * BOLTZMANN_K * radio.temperature_k * lam**2 * geom.d_max_m**2)
        * _radio_linear_factor(radio)
    )
    return BandwidthLimit(limit, Regime.MOBILE_FIXED_RX, root / 2.0 - d2_max_m, d2_max_m)


def mobility_penalty(mobility: float, ineq_l: float) -> float:
    """Factor ``M^2 (L+1)^4 / (16 L^2)`` by which a mobile link falls below the stationary limit."""
    _check_ratio("mobility", mobility)
    _check_ratio("ineq_l", ineq_l)
    return mobility**2 * (ineq_l + 1.0) ** 4 / (16.0 * ineq_l**2)


def max_bandwidth_mobile(radio: RadioParams, mobility: float, ineq_l: float) -> BandwidthLimit:
    """Limit for a mobile link with ``M = d_max/d_min`` and Tx/Rx size ratio ``L``."""
    penalty = mobility_penalty(mobility, ineq_l)
    stationary = max_bandwidth_stationary(radio).max_bandwidth_hz
    regime = Regime.STATIONARY if penalty == 1.0 else Regime.MOBILE_RATIO
    return BandwidthLimit(stationary / penalty, regime)


def required_tx_power(
    bandwidth_hz: float,
    mobility: float,
    ineq_l: float,
    snr_db: float,
    nf_db: float,
    temperature_k: float = 296.0,
) -> float:
    """Smallest transmit power (dBm) whose mobile far-field limit reaches ``bandwidth_hz``."""
    if not (np.isfinite(bandwidth_hz) and bandwidth_hz > 0):
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    if not temperature_k > 0:
        raise InvalidInputError(f"temperature must be > 0, got {temperature_k!r}")
    _check_ratio("mobility", mobility)
    _check_ratio("ineq_l", ineq_l)
    return (
        POWER_CONSTANT_DB
        + snr_db
        + nf_db
        + 10.0 * math.log10(BOLTZMANN_K * temperature_k)
        + 10.0 * math.log10(bandwidth_hz)
        + 20.0 * math.log10(mobility)
        + 20.0 * math.log10((ineq_l + 1.0) ** 2 / (4.0 * ineq_l))
    )


def max_capacity(bandwidth_hz: float, snr_db: float) -> float:
    """Shannon capacity ``B log2(1 + S)`` in bit/s at the given SNR."""
    if bandwidth_hz < 0:
        raise InvalidInputError(f"bandwidth must be >= 0, got {bandwidth_hz!r}")
    return bandwidth_hz * math.log2(1.0 + float(db_to_linear(snr_db)))
