"""Line-of-sight Friis link budget with square-array gains.

These primitives are shared by the closed-form analysis and by the
brute-force oracle. They accept scalars or numpy arrays for the array sides,
bandwidth and distance so the oracle can evaluate whole grids at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .geometry import fraunhofer_two_arrays
from .units import BOLTZMANN_K, db_to_linear, dbm_to_watts, wavelength

DEFAULT_TEMPERATURE_K = 296.0

# Slack on the inclusive condition boundaries. Designs built to sit exactly on
# a boundary land a few ulps either side of it after floating-point rounding.
FRAUNHOFER_RTOL = 1e-12
SNR_ATOL_DB = 1e-10


@dataclass(frozen=True)
class RadioParams:
    """Transmitter/receiver parameters of the link.

    Attributes:
        ptx_dbm: Transmit power, spread flat over the signal bandwidth (dBm).
        snr_threshold_db: Minimum SNR required at the cell edge (dB).
        noise_figure_db: Receiver noise figure (dB).
        temperature_k: System temperature (K).
    """

    ptx_dbm: float
    snr_threshold_db: float
    noise_figure_db: float
    temperature_k: float = DEFAULT_TEMPERATURE_K

    def __post_init__(self):
        for name in ("ptx_dbm", "snr_threshold_db", "noise_figure_db", "temperature_k"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise InvalidInputError(f"{name} must be finite, got {value!r}")
        if self.temperature_k <= 0:
            raise InvalidInputError(f"temperature_k must be > 0, got {self.temperature_k!r}")

    @property
    def ptx_w(self) -> float:
        return float(dbm_to_watts(self.ptx_dbm))

    @property
    def noise_factor(self) -> float:
        return float(db_to_linear(self.noise_figure_db))

    @property
    def snr_threshold(self) -> float:
        return float(db_to_linear(self.snr_threshold_db))


@dataclass(frozen=True)
class LinkGeometry:
    """Carrier frequency and the interval of Tx-Rx separations to be served."""

    frequency_hz: float
    d_min_m: float
    d_max_m: float

    def __post_init__(self):
        if not (np.isfinite(self.frequency_hz) and self.frequency_hz > 0):
            raise InvalidInputError(f"frequency_hz must be > 0, got {self.frequency_hz!r}")
        if not (np.isfinite(self.d_min_m) and self.d_min_m > 0):
            raise InvalidInputError(f"d_min_m must be > 0, got {self.d_min_m!r}")
        if not (np.isfinite(self.d_max_m) and self.d_max_m >= self.d_min_m):
            raise InvalidInputError(
                f"d_max_m must be finite and >= d_min_m ({self.d_min_m!r}), got {self.d_max_m!r}"
            )

    @classmethod
    def stationary(cls, frequency_hz: float, distance_m: float) -> "LinkGeometry":
        return cls(frequency_hz, distance_m, distance_m)

    @classmethod
    def from_mobility(cls, frequency_hz: float, d_min_m: float, mobility: float) -> "LinkGeometry":
        return cls(frequency_hz, d_min_m, d_min_m * mobility)

    @property
    def wavelength_m(self) -> float:
        return float(wavelength(self.frequency_hz))

    @property
    def mobility(self) -> float:
        """Mobility coefficient ``M = d_max / d_min``."""
        return self.d_max_m / self.d_min_m

    @property
    def max_aperture_sum_m(self) -> float:
        """Largest ``D1 + D2`` that keeps ``d_min`` in the far field."""
        return float(np.sqrt(self.wavelength_m * self.d_min_m) / 2.0)


def array_gain(side_m, wavelength_m):
    """Linear aperture gain ``4 pi D^2 / wavelength^2`` of a square array."""
    if not np.all(np.asarray(wavelength_m) > 0):
        raise InvalidInputError(f"wavelength must be > 0, got {wavelength_m!r}")
    if not np.all(np.asarray(side_m) >= 0):
        raise InvalidInputError(f"side must be >= 0, got {side_m!r}")
    return 4.0 * np.pi * np.square(side_m) / np.square(wavelength_m)


def noise_power(noise_factor, temperature_k, bandwidth_hz):
    """Receiver noise power ``B * NF * k * T`` in watts."""
    if not np.all(np.asarray(bandwidth_hz) > 0):
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    if not np.all(np.asarray(temperature_k) > 0):
        raise InvalidInputError(f"temperature must be > 0, got {temperature_k!r}")
    if not np.all(np.asarray(noise_factor) >= 1):
        raise InvalidInputError(f"noise factor must be >= 1, got {noise_factor!r}")
    return np.multiply(bandwidth_hz, noise_factor) * BOLTZMANN_K * temperature_k


def snr_at_distance(radio: RadioParams, wavelength_m, d1_m, d2_m, bandwidth_hz, distance_m):
    """Free-space SNR in dB between two square arrays at a given separation.

    ``SNR = P_Tx G1 G2 (wavelength / (4 pi d))^2 / N0``. A zero-size array
    has zero gain and yields ``-inf`` dB.
    """
    if not np.all(np.asarray(distance_m) > 0):
        raise InvalidInputError(f"distance must be > 0, got {distance_m!r}")
    g1 = array_gain(d1_m, wavelength_m)
    g2 = array_gain(d2_m, wavelength_m)
    n0 = noise_power(radio.noise_factor, radio.temperature_k, bandwidth_hz)
    spreading = np.square(wavelength_m / (4.0 * np.pi * np.asarray(distance_m, dtype=float)))
    snr = radio.ptx_w * g1 * g2 * spreading / n0
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(snr)


def condition1_holds(geom: LinkGeometry, d1_m, d2_m):
    """Far-field condition: ``d_min`` is at or beyond the two-array Fraunhofer distance."""
    d_f = fraunhofer_two_arrays(d1_m, d2_m, geom.wavelength_m)
    return geom.d_min_m >= d_f * (1.0 - FRAUNHOFER_RTOL)


def condition2_holds(radio: RadioParams, geom: LinkGeometry, d1_m, d2_m, bandwidth_hz):
    """Reliability condition: SNR at ``d_max`` meets the threshold."""
    snr = snr_at_distance(radio, geom.wavelength_m, d1_m, d2_m, bandwidth_hz, geom.d_max_m)
    return snr >= radio.snr_threshold_db - SNR_ATOL_DB


def required_aperture_product(radio: RadioParams, geom: LinkGeometry, bandwidth_hz):
    """Smallest ``D1 * D2`` (m^2) meeting the SNR threshold at ``d_max``.

    ``wavelength * d_max * sqrt(NF k T B / P_Tx) * 10^(S_L / 20)``.
    """
    if not np.all(np.asarray(bandwidth_hz) > 0):
        raise InvalidInputError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    z = radio.noise_factor * BOLTZMANN_K * radio.temperature_k * np.asarray(bandwidth_hz) / radio.ptx_w
    return geom.wavelength_m * geom.d_max_m * np.sqrt(z) * db_to_linear(radio.snr_threshold_db / 2.0)


def condition2_product_holds(radio: RadioParams, geom: LinkGeometry, d1_m, d2_m, bandwidth_hz):
    """Condition 2 in closed product form, ``D1 D2 >= required_aperture_product``.

    Uses the same boundary slack as :func:`condition2_holds` mapped to the
    amplitude domain so both forms give the same verdict.
    """
    slack = db_to_linear(-SNR_ATOL_DB / 2.0)
    return np.multiply(d1_m, d2_m) >= required_aperture_product(radio, geom, bandwidth_hz) * slack
