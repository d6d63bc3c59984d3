"""Physical constants and dB/linear conversions.

Everything inside the package works in SI units (W, Hz, m, K). Decibel
quantities only appear at the edges: function arguments named ``*_db`` /
``*_dbm`` and the conversions below.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

BOLTZMANN_K = 1.380649e-23
"Boltzmann constant in J/K (exact, SI 2019)."

SPEED_OF_LIGHT = 299792458.0
"Speed of light in vacuum in m/s (exact)."


def _require_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")


def _require_positive(name, value):
    if not np.all(np.asarray(value) > 0):
        raise InvalidInputError(f"{name} must be > 0, got {value!r}")


def db_to_linear(x_db):
    """Convert a power ratio from dB to linear scale."""
    _require_finite("x_db", x_db)
    return np.power(10.0, np.divide(x_db, 10.0))


def linear_to_db(x):
    """Convert a positive linear power ratio to dB."""
    _require_finite("x", x)
    _require_positive("x", x)
    return 10.0 * np.log10(x)


def dbm_to_watts(p_dbm):
    """Convert power in dBm to watts."""
    return db_to_linear(p_dbm) / 1000.0


def watts_to_dbm(p_w):
    """Convert power in watts to dBm."""
    return linear_to_db(np.multiply(p_w, 1000.0))


def wavelength(frequency_hz):
    """Free-space wavelength in metres for a carrier frequency in Hz."""
    _require_finite("frequency_hz", frequency_hz)
    _require_positive("frequency_hz", frequency_hz)
    return SPEED_OF_LIGHT / np.asarray(frequency_hz, dtype=float)[()]


def frequency(wavelength_m):
    "Inverse of :func:`wavelength`."
    _require_finite("wavelength_m", wavelength_m)
    _require_positive("wavelength_m", wavelength_m)
    return SPEED_OF_LIGHT / np.asarray(wavelength_m, dtype=float)[()]
