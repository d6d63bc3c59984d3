"""Square-array geometry and the near-field / far-field boundary.

Arrays are square, planar, broadside to each other and use half-wavelength
element spacing, so a side of length ``D`` holds ``N = 2 D / wavelength``
elements. Element counts are kept continuous; :meth:`SquareArray.realizable_elements`
floors them when an integer array is needed for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


def _check_wavelength(wavelength_m):
    if not np.all(np.asarray(wavelength_m) > 0):
        raise InvalidInputError(f"wavelength must be > 0, got {wavelength_m!r}")


def _check_non_negative(name, value):
    if not np.all(np.asarray(value) >= 0):
        raise InvalidInputError(f"{name} must be >= 0, got {value!r}")


def fraunhofer_classic(side_m, wavelength_m):
    """Classic single-aperture Fraunhofer distance ``2 D^2 / wavelength``.

    Valid for one aperture of largest dimension ``side_m`` facing a point
    receiver (or the reciprocal setup).
    """
    _check_wavelength(wavelength_m)
    _check_non_negative("side_m", side_m)
    return 2.0 * np.square(side_m) / wavelength_m


def fraunhofer_two_arrays(d1_m, d2_m, wavelength_m):
    """Far-field boundary for two facing square arrays of sides ``d1_m`` and ``d2_m``.

    The classic ``2 D^2 / wavelength`` criterion applied to the combined
    half-diagonals of both apertures, i.e. ``4 (D1 + D2)^2 / wavelength``. The
    ``wavelength^2 / 256`` correction term is dropped.

    Args:
        d1_m: Tx array side length in metres.
        d2_m: Rx array side length in metres.
        wavelength_m: Carrier wavelength in metres.

    Returns:
        Distance in metres beyond which both arrays see each other in the
        far field.
    """
    _check_wavelength(wavelength_m)
    _check_non_negative("d1_m", d1_m)
    _check_non_negative("d2_m", d2_m)
    return 4.0 * np.square(np.add(d1_m, d2_m)) / wavelength_m


def fraunhofer_from_elements(n1, n2, wavelength_m):
    """Same boundary as :func:`fraunhofer_two_arrays` written with elements per side."""
    _check_wavelength(wavelength_m)
    _check_non_negative("n1", n1)
    _check_non_negative("n2", n2)
    return wavelength_m * np.square(np.add(n1, n2))


def elements_from_size(side_m, wavelength_m):
    """Continuous number of half-wavelength-spaced elements along one side."""
    _check_wavelength(wavelength_m)
    _check_non_negative("side_m", side_m)
    return 2.0 * np.asarray(side_m, dtype=float)[()] / wavelength_m


def size_from_elements(n, wavelength_m):
    "Side length in metres of a half-wavelength-spaced array with ``n`` elements per side."
    _check_wavelength(wavelength_m)
    _check_non_negative("n", n)
    return 0.5 * wavelength_m * np.asarray(n, dtype=float)[()]


@dataclass(frozen=True)
class SquareArray:
    """A ``D x D`` planar array with half-wavelength spacing."""

    side_m: float
    wavelength_m: float

    def __post_init__(self):
        _check_wavelength(self.wavelength_m)
        _check_non_negative("side_m", self.side_m)

    @classmethod
    def from_elements(cls, n: float, wavelength_m: float) -> "SquareArray":
        return cls(float(size_from_elements(n, wavelength_m)), wavelength_m)

    @property
    def elements(self) -> float:
        """Elements per side (continuous)."""
        return float(elements_from_size(self.side_m, self.wavelength_m))

    def realizable_elements(self) -> int:
        """Largest integer element count that fits on the side."""
        # tolerate representation error on exact multiples of wavelength/2
        return int(math.floor(self.elements + 1e-9))


@dataclass(frozen=True)
class ArrayPair:
    """Tx and Rx arrays of one link."""

    tx: SquareArray
    rx: SquareArray

    def __post_init__(self):
        if self.tx.wavelength_m != self.rx.wavelength_m:
            raise InvalidInputError("tx and rx arrays must share a wavelength")

    @classmethod
    def from_sides(cls, d1_m: float, d2_m: float, wavelength_m: float) -> "ArrayPair":
        return cls(SquareArray(d1_m, wavelength_m), SquareArray(d2_m, wavelength_m))

    @property
    def inequality_l(self) -> float:
        """Size ratio ``D1 / D2`` (``inf`` for a point receiver)."""
        if self.rx.side_m == 0:
            return math.inf
        return self.tx.side_m / self.rx.side_m

    @property
    def fraunhofer_distance_m(self) -> float:
        return float(fraunhofer_two_arrays(self.tx.side_m, self.rx.side_m, self.tx.wavelength_m))
