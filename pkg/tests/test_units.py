import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thz_farfield.errors import InvalidInputError
from thz_farfield.units import (
    BOLTZMANN_K,
    SPEED_OF_LIGHT,
    db_to_linear,
    dbm_to_watts,
    linear_to_db,
    watts_to_dbm,
    wavelength,
)


def test_constants_are_exact_si_values():
    assert BOLTZMANN_K == 1.380649e-23
    assert SPEED_OF_LIGHT == 299792458


@pytest.mark.parametrize("x_db, expected", [(0, 1.0), (20, 100.0), (30, 1000.0)])
def test_db_to_linear(x_db, expected):
    assert db_to_linear(x_db) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("p_dbm, expected", [(30, 1.0), (0, 1e-3)])
def test_dbm_to_watts(p_dbm, expected):
    assert dbm_to_watts(p_dbm) == pytest.approx(expected, rel=1e-15)


def test_17_dbm_is_about_50_mw():
    assert dbm_to_watts(17) == pytest.approx(0.0501187, rel=1e-6)


@pytest.mark.parametrize(
    "f, expected",
    [(300e9, 9.99308193e-4), (1e12, 2.99792458e-4), (SPEED_OF_LIGHT, 1.0)],
)
def test_wavelength(f, expected):
    assert wavelength(f) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_db_rejected(bad):
    with pytest.raises(InvalidInputError):
        db_to_linear(bad)
    with pytest.raises(InvalidInputError):
        dbm_to_watts(bad)


@pytest.mark.parametrize("f", [0.0, -1e9])
def test_non_positive_frequency_rejected(f):
    with pytest.raises(InvalidInputError):
        wavelength(f)


def test_linear_to_db_rejects_non_positive():
    with pytest.raises(InvalidInputError):
        linear_to_db(0.0)


@given(st.floats(min_value=1e-300, max_value=1e300))
def test_linear_db_round_trip(x):
    assert db_to_linear(linear_to_db(x)) == pytest.approx(x, rel=1e-12)


@given(st.floats(min_value=-200, max_value=200))
def test_dbm_is_db_over_1000(p):
    assert dbm_to_watts(p) == db_to_linear(p) / 1000.0
    assert watts_to_dbm(dbm_to_watts(p)) == pytest.approx(p, abs=1e-9)


@given(st.floats(min_value=1e6, max_value=1e15), st.floats(min_value=1.0001, max_value=10.0))
def test_wavelength_strictly_decreasing(f, factor):
    assert wavelength(f * factor) < wavelength(f)


def test_vectorised():
    np.testing.assert_allclose(db_to_linear(np.array([0.0, 10.0])), [1.0, 10.0])
