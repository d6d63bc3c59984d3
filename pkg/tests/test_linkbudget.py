import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from thz_farfield.errors import InvalidInputError
from thz_farfield.feasibility import max_bandwidth_stationary, optimal_symmetric_size
from thz_farfield.linkbudget import (
    LinkGeometry,
    RadioParams,
    array_gain,
    condition1_holds,
    condition2_holds,
    condition2_product_holds,
    noise_power,
    snr_at_distance,
)
from thz_farfield.units import BOLTZMANN_K

radios = st.builds(
    RadioParams,
    st.floats(min_value=-20, max_value=40),
    st.floats(min_value=0, max_value=40),
    st.floats(min_value=0, max_value=30),
    st.floats(min_value=50, max_value=500),
)
geometries = st.builds(
    LinkGeometry.from_mobility,
    st.floats(min_value=1e11, max_value=1e12),
    st.floats(min_value=0.5, max_value=20),
    st.floats(min_value=1, max_value=100),
)


def test_array_gain_single_element_is_pi():
    assert array_gain(0.5e-3, 1e-3) == pytest.approx(math.pi, rel=1e-15)


def test_array_gain_10cm_aperture():
    assert array_gain(0.05, 1e-3) == pytest.approx(31415.926535897932, rel=1e-12)
    assert 10 * math.log10(array_gain(0.05, 1e-3)) == pytest.approx(44.97, abs=0.01)


def test_array_gain_zero_and_errors():
    assert array_gain(0.0, 1e-3) == 0.0
    with pytest.raises(InvalidInputError):
        array_gain(0.1, 0.0)


@pytest.mark.parametrize("n", [1, 2, 7, 64, 256])
def test_array_gain_is_pi_n_squared(n):
    lam = 1e-3
    assert array_gain(lam * n / 2, lam) == pytest.approx(math.pi * n * n, rel=1e-13)


def test_thermal_noise_floor():
    n0 = noise_power(1.0, 290.0, 1.0)
    assert n0 == pytest.approx(4.0038821e-21, rel=1e-8)
    assert 10 * math.log10(n0 * 1e3) == pytest.approx(-173.975, abs=1e-3)


def test_noise_power_example_and_linearity():
    assert noise_power(10.0, 296.0, 1e9) == pytest.approx(4.08672104e-11, rel=1e-8)
    assert noise_power(10.0, 296.0, 2e9) == 2 * noise_power(10.0, 296.0, 1e9)


@pytest.mark.parametrize("args", [(1.0, 290.0, 0.0), (1.0, 0.0, 1.0), (0.5, 290.0, 1.0)])
def test_noise_power_domain(args):
    with pytest.raises(InvalidInputError):
        noise_power(*args)


def test_snr_matches_threshold_at_stationary_optimum(fig7_radio):
    lam, d = 1e-3, 50.0
    side = optimal_symmetric_size(lam, d)
    b = max_bandwidth_stationary(fig7_radio).max_bandwidth_hz
    snr = snr_at_distance(fig7_radio, lam, side, side, b, d)
    assert snr == pytest.approx(fig7_radio.snr_threshold_db, abs=1e-9)


def test_halving_distance_adds_6_db(fig7_radio):
    a = snr_at_distance(fig7_radio, 1e-3, 0.02, 0.01, 1e9, 40.0)
    b = snr_at_distance(fig7_radio, 1e-3, 0.02, 0.01, 1e9, 20.0)
    assert b - a == pytest.approx(20 * math.log10(2), abs=1e-12)


def test_single_elements_at_pi_wavelength_over_4pi():
    # G1 G2 = pi^2 and (lam / (4 pi d))^2 = 1/pi^2 when d = lam / 4
    radio = RadioParams(0.0, 0.0, 0.0, 290.0)
    lam, b = 1e-3, 1e6
    snr = snr_at_distance(radio, lam, lam / 2, lam / 2, b, lam / (4 * math.pi) * math.pi)
    expected = 10 * math.log10(1e-3 / (b * BOLTZMANN_K * 290.0))
    assert snr == pytest.approx(expected, abs=1e-9)


def test_snr_rejects_non_positive_distance(fig7_radio):
    with pytest.raises(InvalidInputError):
        snr_at_distance(fig7_radio, 1e-3, 0.01, 0.01, 1e9, 0.0)
    with pytest.raises(InvalidInputError):
        snr_at_distance(fig7_radio, 1e-3, 0.01, 0.01, -1.0, 10.0)


def test_condition1_examples():
    geom = LinkGeometry(300e9, 10.0, 100.0)
    side = math.sqrt(geom.wavelength_m * geom.d_min_m) / 4
    assert condition1_holds(geom, side, side)
    assert not condition1_holds(geom, side * 1.01, side * 1.01)
    assert condition1_holds(geom, 0.0, 0.0)


def test_condition2_tight_and_unbounded_bandwidth(fig7_radio):
    geom = LinkGeometry.stationary(300e9, 100.0)
    side = optimal_symmetric_size(geom.wavelength_m, geom.d_min_m)
    b = max_bandwidth_stationary(fig7_radio).max_bandwidth_hz
    assert condition2_holds(fig7_radio, geom, side, side, b)
    assert condition2_product_holds(fig7_radio, geom, side, side, b)
    assert not condition2_holds(fig7_radio, geom, side, side, b * 1.0001)
    assert not condition2_holds(fig7_radio, geom, 0.05, 0.05, 1e30)


def test_condition2_forms_agree_on_1000_draws():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(1000):
        radio = RadioParams(rng.uniform(-20, 40), rng.uniform(0, 40), rng.uniform(0, 30), rng.uniform(50, 500))
        geom = LinkGeometry.from_mobility(rng.uniform(1e11, 1e12), rng.uniform(0.5, 20), rng.uniform(1, 100))
        s = geom.max_aperture_sum_m
        d1, d2 = rng.uniform(0, s), rng.uniform(0, s)
        b = 10 ** rng.uniform(6, 14)
        snr = snr_at_distance(radio, geom.wavelength_m, d1, d2, b, geom.d_max_m)
        if abs(snr - radio.snr_threshold_db) <= 1e-9:
            continue
        assert condition2_holds(radio, geom, d1, d2, b) == condition2_product_holds(radio, geom, d1, d2, b)
        checked += 1
    assert checked > 990


@given(radios, geometries, st.floats(min_value=0.01, max_value=1), st.floats(min_value=0.01, max_value=1),
       st.floats(min_value=1e6, max_value=1e13))
def test_condition2_forms_agree(radio, geom, f1, f2, b):
    s = geom.max_aperture_sum_m
    d1, d2 = f1 * s, f2 * s
    snr = snr_at_distance(radio, geom.wavelength_m, d1, d2, b, geom.d_max_m)
    assume(abs(snr - radio.snr_threshold_db) > 1e-9)
    assert condition2_holds(radio, geom, d1, d2, b) == condition2_product_holds(radio, geom, d1, d2, b)


@given(radios, geometries, st.floats(min_value=0.01, max_value=1), st.floats(min_value=1e6, max_value=1e13))
def test_worst_case_snr_is_at_max_distance(radio, geom, f, b):
    s = geom.max_aperture_sum_m
    d = np.linspace(geom.d_min_m, geom.d_max_m, 257)
    snr = snr_at_distance(radio, geom.wavelength_m, f * s, f * s / 2, b, d)
    assert np.all(np.diff(snr) <= 0)
    assert snr.min() == snr[-1]


def test_radio_and_geometry_validation():
    with pytest.raises(InvalidInputError):
        RadioParams(0.0, 20.0, 10.0, 0.0)
    with pytest.raises(InvalidInputError):
        RadioParams(math.nan, 20.0, 10.0)
    with pytest.raises(InvalidInputError):
        LinkGeometry(300e9, 0.0, 10.0)
    with pytest.raises(InvalidInputError):
        LinkGeometry(300e9, 10.0, 5.0)
    with pytest.raises(InvalidInputError):
        LinkGeometry(0.0, 1.0, 5.0)


def test_geometry_derived_values():
    geom = LinkGeometry(300e9, 0.5, 25.0)
    assert geom.mobility == 50.0
    assert geom.max_aperture_sum_m == pytest.approx(math.sqrt(geom.wavelength_m * 0.5) / 2)
    assert RadioParams(17.0, 30.0, 10.0).temperature_k == 296.0
