import numpy as np
import pytest

from thz_farfield.errors import InvalidInputError, OracleConvergenceError
from thz_farfield.feasibility import max_bandwidth_general, required_tx_power
from thz_farfield.linkbudget import LinkGeometry, RadioParams, condition1_holds, condition2_holds
from thz_farfield.oracle import (
    OracleConfig,
    oracle_feasible,
    oracle_max_bandwidth,
    oracle_required_power,
)


def _draws(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        radio = RadioParams(rng.uniform(-20, 40), rng.uniform(0, 40), rng.uniform(0, 30))
        geom = LinkGeometry.from_mobility(
            299792458 / rng.uniform(0.3e-3, 3e-3), rng.uniform(0.5, 20), rng.uniform(1, 100)
        )
        yield radio, geom


@pytest.mark.parametrize("radio, geom", list(_draws(10, 11)))
def test_oracle_never_beats_analytic(radio, geom):
    v = oracle_max_bandwidth(radio, geom)
    assert v.oracle_limit_hz <= v.analytic_limit_hz * (1 + 1e-9)
    assert v.relative_gap <= 5e-3


def test_finer_nested_grid_never_worse(fig7_radio):
    geom = LinkGeometry.from_mobility(3e11, 3.0, 7.0)
    tight = OracleConfig(b_rel_tolerance=1e-6)
    prev = 0.0
    for n in (65, 129, 257, 513):
        b = oracle_max_bandwidth(fig7_radio, geom, OracleConfig(n, tight.b_rel_tolerance)).oracle_limit_hz
        assert b >= prev * (1 - 1e-6)
        prev = b


def test_witness_passes_both_conditions(fig7_radio):
    geom = LinkGeometry.from_mobility(3e11, 2.0, 10.0)
    v = oracle_max_bandwidth(fig7_radio, geom)
    assert condition1_holds(geom, v.witness_d1_m, v.witness_d2_m)
    assert condition2_holds(fig7_radio, geom, v.witness_d1_m, v.witness_d2_m, v.oracle_limit_hz)


@pytest.mark.parametrize("factor, expected", [(0.5, True), (1.05, False)])
def test_oracle_feasible_around_limit(fig7_radio, backhaul, factor, expected):
    limit = max_bandwidth_general(fig7_radio, backhaul).max_bandwidth_hz
    ok, witness = oracle_feasible(fig7_radio, backhaul, limit * factor)
    assert ok is expected
    assert (witness is not None) is expected


def test_bracket_expands_for_extreme_limits():
    radio = RadioParams(40, 0, 0, 50)
    geom = LinkGeometry.stationary(3e11, 1.0)
    v = oracle_max_bandwidth(radio, geom)
    assert v.analytic_limit_hz > 1e16
    assert v.relative_gap <= 5e-3
    low = RadioParams(-20, 40, 30)
    v = oracle_max_bandwidth(low, LinkGeometry.from_mobility(3e11, 1.0, 100))
    assert v.analytic_limit_hz < 1e3
    assert v.relative_gap <= 5e-3


def test_iteration_budget_enforced(fig7_radio, backhaul):
    with pytest.raises(OracleConvergenceError):
        oracle_max_bandwidth(fig7_radio, backhaul, OracleConfig(max_iterations=3))


@pytest.mark.parametrize("kwargs", [{"d_grid_points": 10}, {"b_rel_tolerance": 0.0}, {"b_rel_tolerance": 0.1},
                                    {"max_iterations": 0}])
def test_config_validation(kwargs):
    with pytest.raises(InvalidInputError):
        OracleConfig(**kwargs)


def test_power_oracle_anchor():
    v = oracle_required_power(1e10, 50, 30, 20, 10, cfg=OracleConfig(d_grid_points=2048))
    assert v.analytic_ptx_dbm == pytest.approx(32.24639, abs=1e-4)
    assert 0 <= v.gap_db <= 0.05


def test_power_oracle_independent_of_canonical_geometry():
    a = oracle_required_power(1e9, 10, 5, 15, 7)
    b = oracle_required_power(1e9, 10, 5, 15, 7, frequency_hz=1e12, d_min_m=13.0)
    assert a.oracle_ptx_dbm == pytest.approx(b.oracle_ptx_dbm, abs=0.01)


def test_power_oracle_monotone_in_bandwidth():
    powers = [oracle_required_power(b, 20, 20, 20, 10).oracle_ptx_dbm for b in (1e8, 1e9, 1e10, 1e11)]
    assert powers == sorted(powers)
    assert np.diff(powers) == pytest.approx([10, 10, 10], abs=0.05)


def test_power_oracle_matches_closed_form_stationary():
    v = oracle_required_power(1e9, 1, 1, 20, 10)
    assert v.oracle_ptx_dbm == pytest.approx(required_tx_power(1e9, 1, 1, 20, 10), abs=0.05)
