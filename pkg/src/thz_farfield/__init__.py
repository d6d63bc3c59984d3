"""Far-field feasibility analysis for terahertz array links."""

__version__ = "0.1.0"

from .errors import ConfigError, InvalidInputError, NoFarFieldDesignError, OracleConvergenceError
from .feasibility import (
    BandwidthLimit,
    FeasibilityReport,
    Regime,
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
    ArrayPair,
    SquareArray,
    elements_from_size,
    fraunhofer_classic,
    fraunhofer_from_elements,
    fraunhofer_two_arrays,
)
from .linkbudget import (
    LinkGeometry,
    RadioParams,
    array_gain,
    condition1_holds,
    condition2_holds,
    noise_power,
    snr_at_distance,
)
from .oracle import OracleConfig, oracle_feasible, oracle_max_bandwidth, oracle_required_power
