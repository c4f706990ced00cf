"""Energy-per-bit optimisation by trading bandwidth and delay over wireless links."""

from .deployment import Deployment, DeploymentConfig, distances, generate_hex_grid, place_users
from .model import (
    EnergyBreakdown,
    EnergyRangeError,
    ResourcePoint,
    SystemParams,
    awgn_rate,
    channel_gain,
    total_energy_per_bit,
    transmit_energy_per_bit,
)
from .optimizer import (
    OptimalPoint,
    SolverConfig,
    SolverError,
    UnboundedOptimumError,
    grid_min_oracle,
    optimal_bandwidth,
    optimal_delay,
    stationarity_residual,
)
from .strategy import (
    Allocation,
    AvailabilityCaps,
    StepStrategy,
    adaptive_bandwidth,
    adaptive_delay,
    assign_step,
    mean_energy,
    step_levels,
)

__version__ = "0.1.0"
