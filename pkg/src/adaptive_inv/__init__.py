"""Adaptive inventory control: seedable simulation, Bayesian learning, and
sample-average (s, S) re-optimization, with a paired-comparison harness."""

__version__ = "0.1.0"

from .controllers import AdaptiveController, StaticController
from .core import (
    CostParams,
    PeriodRecord,
    PipelineOrder,
    SystemState,
    advance_period,
    initial_state,
    inventory_position,
    run_simulation,
)
from .errors import ConfigurationError, DegenerateSampleError, InvalidParameterError
from .harness import (
    ComparisonResult,
    ExperimentSetup,
    paired_t_test,
    robustness_sweep,
    run_experiment,
    sensitivity_sweep,
)
from .learning import DEFAULT_PRIOR, PosteriorState
from .metrics import RunMetrics, metrics_from_trace
from .optimizer import OptimizerConfig, PolicyEvaluation, default_grid, evaluate_policy, optimize
from .policies import BASELINE_PARAMS, PolicyParams, decide_order
from .scenarios import (
    ScenarioSchedule,
    custom,
    demand_shock,
    shock_magnitude_variant,
    stationary,
    supply_disruption,
)
from .stochastic import (
    RngStream,
    Stream,
    sample_bernoulli,
    sample_beta,
    sample_gamma,
    sample_lead_time,
    sample_poisson,
)

__all__ = [
    "__version__",
    "AdaptiveController",
    "BASELINE_PARAMS",
    "ComparisonResult",
    "ConfigurationError",
    "CostParams",
    "DEFAULT_PRIOR",
    "DegenerateSampleError",
    "ExperimentSetup",
    "InvalidParameterError",
    "OptimizerConfig",
    "PeriodRecord",
    "PipelineOrder",
    "PolicyEvaluation",
    "PolicyParams",
    "PosteriorState",
    "RngStream",
    "RunMetrics",
    "ScenarioSchedule",
    "StaticController",
    "Stream",
    "SystemState",
    "advance_period",
    "custom",
    "decide_order",
    "default_grid",
    "demand_shock",
    "evaluate_policy",
    "initial_state",
    "inventory_position",
    "metrics_from_trace",
    "optimize",
    "paired_t_test",
    "robustness_sweep",
    "run_experiment",
    "run_simulation",
    "sample_bernoulli",
    "sample_beta",
    "sample_gamma",
    "sample_lead_time",
    "sample_poisson",
    "sensitivity_sweep",
    "shock_magnitude_variant",
    "stationary",
    "supply_disruption",
]
