"""HTTP service wrapping the simulation engine.

Request/response models mirror the run configuration and result types, so a
client can drive every experiment the CLI offers over HTTP.  The handler
functions are plain request-model -> response-model functions; the FastAPI
routes are thin wrappers, and the CLI calls the same handlers in-process
when no service URL is given.
"""

from __future__ import annotations

from dataclasses import fields as dc_fields

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .config import RunConfig, validate_run_config
from .controllers import AdaptiveController, StaticController
from .core import PeriodRecord, initial_state, run_simulation
from .errors import ConfigurationError, DegenerateSampleError, InvalidParameterError
from .harness import (
    ComparisonResult,
    SensitivityRow,
    robustness_sweep,
    run_experiment,
    sensitivity_sweep,
)
from .learning import PosteriorState
from .metrics import RunMetrics
from .optimizer import optimize
from .outputs import plot_series
from .stochastic import RngStream, Stream

__all__ = ["app", "handle_run", "handle_compare", "handle_plotdata", "handle_optimize_baseline"]

POLICY_NAMES = ("static", "adaptive")


class ConfigModel(BaseModel):
    """Wire form of RunConfig; omitted fields take the shipped defaults."""

    horizon: int = 365
    n_reps: int = 30
    seed: int = 12345
    holding_cost: float = 1.0
    stockout_cost: float = 10.0
    fixed_order_cost: float = 5.0
    baseline_s: int = 25
    baseline_S: int = 50
    lead_time_p: float = 0.8
    prior_demand_shape: float = 10.0
    prior_demand_rate: float = 1.0
    prior_disruption_alpha: float = 1.0
    prior_disruption_beta: float = 49.0
    update_period: int = 7
    optimizer_samples: int = 1000
    planning_horizon: int = 50
    optimizer_mode: str = "posterior"
    grid_s_max: int = 60
    grid_S_max: int = 125
    grid_step: int = 5
    scenario: str = "stationary"
    shock_lambda: float = 20.0
    shock_period: int = 183
    disruption_alpha: float = 0.15
    disruption_window_start: int = 122
    disruption_window_end: int = 244
    base_lambda: float = 10.0
    base_alpha: float = 0.02
    out_dir: str = "results"
    segments: list[tuple[int, int, float, float]] = Field(default_factory=list)

    def to_run_config(self) -> RunConfig:
        data = self.model_dump()
        data["segments"] = tuple(tuple(seg) for seg in data["segments"])
        config = RunConfig(**data)
        validate_run_config(config, source="<request config>")
        return config

    @classmethod
    def from_run_config(cls, config: RunConfig) -> "ConfigModel":
        data = {f.name: getattr(config, f.name) for f in dc_fields(RunConfig)}
        data["segments"] = [list(seg) for seg in data["segments"]]
        return cls(**data)


class TraceRowModel(BaseModel):
    period: int
    lambda_true: float
    alpha_true: float
    demand: int
    sales: int
    lost_units: int
    on_hand_end: int
    order_qty: int
    order_placed: bool
    sampled_lead_time: int
    disrupted: bool
    active_s: int
    active_S: int
    lambda_hat: float | None = None
    alpha_hat: float | None = None
    holding_cost: float
    stockout_cost: float
    ordering_cost: float
    total_cost: float

    @classmethod
    def from_record(cls, record: PeriodRecord) -> "TraceRowModel":
        return cls(**{name: getattr(record, name) for name in cls.model_fields})

    def to_record(self) -> PeriodRecord:
        return PeriodRecord(**self.model_dump())


class MetricsModel(BaseModel):
    total_cost: float
    cost_per_period: float
    period_service_level: float
    fill_rate: float
    avg_inventory: float
    stockout_events: float
    holding_total: float
    stockout_total: float
    ordering_total: float
    disruptions_experienced: float

    @classmethod
    def from_metrics(cls, metrics: RunMetrics) -> "MetricsModel":
        return cls(**{f.name: getattr(metrics, f.name) for f in dc_fields(RunMetrics)})


class RunRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    scenario: str | None = None
    policy: str = "static"
    seed: int | None = None
    replication_id: int = 0


class RunResponse(BaseModel):
    scenario: str
    policy: str
    seed: int
    horizon: int
    metrics: MetricsModel
    trace: list[TraceRowModel]


class CompareRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    scenarios: list[str] = Field(default_factory=lambda: ["stationary", "demand-shock", "supply-disruption"])
    seed: int | None = None
    n_reps: int | None = None
    robustness: list[float] = Field(default_factory=list)
    sensitivity: bool = False


class ComparisonModel(BaseModel):
    scenario: str
    n_reps: int
    baseline_mean: MetricsModel
    adaptive_mean: MetricsModel
    mean_cost_difference: float
    percent_change: float
    t_statistic: float
    p_value: float
    baseline_costs: list[float]
    adaptive_costs: list[float]

    @classmethod
    def from_result(cls, result: ComparisonResult) -> "ComparisonModel":
        return cls(
            scenario=result.scenario,
            n_reps=result.n_reps,
            baseline_mean=MetricsModel.from_metrics(result.baseline_mean),
            adaptive_mean=MetricsModel.from_metrics(result.adaptive_mean),
            mean_cost_difference=result.mean_cost_difference,
            percent_change=result.percent_change,
            t_statistic=result.t_statistic,
            p_value=result.p_value,
            baseline_costs=list(result.baseline_costs),
            adaptive_costs=list(result.adaptive_costs),
        )


class SensitivityRowModel(BaseModel):
    variation: str
    scenario: str
    result: ComparisonModel | None = None
    error: str | None = None

    @classmethod
    def from_row(cls, row: SensitivityRow) -> "SensitivityRowModel":
        return cls(
            variation=row.variation,
            scenario=row.scenario,
            result=ComparisonModel.from_result(row.result) if row.result else None,
            error=row.error,
        )


class CompareResponse(BaseModel):
    seed: int
    comparisons: list[ComparisonModel]
    stationary_baseline_reference: MetricsModel
    robustness: list[ComparisonModel] = Field(default_factory=list)
    sensitivity: list[SensitivityRowModel] = Field(default_factory=list)


class NamedTrace(BaseModel):
    label: str
    rows: list[TraceRowModel]


class PlotDataRequest(BaseModel):
    kind: str
    traces: list[NamedTrace]


class PlotDataResponse(BaseModel):
    kind: str
    columns: list[str]
    rows: list[list[float | int | None]]


class OptimizeBaselineRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    seed: int | None = None


class EvaluationModel(BaseModel):
    reorder_point: int
    order_up_to: int
    estimated_cost: float
    cost_std_error: float


class OptimizeBaselineResponse(BaseModel):
    reorder_point: int
    order_up_to: int
    evaluations: list[EvaluationModel]


class HealthResponse(BaseModel):
    status: str
    version: str


# -- handlers (shared by the HTTP routes and the in-process CLI) ----------


def handle_run(request: RunRequest) -> RunResponse:
    """Single replication of one policy; returns metrics plus the full trace."""
    if request.policy not in POLICY_NAMES:
        raise ConfigurationError(
            f"unknown policy {request.policy!r}; expected one of {', '.join(POLICY_NAMES)}"
        )
    config = request.config.to_run_config()
    seed = request.seed if request.seed is not None else config.seed
    schedule = config.schedule(request.scenario)
    setup = config.experiment_setup()
    if request.policy == "adaptive":
        controller = AdaptiveController(
            params=setup.baseline,
            posterior=setup.priors,
            costs=setup.costs,
            update_period=setup.update_period,
            optimizer_config=setup.optimizer_config,
        )
    else:
        controller = StaticController(params=setup.baseline)
    metrics, trace = run_simulation(
        horizon=config.horizon,
        initial=initial_state(setup.baseline.order_up_to),
        scenario=schedule,
        controller=controller,
        costs=setup.costs,
        seed=seed,
        replication_id=request.replication_id,
        lead_time_p=setup.lead_time_p,
    )
    return RunResponse(
        scenario=schedule.name,
        policy=request.policy,
        seed=seed,
        horizon=config.horizon,
        metrics=MetricsModel.from_metrics(metrics),
        trace=[TraceRowModel.from_record(r) for r in trace],
    )


def handle_compare(request: CompareRequest) -> CompareResponse:
    """Paired experiments per scenario, plus optional robustness/sensitivity sweeps."""
    if not request.scenarios:
        raise ConfigurationError("compare needs at least one scenario")
    config = request.config.to_run_config()
    seed = request.seed if request.seed is not None else config.seed
    n_reps = request.n_reps if request.n_reps is not None else config.n_reps
    setup = config.experiment_setup()

    comparisons = []
    stationary_static: MetricsModel | None = None
    for name in request.scenarios:
        schedule = config.schedule(name)
        result = run_experiment(schedule, n_reps, seed, setup=setup)
        comparisons.append(ComparisonModel.from_result(result))
        if schedule.name == "stationary":
            stationary_static = MetricsModel.from_metrics(result.baseline_mean)
    if stationary_static is None:
        reference = run_experiment(config.schedule("stationary"), n_reps, seed, setup=setup)
        stationary_static = MetricsModel.from_metrics(reference.baseline_mean)

    robustness_results = []
    if request.robustness:
        robustness_results = [
            ComparisonModel.from_result(r)
            for r in robustness_sweep(request.robustness, n_reps, seed, setup=setup)
        ]
    sensitivity_rows = []
    if request.sensitivity:
        schedules = [config.schedule(name) for name in request.scenarios]
        sensitivity_rows = [
            SensitivityRowModel.from_row(row)
            for row in sensitivity_sweep(schedules, n_reps, seed, setup=setup)
        ]
    return CompareResponse(
        seed=seed,
        comparisons=comparisons,
        stationary_baseline_reference=stationary_static,
        robustness=robustness_results,
        sensitivity=sensitivity_rows,
    )


def handle_plotdata(request: PlotDataRequest) -> PlotDataResponse:
    """Tidy data series for one of the figure kinds."""
    traces = [(t.label, [row.to_record() for row in t.rows]) for t in request.traces]
    columns, rows = plot_series(request.kind, traces)
    return PlotDataResponse(kind=request.kind, columns=list(columns), rows=rows)


# Posterior concentrated at the long-run averages (demand 10, disruption
# 0.02) with negligible spread; optimizing against it re-derives the static
# baseline the way the one-time calculation would.
_BASELINE_POSTERIOR = PosteriorState(
    demand_shape=1e6, demand_rate=1e5, disruption_alpha=2e3, disruption_beta=98e3
)


def handle_optimize_baseline(request: OptimizeBaselineRequest) -> OptimizeBaselineResponse:
    """Re-derive the static (s, S) baseline from concentrated long-run parameters."""
    config = request.config.to_run_config()
    seed = request.seed if request.seed is not None else config.seed
    rng = RngStream(seed, Stream.OPTIMIZER, 0)
    params, evaluations = optimize(
        _BASELINE_POSTERIOR,
        config.optimizer_config(),
        config.costs(),
        current=None,
        rng=rng,
    )
    return OptimizeBaselineResponse(
        reorder_point=params.reorder_point,
        order_up_to=params.order_up_to,
        evaluations=[
            EvaluationModel(
                reorder_point=e.params.reorder_point,
                order_up_to=e.params.order_up_to,
                estimated_cost=e.estimated_cost,
                cost_std_error=e.cost_std_error,
            )
            for e in evaluations
        ],
    )


# -- FastAPI app -----------------------------------------------------------

app = FastAPI(title="adaptive-inv", version=__version__)


def _route(handler, request):
    try:
        return handler(request)
    except (ConfigurationError, InvalidParameterError, DegenerateSampleError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/run", response_model=RunResponse)
def run_endpoint(request: RunRequest) -> RunResponse:
    return _route(handle_run, request)


@app.post("/compare", response_model=CompareResponse)
def compare_endpoint(request: CompareRequest) -> CompareResponse:
    return _route(handle_compare, request)


@app.post("/plotdata", response_model=PlotDataResponse)
def plotdata_endpoint(request: PlotDataRequest) -> PlotDataResponse:
    return _route(handle_plotdata, request)


@app.post("/optimize-baseline", response_model=OptimizeBaselineResponse)
def optimize_baseline_endpoint(request: OptimizeBaselineRequest) -> OptimizeBaselineResponse:
    return _route(handle_optimize_baseline, request)
