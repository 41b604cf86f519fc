"""Run configuration: defaults, flat-file parsing, and canonical serialization.

The config format is plain ``key = value`` text with ``#`` comments.  Every
key is optional and falls back to the shipped defaults.  Custom scenario
segments are expressed with repeated ``segment`` keys::

    segment = 1:100 10 0.02
    segment = 101:365 20 0.02

Loading rejects unknown keys and out-of-range values with a line-numbered
message; serializing writes keys in a fixed order so that load -> serialize
is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .core import CostParams
from .errors import ConfigurationError
from .harness import ExperimentSetup
from .learning import PosteriorState
from .optimizer import MODE_POINT, MODE_POSTERIOR, OptimizerConfig
from .policies import PolicyParams
from .scenarios import SCENARIO_NAMES, ScenarioSchedule, by_name, custom

__all__ = ["RunConfig", "load_config", "parse_config", "serialize_config", "validate_run_config"]

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class RunConfig:
    """Every configurable constant, pre-loaded with the shipped defaults."""

    horizon: int = 365
    n_reps: int = 30
    seed: int = DEFAULT_SEED
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
    optimizer_mode: str = MODE_POSTERIOR
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
    segments: tuple[tuple[int, int, float, float], ...] = ()

    # -- derived builders ------------------------------------------------

    def costs(self) -> CostParams:
        return CostParams(
            holding=self.holding_cost,
            stockout=self.stockout_cost,
            fixed_order=self.fixed_order_cost,
        )

    def baseline_params(self) -> PolicyParams:
        return PolicyParams(self.baseline_s, self.baseline_S)

    def priors(self) -> PosteriorState:
        return PosteriorState(
            demand_shape=self.prior_demand_shape,
            demand_rate=self.prior_demand_rate,
            disruption_alpha=self.prior_disruption_alpha,
            disruption_beta=self.prior_disruption_beta,
        )

    def grid(self) -> tuple[PolicyParams, ...]:
        step = self.grid_step
        return tuple(
            PolicyParams(s, cap)
            for s in range(0, self.grid_s_max + 1, step)
            for cap in range(s + step, self.grid_S_max + 1, step)
        )

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(
            num_samples=self.optimizer_samples,
            planning_horizon=self.planning_horizon,
            grid=self.grid(),
            mode=self.optimizer_mode,
            lead_time_p=self.lead_time_p,
        )

    def experiment_setup(self) -> ExperimentSetup:
        return ExperimentSetup(
            horizon=self.horizon,
            costs=self.costs(),
            baseline=self.baseline_params(),
            priors=self.priors(),
            update_period=self.update_period,
            optimizer_config=self.optimizer_config(),
            lead_time_p=self.lead_time_p,
        )

    def schedule(self, name: str | None = None) -> ScenarioSchedule:
        """Build the scenario schedule, honoring custom segments and overrides."""
        chosen = name or self.scenario
        if chosen == "custom":
            if not self.segments:
                raise ConfigurationError("scenario 'custom' requires at least one segment")
            return custom(self.segments, base_lambda=self.base_lambda, base_alpha=self.base_alpha)
        if chosen not in SCENARIO_NAMES:
            raise ConfigurationError(
                f"unknown scenario {chosen!r}; expected one of "
                f"{', '.join(SCENARIO_NAMES)} or custom"
            )
        schedule = by_name(chosen)
        if chosen == "demand-shock":
            schedule = replace(
                schedule,
                base_lambda=self.base_lambda,
                base_alpha=self.base_alpha,
                shock_lambda=self.shock_lambda,
                shock_period=self.shock_period,
            )
        elif chosen == "supply-disruption":
            schedule = replace(
                schedule,
                base_lambda=self.base_lambda,
                base_alpha=self.base_alpha,
                disruption_alpha=self.disruption_alpha,
                disruption_window=(self.disruption_window_start, self.disruption_window_end),
            )
        else:
            schedule = replace(schedule, base_lambda=self.base_lambda, base_alpha=self.base_alpha)
        return schedule


# key -> (parser, validator message); segment is handled separately
_INT_KEYS = {
    "horizon": (1, None),
    "n_reps": (2, None),
    "seed": (0, None),
    "baseline_s": (0, None),
    "baseline_S": (1, None),
    "update_period": (1, None),
    "optimizer_samples": (1, None),
    "planning_horizon": (1, None),
    "grid_s_max": (0, None),
    "grid_S_max": (1, None),
    "grid_step": (1, None),
    "shock_period": (1, None),
    "disruption_window_start": (1, None),
    "disruption_window_end": (1, None),
}
_FLOAT_KEYS = {
    "holding_cost": (0.0, None),
    "stockout_cost": (0.0, None),
    "fixed_order_cost": (0.0, None),
    "lead_time_p": (None, None),
    "prior_demand_shape": (None, None),
    "prior_demand_rate": (None, None),
    "prior_disruption_alpha": (None, None),
    "prior_disruption_beta": (None, None),
    "shock_lambda": (0.0, None),
    "disruption_alpha": (0.0, None),
    "base_lambda": (0.0, None),
    "base_alpha": (0.0, None),
}
_STR_KEYS = ("optimizer_mode", "scenario", "out_dir")

_KEY_ORDER = (
    "horizon",
    "n_reps",
    "seed",
    "holding_cost",
    "stockout_cost",
    "fixed_order_cost",
    "baseline_s",
    "baseline_S",
    "lead_time_p",
    "prior_demand_shape",
    "prior_demand_rate",
    "prior_disruption_alpha",
    "prior_disruption_beta",
    "update_period",
    "optimizer_samples",
    "planning_horizon",
    "optimizer_mode",
    "grid_s_max",
    "grid_S_max",
    "grid_step",
    "scenario",
    "shock_lambda",
    "shock_period",
    "disruption_alpha",
    "disruption_window_start",
    "disruption_window_end",
    "base_lambda",
    "base_alpha",
    "out_dir",
)


def _parse_segment(value: str, line_no: int) -> tuple[int, int, float, float]:
    parts = value.split()
    if len(parts) != 3 or ":" not in parts[0]:
        raise ConfigurationError(
            f"line {line_no}: segment must look like 'start:end lambda alpha', got {value!r}"
        )
    start_s, _, end_s = parts[0].partition(":")
    try:
        start, end = int(start_s), int(end_s)
        lam, alpha = float(parts[1]), float(parts[2])
    except ValueError as exc:
        raise ConfigurationError(f"line {line_no}: malformed segment {value!r}: {exc}") from exc
    if start < 1 or start > end:
        raise ConfigurationError(f"line {line_no}: segment needs 1 <= start <= end, got {value!r}")
    if lam < 0 or not (0.0 <= alpha <= 1.0):
        raise ConfigurationError(f"line {line_no}: segment rates out of range: {value!r}")
    return start, end, lam, alpha


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse flat key=value text into a RunConfig, validating as it goes."""
    values: dict = {}
    segments: list[tuple[int, int, float, float]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {line_no}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "segment":
            segments.append(_parse_segment(value, line_no))
        elif key in _INT_KEYS:
            minimum, _unused = _INT_KEYS[key]
            try:
                parsed = int(value)
            except ValueError:
                raise ConfigurationError(f"line {line_no}: {key} must be an integer, got {value!r}")
            if parsed < minimum:
                raise ConfigurationError(f"line {line_no}: {key} must be >= {minimum}, got {parsed}")
            values[key] = parsed
        elif key in _FLOAT_KEYS:
            minimum, _unused = _FLOAT_KEYS[key]
            try:
                parsed = float(value)
            except ValueError:
                raise ConfigurationError(f"line {line_no}: {key} must be a number, got {value!r}")
            if minimum is not None and parsed < minimum:
                raise ConfigurationError(f"line {line_no}: {key} must be >= {minimum}, got {parsed}")
            values[key] = parsed
        elif key in _STR_KEYS:
            values[key] = value
        else:
            raise ConfigurationError(f"line {line_no}: unknown key {key!r}")

    config = RunConfig(**values, segments=tuple(segments))
    validate_run_config(config, source)
    return config


def validate_run_config(config: RunConfig, source: str = "<config>") -> None:
    """Cross-field checks that individual key parsing cannot catch.

    Applied wherever a config enters the system: file loading and the
    service's wire form.
    """
    try:
        config.costs()
        config.baseline_params()
        config.priors()
        config.optimizer_config()
    except (ConfigurationError, ValueError) as exc:
        raise ConfigurationError(f"{source}: {exc}") from exc
    if not config.stockout_cost > config.holding_cost:
        raise ConfigurationError(
            f"{source}: stockout_cost ({config.stockout_cost}) must exceed holding_cost"
            f" ({config.holding_cost}); the model degenerates otherwise"
        )
    if config.optimizer_mode not in (MODE_POSTERIOR, MODE_POINT):
        raise ConfigurationError(
            f"{source}: optimizer_mode must be '{MODE_POSTERIOR}' or '{MODE_POINT}',"
            f" got {config.optimizer_mode!r}"
        )
    if config.scenario not in SCENARIO_NAMES + ("custom",):
        raise ConfigurationError(
            f"{source}: unknown scenario {config.scenario!r}; expected one of "
            f"{', '.join(SCENARIO_NAMES)} or custom"
        )
    if not (0.0 < config.lead_time_p <= 1.0):
        raise ConfigurationError(f"{source}: lead_time_p must be in (0, 1]")
    if config.disruption_window_start > config.disruption_window_end:
        raise ConfigurationError(f"{source}: disruption window start exceeds end")
    if not config.grid():
        raise ConfigurationError(f"{source}: grid bounds produce no candidates")
    if config.seed < 0:
        raise ConfigurationError(f"{source}: seed must be >= 0")


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a config file; missing files raise ConfigurationError."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text, source=str(path))


def _format_number(value: float | int) -> str:
    if isinstance(value, int):
        return str(value)
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _format_value(value: float | int | str) -> str:
    return value if isinstance(value, str) else _format_number(value)


def serialize_config(config: RunConfig) -> str:
    """Canonical text form; parse(serialize(c)) == c and serialization is idempotent."""
    lines = [f"{key} = {_format_value(getattr(config, key))}" for key in _KEY_ORDER]
    for start, end, lam, alpha in config.segments:
        lines.append(f"segment = {start}:{end} {_format_number(lam)} {_format_number(alpha)}")
    return "\n".join(lines) + "\n"
