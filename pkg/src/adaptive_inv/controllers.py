"""Policy controllers: the immutable static baseline and the adaptive learner.

A controller is asked to ``observe`` each period's realized demand and
disruption before the reorder decision runs.  The static controller ignores
everything.  The adaptive controller folds the observations into its
conjugate posteriors every period and, every ``update_period`` periods,
re-optimizes its (s, S) pair from the current posterior and the live system
state.  Controllers are immutable; ``observe`` returns the successor.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Protocol

from .core import CostParams, SystemState
from .errors import InvalidParameterError
from .learning import DEFAULT_PRIOR, PosteriorState
from .optimizer import OptimizerConfig, optimize
from .policies import BASELINE_PARAMS, PolicyParams
from .stochastic import RngStream

__all__ = ["Controller", "StaticController", "AdaptiveController"]


class Controller(Protocol):
    """What the simulation loop needs from a policy controller."""

    params: PolicyParams

    def observe(
        self,
        demand: int,
        disrupted: int,
        t: int,
        state: SystemState,
        optimizer_stream: RngStream,
    ) -> "Controller": ...

    def estimates(self) -> tuple[float | None, float | None]: ...


@dataclass(frozen=True)
class StaticController:
    """Fixed (s, S); never reacts to anything."""

    params: PolicyParams = BASELINE_PARAMS
    mode: str = field(default="static", init=False)

    def observe(
        self,
        demand: int,
        disrupted: int,
        t: int,
        state: SystemState,
        optimizer_stream: RngStream,
    ) -> "StaticController":
        return self

    def estimates(self) -> tuple[float | None, float | None]:
        return None, None


@dataclass(frozen=True)
class AdaptiveController:
    """Bayesian learning plus periodic sample-average re-optimization.

    The posterior absorbs every period's observations; the policy parameters
    change only when ``t`` is a positive multiple of ``update_period``, at
    which point the optimizer is run from the live state using only the
    optimizer stream.
    """

    params: PolicyParams = BASELINE_PARAMS
    posterior: PosteriorState = DEFAULT_PRIOR
    costs: CostParams = field(default_factory=CostParams)
    update_period: int = 7
    optimizer_config: OptimizerConfig = field(default_factory=OptimizerConfig)
    mode: str = field(default="adaptive", init=False)

    def __post_init__(self) -> None:
        if self.update_period < 1:
            raise InvalidParameterError(f"update_period must be >= 1, got {self.update_period}")

    def observe(
        self,
        demand: int,
        disrupted: int,
        t: int,
        state: SystemState,
        optimizer_stream: RngStream,
    ) -> "AdaptiveController":
        posterior = self.posterior.update_demand(demand).update_disruption(disrupted)
        params = self.params
        if t > 0 and t % self.update_period == 0:
            params, _ = optimize(
                posterior, self.optimizer_config, self.costs, current=state, rng=optimizer_stream
            )
        return replace(self, params=params, posterior=posterior)

    def estimates(self) -> tuple[float | None, float | None]:
        return self.posterior.demand_mean(), self.posterior.disruption_mean()
