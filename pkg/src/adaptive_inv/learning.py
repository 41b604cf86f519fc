"""Conjugate Bayesian updating for the demand rate and disruption probability.

The demand rate carries a Gamma(a, b) posterior (shape-rate) updated from
Poisson counts; the disruption probability carries a Beta(c, d) posterior
updated from Bernoulli indicators.  Updates add sufficient statistics to the
parameters, so after t observations b has grown by exactly t and c + d by
exactly t: there is no drift and no rounding for integer-valued data.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidParameterError

__all__ = ["PosteriorState", "DEFAULT_PRIOR"]


@dataclass(frozen=True)
class PosteriorState:
    """Immutable posterior over (demand rate, disruption probability).

    ``demand_shape``/``demand_rate`` are the Gamma(a, b) parameters;
    ``disruption_alpha``/``disruption_beta`` are the Beta(c, d) parameters.
    """

    demand_shape: float
    demand_rate: float
    disruption_alpha: float
    disruption_beta: float

    def __post_init__(self) -> None:
        for name in ("demand_shape", "demand_rate", "disruption_alpha", "disruption_beta"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidParameterError(f"posterior parameter {name} must be > 0, got {value!r}")

    def update_demand(self, demand: int) -> "PosteriorState":
        """Absorb one Poisson count: a += demand, b += 1."""
        if demand < 0:
            raise InvalidParameterError(f"demand observation must be >= 0, got {demand!r}")
        return replace(
            self,
            demand_shape=self.demand_shape + demand,
            demand_rate=self.demand_rate + 1.0,
        )

    def update_disruption(self, disrupted: int) -> "PosteriorState":
        """Absorb one Bernoulli indicator: c += s, d += 1 - s."""
        if disrupted not in (0, 1):
            raise InvalidParameterError(f"disruption indicator must be 0 or 1, got {disrupted!r}")
        return replace(
            self,
            disruption_alpha=self.disruption_alpha + disrupted,
            disruption_beta=self.disruption_beta + (1 - disrupted),
        )

    def demand_mean(self) -> float:
        """Posterior mean demand rate a / b."""
        return self.demand_shape / self.demand_rate

    def disruption_mean(self) -> float:
        """Posterior mean disruption probability c / (c + d)."""
        return self.disruption_alpha / (self.disruption_alpha + self.disruption_beta)


# Default priors: demand mean 10 with the weight of one pseudo-observation,
# disruption mean 0.02 with the weight of fifty pseudo-observations.
DEFAULT_PRIOR = PosteriorState(
    demand_shape=10.0,
    demand_rate=1.0,
    disruption_alpha=1.0,
    disruption_beta=49.0,
)
