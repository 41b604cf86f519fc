"""Time-indexed true parameters (lambda_t, alpha_t) for the experiment scenarios.

Three named scenarios plus a custom piecewise-constant form:

* stationary:         lambda = 10, alpha = 0.02 throughout
* demand-shock:        lambda jumps 10 -> 20 from period 183 (inclusive)
* supply-disruption:   alpha rises 0.02 -> 0.15 over periods 122..244
                        (inclusive on both ends)

Schedules are immutable pure functions of (fields, t); the simulator asks
for the truth each period.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidParameterError

__all__ = [
    "ScenarioSchedule",
    "stationary",
    "demand_shock",
    "supply_disruption",
    "custom",
    "shock_magnitude_variant",
    "SCENARIO_NAMES",
]

SCENARIO_NAMES = ("stationary", "demand-shock", "supply-disruption")


@dataclass(frozen=True)
class ScenarioSchedule:
    """Piecewise-constant truth for demand rate and disruption probability.

    ``segments`` (custom schedules only) is a tuple of
    ``(start, end, lambda, alpha)`` entries, inclusive on both ends; the
    base values apply wherever no segment matches.
    """

    name: str
    base_lambda: float = 10.0
    base_alpha: float = 0.02
    shock_lambda: float | None = None
    shock_period: int | None = None
    disruption_alpha: float | None = None
    disruption_window: tuple[int, int] | None = None
    segments: tuple[tuple[int, int, float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.base_lambda < 0:
            raise InvalidParameterError(f"base_lambda must be >= 0, got {self.base_lambda!r}")
        if not (0.0 <= self.base_alpha <= 1.0):
            raise InvalidParameterError(f"base_alpha must be in [0, 1], got {self.base_alpha!r}")
        if self.shock_lambda is not None and self.shock_lambda < 0:
            raise InvalidParameterError(f"shock_lambda must be >= 0, got {self.shock_lambda!r}")
        if self.shock_period is not None and self.shock_period < 1:
            raise InvalidParameterError(f"shock_period must be >= 1, got {self.shock_period!r}")
        if self.disruption_alpha is not None and not (0.0 <= self.disruption_alpha <= 1.0):
            raise InvalidParameterError(
                f"disruption_alpha must be in [0, 1], got {self.disruption_alpha!r}"
            )
        if self.disruption_window is not None:
            start, end = self.disruption_window
            if start < 1 or start > end:
                raise InvalidParameterError(
                    f"disruption window must satisfy 1 <= start <= end, got {self.disruption_window!r}"
                )
        for seg in self.segments:
            start, end, lam, alpha = seg
            if start < 1 or start > end:
                raise InvalidParameterError(f"segment must satisfy 1 <= start <= end, got {seg!r}")
            if lam < 0 or not (0.0 <= alpha <= 1.0):
                raise InvalidParameterError(f"segment rates out of range: {seg!r}")

    def params_at(self, t: int) -> tuple[float, float]:
        """True (lambda_t, alpha_t) for period t >= 1."""
        if t < 1:
            raise InvalidParameterError(f"period index must be >= 1, got {t!r}")
        lam = self.base_lambda
        alpha = self.base_alpha
        if self.shock_lambda is not None and self.shock_period is not None and t >= self.shock_period:
            lam = self.shock_lambda
        if self.disruption_alpha is not None and self.disruption_window is not None:
            start, end = self.disruption_window
            if start <= t <= end:
                alpha = self.disruption_alpha
        for start, end, seg_lam, seg_alpha in self.segments:
            if start <= t <= end:
                lam, alpha = seg_lam, seg_alpha
        return lam, alpha


def stationary(base_lambda: float = 10.0, base_alpha: float = 0.02) -> ScenarioSchedule:
    """Constant (lambda, alpha) for every period."""
    return ScenarioSchedule(name="stationary", base_lambda=base_lambda, base_alpha=base_alpha)


def demand_shock(
    shock_lambda: float = 20.0,
    shock_period: int = 183,
    base_lambda: float = 10.0,
    base_alpha: float = 0.02,
) -> ScenarioSchedule:
    """Demand rate jumps to shock_lambda from shock_period onward."""
    return ScenarioSchedule(
        name="demand-shock",
        base_lambda=base_lambda,
        base_alpha=base_alpha,
        shock_lambda=shock_lambda,
        shock_period=shock_period,
    )


def supply_disruption(
    disruption_alpha: float = 0.15,
    window: tuple[int, int] = (122, 244),
    base_lambda: float = 10.0,
    base_alpha: float = 0.02,
) -> ScenarioSchedule:
    """Disruption probability rises inside the window, inclusive both ends."""
    return ScenarioSchedule(
        name="supply-disruption",
        base_lambda=base_lambda,
        base_alpha=base_alpha,
        disruption_alpha=disruption_alpha,
        disruption_window=window,
    )


def custom(
    segments: tuple[tuple[int, int, float, float], ...],
    base_lambda: float = 10.0,
    base_alpha: float = 0.02,
) -> ScenarioSchedule:
    """Piecewise-constant schedule from explicit (start, end, lambda, alpha) segments."""
    return ScenarioSchedule(
        name="custom", base_lambda=base_lambda, base_alpha=base_alpha, segments=tuple(segments)
    )


def shock_magnitude_variant(target_lambda: float) -> ScenarioSchedule:
    """Demand-shock variant jumping to target_lambda at the standard period 183.

    Named with its magnitude so sweep rows stay distinguishable in reports.
    """
    if not target_lambda > 0:
        raise InvalidParameterError(f"shock magnitude must be > 0, got {target_lambda!r}")
    variant = demand_shock(shock_lambda=target_lambda)
    return replace(variant, name=f"demand-shock-{target_lambda:g}")


def by_name(name: str) -> ScenarioSchedule:
    """Look up one of the three named scenarios."""
    table = {
        "stationary": stationary,
        "demand-shock": demand_shock,
        "supply-disruption": supply_disruption,
    }
    if name not in table:
        raise InvalidParameterError(
            f"unknown scenario {name!r}; expected one of {', '.join(SCENARIO_NAMES)}"
        )
    return table[name]()
