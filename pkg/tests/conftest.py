"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from adaptive_inv import (
    CostParams,
    ExperimentSetup,
    OptimizerConfig,
    PolicyParams,
    advance_period,
    initial_state,
)


@pytest.fixture
def table_costs() -> CostParams:
    """The shipped default cost rates."""
    return CostParams(holding=1.0, stockout=10.0, fixed_order=5.0)


def small_grid(step: int = 10, s_max: int = 30, cap_max: int = 60) -> tuple[PolicyParams, ...]:
    return tuple(
        PolicyParams(s, cap)
        for s in range(0, s_max + 1, step)
        for cap in range(s + step, cap_max + 1, step)
    )


def fast_setup(**overrides) -> ExperimentSetup:
    """Experiment setup with a small grid and few SAA samples, for quick tests."""
    defaults = dict(
        horizon=60,
        optimizer_config=OptimizerConfig(num_samples=25, planning_horizon=15, grid=small_grid()),
    )
    defaults.update(overrides)
    return ExperimentSetup(**defaults)


def replay_optimizer_draws(stream, posterior, config):
    """Reproduce optimize()'s documented draw protocol for oracle checks.

    Returns the (rates, probabilities, substream root) the optimizer would
    have drawn from ``stream``; scenario m then replays from
    ``stochastic.substream(root, m)``.
    """
    from adaptive_inv.stochastic import derive_root

    if config.mode == "point":
        lams = np.full(config.num_samples, posterior.demand_mean())
        alphas = np.full(config.num_samples, posterior.disruption_mean())
    else:
        lams = stream.rng.gamma(
            posterior.demand_shape, 1.0 / posterior.demand_rate, size=config.num_samples
        )
        alphas = stream.rng.beta(
            posterior.disruption_alpha, posterior.disruption_beta, size=config.num_samples
        )
    return lams, alphas, derive_root(stream)


def random_trace(seed: int, horizon: int = 50):
    """Drive advance_period with random-but-reproducible inputs.

    Exercises arbitrary demand spikes, all lead times, disruption flags, and
    a randomly drawn (s, S) policy; returns the trace for oracle checks.
    """
    rng = np.random.default_rng(seed)
    s = int(rng.integers(0, 40))
    policy = PolicyParams(s, s + int(rng.integers(5, 60)))
    costs = CostParams(
        holding=float(rng.choice([0.5, 1.0, 2.0])),
        stockout=float(rng.choice([5.0, 10.0, 20.0])),
        fixed_order=float(rng.choice([0.0, 5.0, 12.5])),
    )
    state = initial_state(int(rng.integers(0, 60)))
    trace = []
    for _ in range(horizon):
        state, record = advance_period(
            state,
            demand=int(rng.poisson(rng.choice([0, 5, 10, 25]))),
            lead_time=int(rng.integers(1, 6)),
            disrupted=int(rng.random() < 0.2),
            policy=policy,
            costs=costs,
        )
        trace.append(record)
    return trace, policy, costs
