"""Domain state, per-period event sequencing, and cost accounting.

One period runs the fixed event sequence: (1) pipeline orders due this
period arrive, (2) demand is realized, (3) sales = min(on hand, demand) are
fulfilled; unmet demand is lost, never backordered, so on-hand stock never
goes negative, (4) costs accrue as

    holding * on_hand_end + stockout * lost_units + fixed_order * 1{order},

and (5) the reorder decision runs against the post-sales inventory position
(on hand plus everything in transit).  An order placed in a disrupted period
takes twice its sampled lead time; orders already in transit are unaffected.

All quantities are integers and the shipped cost rates are exactly
representable in binary floating point, so the accounting is bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InvalidParameterError
from .metrics import RunMetrics, metrics_from_trace
from .policies import PolicyParams, decide_order
from .stochastic import (
    RngStream,
    Stream,
    sample_bernoulli,
    sample_lead_time,
    sample_poisson,
)

if TYPE_CHECKING:
    from .controllers import Controller
    from .scenarios import ScenarioSchedule

__all__ = [
    "CostParams",
    "PipelineOrder",
    "SystemState",
    "PeriodRecord",
    "inventory_position",
    "advance_period",
    "run_simulation",
    "initial_state",
    "DEFAULT_LEAD_TIME_P",
]

DEFAULT_LEAD_TIME_P = 0.8


@dataclass(frozen=True)
class CostParams:
    """Cost rates: holding per unit-period, stockout per lost unit, fixed per order.

    Rates must be non-negative.  A stockout rate at or below the holding
    rate degenerates the model (never stocking becomes optimal); the config
    loader rejects that combination, while direct construction stays
    permissive for exploratory use.
    """

    holding: float = 1.0
    stockout: float = 10.0
    fixed_order: float = 5.0

    def __post_init__(self) -> None:
        for name in ("holding", "stockout", "fixed_order"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"cost rate {name} must be >= 0")


@dataclass(frozen=True)
class PipelineOrder:
    """An order in transit: quantity, the period it arrives, and whether the
    placing period was disrupted (which already doubled its lead time)."""

    quantity: int
    arrival_period: int
    disrupted: bool = False


@dataclass(frozen=True)
class SystemState:
    """Evolving simulator state: current period, on-hand stock, in-transit orders."""

    period: int = 1
    on_hand: int = 0
    pipeline: tuple[PipelineOrder, ...] = ()


@dataclass
class PeriodRecord:
    """One trace row; every cost figure satisfies total = holding + stockout + ordering."""

    period: int
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
    holding_cost: float
    stockout_cost: float
    ordering_cost: float
    total_cost: float
    lambda_true: float = 0.0
    alpha_true: float = 0.0
    lambda_hat: float | None = None
    alpha_hat: float | None = None


def inventory_position(state: SystemState) -> int:
    """On-hand stock plus all in-transit order quantities."""
    return state.on_hand + sum(order.quantity for order in state.pipeline)


def initial_state(order_up_to: int = 50) -> SystemState:
    """Standard starting point: period 1, full at the order-up-to level, nothing in transit."""
    return SystemState(period=1, on_hand=order_up_to, pipeline=())


def advance_period(
    state: SystemState,
    demand: int,
    lead_time: int,
    disrupted: int,
    policy: PolicyParams,
    costs: CostParams,
) -> tuple[SystemState, PeriodRecord]:
    """Execute one period of the event sequence and return (next state, record).

    ``lead_time`` is the period's sampled base lead time; it only takes
    effect if an order is placed, and is doubled when ``disrupted`` is set.
    """
    if demand < 0:
        raise InvalidParameterError(f"demand must be >= 0, got {demand!r}")
    if lead_time < 1:
        raise InvalidParameterError(f"lead time must be >= 1, got {lead_time!r}")
    t = state.period

    # (1) arrivals due now
    arrived = 0
    remaining: list[PipelineOrder] = []
    for order in state.pipeline:
        if order.arrival_period < t:
            raise RuntimeError(
                f"pipeline order due at {order.arrival_period} survived past period {t}"
            )
        if order.arrival_period == t:
            arrived += order.quantity
        else:
            remaining.append(order)
    on_hand = state.on_hand + arrived

    # (2)-(3) demand, lost sales
    sales = min(on_hand, demand)
    lost = demand - sales
    on_hand -= sales

    # (5) reorder against post-sales inventory position; the decision is made
    # here so the fixed ordering charge can be booked into this period's cost
    position = on_hand + sum(order.quantity for order in remaining)
    order_qty = decide_order(position, policy)

    # (4) cost accrual
    holding_cost = costs.holding * on_hand
    stockout_cost = costs.stockout * lost
    ordering_cost = costs.fixed_order if order_qty > 0 else 0.0
    total_cost = holding_cost + stockout_cost + ordering_cost

    if order_qty > 0:
        effective_lead = lead_time * 2 if disrupted else lead_time
        remaining.append(
            PipelineOrder(
                quantity=order_qty,
                arrival_period=t + effective_lead,
                disrupted=bool(disrupted),
            )
        )

    next_state = SystemState(period=t + 1, on_hand=on_hand, pipeline=tuple(remaining))
    record = PeriodRecord(
        period=t,
        demand=demand,
        sales=sales,
        lost_units=lost,
        on_hand_end=on_hand,
        order_qty=order_qty,
        order_placed=order_qty > 0,
        sampled_lead_time=lead_time,
        disrupted=bool(disrupted),
        active_s=policy.reorder_point,
        active_S=policy.order_up_to,
        holding_cost=holding_cost,
        stockout_cost=stockout_cost,
        ordering_cost=ordering_cost,
        total_cost=total_cost,
    )
    return next_state, record


def run_simulation(
    horizon: int,
    initial: SystemState,
    scenario: "ScenarioSchedule",
    controller: "Controller",
    costs: CostParams,
    seed: int,
    replication_id: int = 0,
    lead_time_p: float = DEFAULT_LEAD_TIME_P,
) -> tuple[RunMetrics, list[PeriodRecord]]:
    """Simulate ``horizon`` periods under a scenario and a policy controller.

    Demand, lead time, and disruption are drawn every period from their own
    named streams regardless of the policy's decisions, so two runs with the
    same (seed, replication_id) see bit-identical realizations whichever
    controller they carry.  The controller observes each period's demand and
    disruption (and may re-optimize, consuming only the optimizer stream)
    before the reorder decision runs.
    """
    if horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {horizon!r}")
    demand_stream = RngStream(seed, Stream.DEMAND, replication_id)
    lead_stream = RngStream(seed, Stream.LEAD_TIME, replication_id)
    disruption_stream = RngStream(seed, Stream.DISRUPTION, replication_id)
    optimizer_stream = RngStream(seed, Stream.OPTIMIZER, replication_id)

    state = initial
    trace: list[PeriodRecord] = []
    for _ in range(horizon):
        t = state.period
        lam, alpha = scenario.params_at(t)
        demand = sample_poisson(lam, demand_stream)
        lead_time = sample_lead_time(lead_time_p, lead_stream)
        disrupted = sample_bernoulli(alpha, disruption_stream)

        controller = controller.observe(demand, disrupted, t, state, optimizer_stream)

        state, record = advance_period(state, demand, lead_time, disrupted, controller.params, costs)
        record.lambda_true = lam
        record.alpha_true = alpha
        record.lambda_hat, record.alpha_hat = controller.estimates()
        trace.append(record)

    return metrics_from_trace(trace), trace
