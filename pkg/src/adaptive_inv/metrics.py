"""Per-replication aggregate metrics computed from a period-by-period trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .core import PeriodRecord

__all__ = ["RunMetrics", "metrics_from_trace"]


@dataclass(frozen=True)
class RunMetrics:
    """Aggregates over one simulated replication.

    Two service measures are reported side by side because they answer
    different questions: ``period_service_level`` is the share of periods
    with no lost units, ``fill_rate`` the share of demanded units sold.
    """

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


def metrics_from_trace(trace: Sequence["PeriodRecord"]) -> RunMetrics:
    """Fold a trace into RunMetrics; fill rate is 1 when total demand is zero."""
    horizon = len(trace)
    if horizon == 0:
        raise ValueError("cannot compute metrics for an empty trace")
    holding = sum(r.holding_cost for r in trace)
    stockout = sum(r.stockout_cost for r in trace)
    ordering = sum(r.ordering_cost for r in trace)
    total = holding + stockout + ordering
    total_demand = sum(r.demand for r in trace)
    total_sales = sum(r.sales for r in trace)
    stockout_events = sum(1 for r in trace if r.lost_units > 0)
    return RunMetrics(
        total_cost=total,
        cost_per_period=total / horizon,
        period_service_level=1.0 - stockout_events / horizon,
        fill_rate=(total_sales / total_demand) if total_demand > 0 else 1.0,
        avg_inventory=sum(r.on_hand_end for r in trace) / horizon,
        stockout_events=float(stockout_events),
        holding_total=holding,
        stockout_total=stockout,
        ordering_total=ordering,
        disruptions_experienced=float(sum(1 for r in trace if r.disrupted)),
    )
