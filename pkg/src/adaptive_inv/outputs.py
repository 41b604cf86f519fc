"""File schemas: trace CSV, summary/comparison JSON, and plot-ready series.

Column names and order are fixed.  Floats are written with 17 significant
digits so a parsed CSV reproduces the original doubles bit for bit; JSON
uses Python's shortest round-trip representation, which is equally
bit-faithful.  Identical inputs therefore serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, fields
from pathlib import Path
from typing import Iterable, Sequence

from .core import PeriodRecord
from .errors import ConfigurationError
from .harness import ComparisonResult, SensitivityRow
from .metrics import RunMetrics

__all__ = [
    "TRACE_COLUMNS",
    "COMPARISON_COLUMNS",
    "format_cell",
    "trace_to_csv",
    "write_trace_csv",
    "read_trace_csv",
    "summary_payload",
    "comparison_to_csv",
    "comparison_payload",
    "plot_series",
    "series_to_csv",
    "write_json",
]

TRACE_COLUMNS = (
    "period",
    "lambda_true",
    "alpha_true",
    "demand",
    "sales",
    "lost_units",
    "on_hand_end",
    "order_qty",
    "order_placed",
    "sampled_lead_time",
    "disrupted",
    "active_s",
    "active_S",
    "lambda_hat",
    "alpha_hat",
    "holding_cost",
    "stockout_cost",
    "ordering_cost",
    "total_cost",
)

def format_cell(value: object) -> str:
    """One CSV cell: ints plain, bools as 0/1, floats at 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def trace_to_csv(trace: Sequence[PeriodRecord]) -> str:
    """Render a trace in the fixed column order."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for record in trace:
        writer.writerow([format_cell(getattr(record, name)) for name in TRACE_COLUMNS])
    return out.getvalue()


def write_trace_csv(path: str | Path, trace: Sequence[PeriodRecord]) -> None:
    Path(path).write_text(trace_to_csv(trace), encoding="utf-8")


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in ("order_placed", "disrupted"):
        return text == "1"
    if name in (
        "period",
        "demand",
        "sales",
        "lost_units",
        "on_hand_end",
        "order_qty",
        "sampled_lead_time",
        "active_s",
        "active_S",
    ):
        return int(text)
    return float(text)


def read_trace_csv(path: str | Path) -> list[PeriodRecord]:
    """Parse a trace CSV written by this package back into records."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read trace file {path}: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != TRACE_COLUMNS:
        raise ConfigurationError(f"{path} does not look like a trace CSV (bad header)")
    records = []
    for row in reader:
        values = {name: _parse_cell(name, cell) for name, cell in zip(TRACE_COLUMNS, row)}
        records.append(PeriodRecord(**values))
    return records


def metrics_payload(metrics: RunMetrics) -> dict:
    return asdict(metrics)


def summary_payload(metrics: RunMetrics, run_info: dict) -> dict:
    """Metrics JSON for a single run, with the run's identifying info attached."""
    return {"run": dict(run_info), "metrics": metrics_payload(metrics)}


COMPARISON_COLUMNS = (
    "scenario",
    "policy",
    "total_cost",
    "cost_per_period",
    "period_service_level",
    "fill_rate",
    "avg_inventory",
    "stockout_events",
    "holding_total",
    "stockout_total",
    "ordering_total",
    "disruptions_experienced",
    "percent_change",
    "t_statistic",
    "p_value",
    "n_reps",
)


def _comparison_rows(result: ComparisonResult) -> list[list[str]]:
    rows = []
    for policy, metrics in (("static", result.baseline_mean), ("adaptive", result.adaptive_mean)):
        cells = [result.scenario, policy]
        cells += [format_cell(getattr(metrics, f.name)) for f in fields(RunMetrics)]
        if policy == "adaptive":
            cells += [
                format_cell(result.percent_change),
                format_cell(result.t_statistic),
                format_cell(result.p_value),
                format_cell(result.n_reps),
            ]
        else:
            cells += ["", "", "", format_cell(result.n_reps)]
        rows.append(cells)
    return rows


def comparison_to_csv(
    results: Sequence[ComparisonResult],
    stationary_reference: RunMetrics | None = None,
    sensitivity: Sequence[SensitivityRow] = (),
) -> str:
    """Comparison table: one row per scenario and policy.

    The stationary static run is repeated as a ``stationary-reference`` row
    so results remain comparable with presentations that quote the baseline
    at its stationary figures in every scenario.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COMPARISON_COLUMNS)
    for result in results:
        writer.writerows(_comparison_rows(result))
    if stationary_reference is not None:
        cells = ["stationary-reference", "static"]
        cells += [format_cell(getattr(stationary_reference, f.name)) for f in fields(RunMetrics)]
        cells += ["", "", "", ""]
        writer.writerow(cells)
    for row in sensitivity:
        if row.result is not None:
            for cells in _comparison_rows(row.result):
                cells[0] = f"{row.scenario}[{row.variation}]"
                writer.writerow(cells)
    return out.getvalue()


def comparison_result_payload(result: ComparisonResult) -> dict:
    return {
        "scenario": result.scenario,
        "n_reps": result.n_reps,
        "baseline_mean": metrics_payload(result.baseline_mean),
        "adaptive_mean": metrics_payload(result.adaptive_mean),
        "mean_cost_difference": result.mean_cost_difference,
        "percent_change": result.percent_change,
        "t_statistic": result.t_statistic,
        "p_value": result.p_value,
        "baseline_costs": list(result.baseline_costs),
        "adaptive_costs": list(result.adaptive_costs),
    }


def comparison_payload(
    results: Sequence[ComparisonResult],
    stationary_reference: RunMetrics | None = None,
    robustness: Sequence[ComparisonResult] = (),
    sensitivity: Sequence[SensitivityRow] = (),
) -> dict:
    payload: dict = {"comparisons": [comparison_result_payload(r) for r in results]}
    if stationary_reference is not None:
        payload["stationary_baseline_reference"] = metrics_payload(stationary_reference)
    if robustness:
        payload["robustness"] = [comparison_result_payload(r) for r in robustness]
    if sensitivity:
        payload["sensitivity"] = [
            {
                "variation": row.variation,
                "scenario": row.scenario,
                "result": comparison_result_payload(row.result) if row.result else None,
                "error": row.error,
            }
            for row in sensitivity
        ]
    return payload


PLOT_KINDS = ("convergence", "adaptation", "performance")


def plot_series(
    kind: str, traces: Sequence[tuple[str, Sequence[PeriodRecord]]]
) -> tuple[tuple[str, ...], list[list[object]]]:
    """Tidy (columns, rows) for one figure kind.

    convergence: per-period parameter estimates vs the truth;
    adaptation:  the active (s, S) pair and end-of-period stock;
    performance: cumulative cost per labeled trace.
    """
    if kind not in PLOT_KINDS:
        raise ConfigurationError(f"unknown plot kind {kind!r}; expected one of {', '.join(PLOT_KINDS)}")
    if not traces:
        raise ConfigurationError("plot data needs at least one trace")
    if kind == "convergence":
        _, trace = traces[0]
        columns = ("period", "lambda_hat", "alpha_hat", "lambda_true", "alpha_true")
        rows = [
            [r.period, r.lambda_hat, r.alpha_hat, r.lambda_true, r.alpha_true] for r in trace
        ]
        return columns, rows
    if kind == "adaptation":
        _, trace = traces[0]
        columns = ("period", "active_s", "active_S", "on_hand_end")
        rows = [[r.period, r.active_s, r.active_S, r.on_hand_end] for r in trace]
        return columns, rows
    # performance: align traces on period, one cumulative-cost column each
    length = len(traces[0][1])
    for _, trace in traces:
        if len(trace) != length:
            raise ConfigurationError("performance plot needs traces of equal length")
    columns = ("period",) + tuple(f"cumulative_cost_{label}" for label, _ in traces)
    cumulative = [0.0] * len(traces)
    rows = []
    for i in range(length):
        row: list[object] = [traces[0][1][i].period]
        for j, (_, trace) in enumerate(traces):
            cumulative[j] += trace[i].total_cost
            row.append(cumulative[j])
        rows.append(row)
    return columns, rows


def series_to_csv(columns: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return out.getvalue()


def write_json(path: str | Path, payload: dict) -> None:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
