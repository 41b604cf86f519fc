"""Command-line front end.

The CLI owns no simulation logic: it loads the config file, builds the same
request models the HTTP service accepts, dispatches them (in-process by
default, or to a running service when ``--url`` is given), and writes the
returned payloads to CSV/JSON files.

Exit codes: 0 success, 1 configuration error, 2 runtime error.
The ``ADAPTIVE_INV_SEED`` environment variable supplies the seed when the
``--seed`` flag is absent; the config file's seed is the final fallback.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import RunConfig, load_config
from .errors import ConfigurationError
from .harness import ComparisonResult, SensitivityRow
from .metrics import RunMetrics
from .outputs import (
    PLOT_KINDS,
    comparison_payload,
    comparison_to_csv,
    read_trace_csv,
    series_to_csv,
    summary_payload,
    trace_to_csv,
    write_json,
)
from .service import (
    CompareRequest,
    CompareResponse,
    ComparisonModel,
    ConfigModel,
    NamedTrace,
    OptimizeBaselineRequest,
    OptimizeBaselineResponse,
    PlotDataRequest,
    PlotDataResponse,
    RunRequest,
    RunResponse,
    TraceRowModel,
    handle_compare,
    handle_optimize_baseline,
    handle_plotdata,
    handle_run,
)

SEED_ENV_VAR = "ADAPTIVE_INV_SEED"

_ENDPOINTS = {
    RunRequest: ("/run", handle_run, RunResponse),
    CompareRequest: ("/compare", handle_compare, CompareResponse),
    PlotDataRequest: ("/plotdata", handle_plotdata, PlotDataResponse),
    OptimizeBaselineRequest: ("/optimize-baseline", handle_optimize_baseline, OptimizeBaselineResponse),
}


def _dispatch(request, url: str | None):
    """Run a request against the local handlers or a remote service."""
    path, handler, response_type = _ENDPOINTS[type(request)]
    if url is None:
        return handler(request)
    import httpx

    reply = httpx.post(url.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=None)
    if reply.status_code == 400:
        detail = reply.json().get("detail", reply.text)
        raise ConfigurationError(f"service rejected the request: {detail}")
    if reply.status_code != 200:
        raise RuntimeError(f"service error {reply.status_code}: {reply.text}")
    return response_type.model_validate(reply.json())


def _resolve_seed(args: argparse.Namespace, config: RunConfig) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigurationError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return config.seed


def _load_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "mode", None):
        from dataclasses import replace

        config = replace(config, optimizer_mode=args.mode)
    return config


def _out_dir(args: argparse.Namespace, config: RunConfig) -> Path:
    out = Path(args.out) if args.out else Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _print_metrics_table(title: str, metrics) -> None:
    print(title)
    rows = [
        ("Total Cost", f"{metrics.total_cost:.2f}"),
        ("Cost per Period", f"{metrics.cost_per_period:.2f}"),
        ("Period Service Level", f"{100 * metrics.period_service_level:.1f}%"),
        ("Fill Rate", f"{100 * metrics.fill_rate:.1f}%"),
        ("Average Inventory", f"{metrics.avg_inventory:.2f}"),
        ("Stockout Events", f"{metrics.stockout_events:.0f}"),
        ("Holding / Stockout / Ordering", f"{metrics.holding_total:.0f} / {metrics.stockout_total:.0f} / {metrics.ordering_total:.0f}"),
        ("Disruptions Experienced", f"{metrics.disruptions_experienced:.0f}"),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"  {label:<{width}}  {value}")


def cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config)
    request = RunRequest(
        config=ConfigModel.from_run_config(config),
        scenario=args.scenario,
        policy=args.policy,
        seed=seed,
        replication_id=args.replication,
    )
    response: RunResponse = _dispatch(request, args.url)
    out = _out_dir(args, config)
    stem = f"{response.scenario}_{response.policy}"
    trace = [row.to_record() for row in response.trace]
    (out / f"trace_{stem}.csv").write_text(trace_to_csv(trace), encoding="utf-8")
    write_json(
        out / f"summary_{stem}.json",
        summary_payload(
            _metrics_from_model(response.metrics),
            {
                "scenario": response.scenario,
                "policy": response.policy,
                "seed": response.seed,
                "horizon": response.horizon,
                "replication_id": args.replication,
            },
        ),
    )
    _print_metrics_table(
        f"{response.scenario} / {response.policy} (seed {response.seed}, {response.horizon} periods)",
        response.metrics,
    )
    print(f"wrote {out / f'trace_{stem}.csv'} and {out / f'summary_{stem}.json'}")
    return 0


def _metrics_from_model(model) -> RunMetrics:
    return RunMetrics(**model.model_dump())


def _comparison_from_model(model: ComparisonModel) -> ComparisonResult:
    return ComparisonResult(
        scenario=model.scenario,
        n_reps=model.n_reps,
        baseline_mean=_metrics_from_model(model.baseline_mean),
        adaptive_mean=_metrics_from_model(model.adaptive_mean),
        mean_cost_difference=model.mean_cost_difference,
        percent_change=model.percent_change,
        t_statistic=model.t_statistic,
        p_value=model.p_value,
        baseline_costs=tuple(model.baseline_costs),
        adaptive_costs=tuple(model.adaptive_costs),
    )


def _sensitivity_from_model(row) -> SensitivityRow:
    return SensitivityRow(
        variation=row.variation,
        scenario=row.scenario,
        result=_comparison_from_model(row.result) if row.result else None,
        error=row.error,
    )


def cmd_compare(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config)
    scenarios = [s.strip() for s in args.scenario.split(",")] if args.scenario else None
    request = CompareRequest(
        config=ConfigModel.from_run_config(config),
        seed=seed,
        n_reps=args.reps,
        robustness=[float(m) for m in args.robustness.split(",")] if args.robustness else [],
        sensitivity=args.sensitivity,
        **({"scenarios": scenarios} if scenarios else {}),
    )
    response: CompareResponse = _dispatch(request, args.url)
    out = _out_dir(args, config)

    results = [_comparison_from_model(c) for c in response.comparisons]
    robustness = [_comparison_from_model(c) for c in response.robustness]
    sensitivity = [_sensitivity_from_model(r) for r in response.sensitivity]
    reference = _metrics_from_model(response.stationary_baseline_reference)
    (out / "comparison.csv").write_text(
        comparison_to_csv(results + robustness, reference, sensitivity), encoding="utf-8"
    )
    write_json(
        out / "comparison.json",
        comparison_payload(results, reference, robustness, sensitivity),
    )

    header = f"{'Scenario':<24} {'Policy':<9} {'Total Cost':>11} {'Service':>8} {'Change':>8}   p-value"
    print(header)
    print("-" * len(header))
    for result in results + robustness:
        b, a = result.baseline_mean, result.adaptive_mean
        print(
            f"{result.scenario:<24} {'static':<9} {b.total_cost:>11.2f}"
            f" {100 * b.period_service_level:>7.1f}% {'--':>8}"
        )
        print(
            f"{'':<24} {'adaptive':<9} {a.total_cost:>11.2f}"
            f" {100 * a.period_service_level:>7.1f}% {result.percent_change:>+7.1f}%   {result.p_value:.4g}"
        )
    for row in sensitivity:
        if row.error:
            print(f"{row.scenario}[{row.variation}]: rejected: {row.error}")
        elif row.result:
            print(
                f"{row.scenario + '[' + row.variation + ']':<24} {'adaptive':<9}"
                f" {row.result.adaptive_mean.total_cost:>11.2f}"
                f" {100 * row.result.adaptive_mean.period_service_level:>7.1f}%"
                f" {row.result.percent_change:>+7.1f}%   {row.result.p_value:.4g}"
            )
    print(f"wrote {out / 'comparison.csv'} and {out / 'comparison.json'}")
    return 0


def cmd_plotdata(args: argparse.Namespace) -> int:
    config = _load_config(args)
    traces = []
    for trace_path in args.traces:
        records = read_trace_csv(trace_path)
        traces.append(
            NamedTrace(
                label=Path(trace_path).stem,
                rows=[TraceRowModel.from_record(r) for r in records],
            )
        )
    request = PlotDataRequest(kind=args.kind, traces=traces)
    response: PlotDataResponse = _dispatch(request, args.url)
    out = _out_dir(args, config)
    target = out / f"{args.kind}.csv"
    target.write_text(series_to_csv(response.columns, response.rows), encoding="utf-8")
    print(f"wrote {target}")
    return 0


def cmd_optimize_baseline(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config)
    request = OptimizeBaselineRequest(config=ConfigModel.from_run_config(config), seed=seed)
    response: OptimizeBaselineResponse = _dispatch(request, args.url)
    out = _out_dir(args, config)
    write_json(
        out / "optimize_baseline.json",
        {
            "reorder_point": response.reorder_point,
            "order_up_to": response.order_up_to,
            "seed": seed,
            "evaluations": [e.model_dump() for e in response.evaluations],
        },
    )
    print(f"optimal baseline policy: s={response.reorder_point}, S={response.order_up_to}")
    print(f"wrote {out / 'optimize_baseline.json'}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("adaptive_inv.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptive-inv",
        description="Inventory policy simulation: static (s,S) baseline vs Bayesian-adaptive re-optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="path to a key=value config file")
        p.add_argument("--seed", type=int, help="master seed (overrides env and config)")
        p.add_argument("--out", help="output directory (default per config)")
        p.add_argument("--url", help="base URL of a running service; default runs in-process")
        p.add_argument("--mode", help="optimizer sampling mode: posterior | point")

    run_p = sub.add_parser("run", help="single replication; writes trace CSV + summary JSON")
    common(run_p)
    run_p.add_argument("--scenario", help="stationary | demand-shock | supply-disruption | custom")
    run_p.add_argument("--policy", default="static", help="static | adaptive")
    run_p.add_argument("--replication", type=int, default=0, help="replication id for stream derivation")
    run_p.set_defaults(func=cmd_run)

    cmp_p = sub.add_parser("compare", help="paired experiments; writes comparison CSV + JSON")
    common(cmp_p)
    cmp_p.add_argument("--scenario", help="comma-separated scenario list (default: all three)")
    cmp_p.add_argument("--reps", type=int, help="replications per experiment")
    cmp_p.add_argument("--robustness", help="comma-separated shock magnitudes, e.g. 15,20,25")
    cmp_p.add_argument("--sensitivity", action="store_true", help="append the sensitivity sweep")
    cmp_p.set_defaults(func=cmd_compare)

    plot_p = sub.add_parser("plotdata", help="tidy data series from trace files")
    common(plot_p)
    plot_p.add_argument("--kind", required=True, help=" | ".join(PLOT_KINDS))
    plot_p.add_argument("traces", nargs="+", help="trace CSV files")
    plot_p.set_defaults(func=cmd_plotdata)

    opt_p = sub.add_parser(
        "optimize-baseline",
        help="re-derive the static (s,S) from concentrated long-run parameters",
    )
    common(opt_p)
    opt_p.set_defaults(func=cmd_optimize_baseline)

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
