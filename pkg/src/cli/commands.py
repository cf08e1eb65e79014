from __future__ import annotations

import argparse
import time
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from src.asymptotics import (
    LimitSpec,
    huber_centering,
    norming,
    order_stat_limit_cdf,
    phi_xn_asymptotic,
    predicted_lambda,
    predicted_pair_cov,
    rate_envelope,
)
from src.asymptotics.norming import MIN_PLAYERS_ENVELOPE
from src.engine import (
    EXCEEDANCE_COLUMNS,
    EXCEEDANCE_SCHEMA,
    EngineConfig,
    ExceedanceReport,
    exact_sweep,
    exceedance_reports,
)
from src.engine.exact import MIN_PAIR_PLAYERS
from src.logger import get_logger
from src.oracle import OracleConfig
from src.simulator import (
    ORDER_STAT_COLUMNS,
    ORDER_STAT_SCHEMA,
    W_COLUMNS,
    W_SCHEMA,
    SimConfig,
    SimulatorConfig,
    run_experiment,
)

from .exceptions import UsageError, VerificationFailed
from .grids import parse_n_grid, parse_t_grid
from .inputs import load_json_object, load_model, model_from_data
from .manifest import RunManifest
from .reporting import render
from .verify import run_suite
from .writers import OutputFormat, write_json, write_sidecar, write_table

_logger = get_logger()

BOUNDS_SCHEMA = "bounds_report/v1"
BOUNDS_COLUMNS: List[str] = [
    "model_id",
    "n",
    "t",
    "lambda_n",
    "stein_bound",
    "mean_mismatch_bound",
    "combined_bound",
    "rate_envelope",
    "ratio",
]
LIMITS_SCHEMA = "limits_table/v1"
LIMITS_COLUMNS: List[str] = [
    "n",
    "t",
    "a_n",
    "b_n",
    "x_n",
    "predicted_lambda",
    "predicted_pair_cov",
    "rate_envelope",
    "huber_centering",
    "phi_xn",
]
VERIFY_SCHEMA = "verification_report/v1"


class CommandName(str, Enum):
    """Subcommands of the command-line tool."""

    EXACT = "exact"
    BOUNDS = "bounds"
    SIMULATE = "simulate"
    VERIFY = "verify"
    LIMITS = "limits"


def _grid_players(spec: str, minimum: int) -> List[int]:
    ns = parse_n_grid(spec)
    too_small = [n for n in ns if n < minimum]
    if too_small:
        raise UsageError(f"every n must be at least {minimum}, got {too_small}")
    return ns


def _envelope(n: int) -> Optional[float]:
    return rate_envelope(n) if n >= MIN_PLAYERS_ENVELOPE else None


def _finish(manifest: RunManifest, began: float, *outputs: Path) -> None:
    finished = manifest.finish(time.perf_counter() - began)
    for output in outputs:
        write_sidecar(output, finished)


def _sweep(args: argparse.Namespace, subcommand: CommandName):
    model = load_model(args.model)
    ns = _grid_players(args.n, MIN_PAIR_PLAYERS)
    ts = parse_t_grid(args.t)
    manifest = RunManifest.start(
        subcommand.value,
        {"model": model.model_dump(mode="json"), "n_grid": ns, "t_grid": ts},
        runtime={"workers": args.workers, "out": str(args.out), "format": args.format},
    )
    reports = exact_sweep(model, ns, ts, workers=args.workers, config=EngineConfig.from_env())
    return model, reports, manifest


def cmd_exact(args: argparse.Namespace) -> int:
    began = time.perf_counter()
    model, reports, manifest = _sweep(args, CommandName.EXACT)
    rows = [report.row() for report in reports]
    out = write_table(
        Path(args.out), OutputFormat(args.format), EXCEEDANCE_SCHEMA, EXCEEDANCE_COLUMNS, rows, manifest
    )
    _finish(manifest, began, out)
    print(render("exact.txt.j2", {"model_id": model.name, "rows": rows}))
    return 0


def bounds_row(report: ExceedanceReport) -> Dict[str, Any]:
    envelope = _envelope(report.n)
    return {
        "model_id": report.model_id,
        "n": report.n,
        "t": report.t,
        "lambda_n": report.lambda_n,
        "stein_bound": report.stein_bound,
        "mean_mismatch_bound": report.mean_mismatch_bound,
        "combined_bound": report.combined_bound,
        "rate_envelope": envelope,
        "ratio": report.combined_bound / envelope if envelope else None,
    }


def cmd_bounds(args: argparse.Namespace) -> int:
    began = time.perf_counter()
    model, reports, manifest = _sweep(args, CommandName.BOUNDS)
    rows = [bounds_row(report) for report in reports]
    out = write_table(
        Path(args.out), OutputFormat(args.format), BOUNDS_SCHEMA, BOUNDS_COLUMNS, rows, manifest
    )
    _finish(manifest, began, out)
    print(render("bounds.txt.j2", {"model_id": model.name, "rows": rows}))
    return 0


def resolve_sim_config(args: argparse.Namespace) -> SimConfig:
    """Merge the config file with flag overrides; flags win.

    TOURNAMENT_BATCH_SIZE fills `batch_size` when neither sets it.
    """
    data: Dict[str, Any] = load_json_object(args.config) if args.config else {}
    if args.model is not None:
        data["model"] = args.model
    if isinstance(data.get("model"), str):
        data["model"] = load_model(data["model"])
    elif isinstance(data.get("model"), dict):
        data["model"] = model_from_data(data["model"])
    overrides = {
        "n": args.n,
        "t_grid": parse_t_grid(args.t) if args.t is not None else None,
        "j_max": args.j,
        "replicates": args.replicates,
        "seed": args.seed,
        "workers": args.workers,
        "batch_size": args.batch_size,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    if "batch_size" not in data:
        from_env = SimulatorConfig.batch_size_from_env()
        if from_env is not None:
            data["batch_size"] = from_env
    return SimConfig.parse(data)


def cmd_simulate(args: argparse.Namespace) -> int:
    began = time.perf_counter()
    cfg = resolve_sim_config(args)
    base = Path(args.out)
    manifest = RunManifest.start(
        CommandName.SIMULATE.value,
        cfg.deterministic_part() | {"with_exact": args.with_exact},
        runtime={"workers": cfg.workers, "out": str(base)},
    )
    refs = None
    if args.with_exact and cfg.n >= MIN_PAIR_PLAYERS:
        refs = exceedance_reports(cfg.model, cfg.n, cfg.t_grid, EngineConfig.from_env())
    report = run_experiment(cfg, exact_refs=refs, settings=SimulatorConfig.from_env())

    json_path = base.with_name(base.name + ".json")
    w_path = base.with_name(base.name + ".csv")
    order_path = base.with_name(base.name + ".order_stats.csv")
    write_json(json_path, report.deterministic_dump(), manifest)
    write_table(w_path, OutputFormat.CSV, W_SCHEMA, W_COLUMNS, report.w_rows(), manifest)
    write_table(
        order_path, OutputFormat.CSV, ORDER_STAT_SCHEMA, ORDER_STAT_COLUMNS, report.order_stat_rows(), manifest
    )
    _finish(manifest, began, json_path)
    _logger.info(
        f"Simulation done in {report.wall_time:.2f}s; unique winner fraction "
        f"{report.unique_winner_fraction:.4f}"
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    began = time.perf_counter()
    oracle_config = OracleConfig.from_env()
    budget = args.budget if args.budget is not None else oracle_config.term_budget
    manifest = RunManifest.start(
        CommandName.VERIFY.value, {"budget": budget}, runtime={"workers": args.workers}
    )
    report = run_suite(
        budget,
        workers=args.workers,
        engine_config=EngineConfig.from_env(),
        oracle_config=oracle_config,
    )
    failed = [check.name for check in report.failed()]
    print(
        render(
            "verify.txt.j2",
            {"checks": report.checks, "budget": budget, "failed": failed},
        )
    )
    if args.out:
        out = Path(args.out)
        write_json(out, {"schema": VERIFY_SCHEMA, **report.model_dump(mode="json")}, manifest)
        _finish(manifest, began, out)
    if failed:
        raise VerificationFailed(failed)
    return 0


def limits_rows(ns: List[int], ts: List[float], j_max: int) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for n in ns:
        constants = norming(n)
        for t in ts:
            row: Dict[str, Any] = {
                "n": n,
                "t": t,
                "a_n": constants.a_n,
                "b_n": constants.b_n,
                "x_n": constants.x(t),
                "predicted_lambda": predicted_lambda(t),
                "predicted_pair_cov": predicted_pair_cov(n, t),
                "rate_envelope": _envelope(n),
                "huber_centering": huber_centering(n),
                "phi_xn": phi_xn_asymptotic(n, t),
            }
            for j in range(j_max + 1):
                row[f"limit_cdf_j{j}"] = order_stat_limit_cdf(LimitSpec(t=t, j=j))
            rows.append(row)
    return rows


def cmd_limits(args: argparse.Namespace) -> int:
    began = time.perf_counter()
    ns = _grid_players(args.n, 3)
    ts = parse_t_grid(args.t)
    j_max = args.j if args.j is not None else 0
    if j_max < 0:
        raise UsageError(f"--j must be nonnegative, got {j_max}")
    rows = limits_rows(ns, ts, j_max)
    columns = LIMITS_COLUMNS + [f"limit_cdf_j{j}" for j in range(j_max + 1)]
    print(render("limits.txt.j2", {"rows": rows}))
    if args.out:
        manifest = RunManifest.start(
            CommandName.LIMITS.value,
            {"n_grid": ns, "t_grid": ts, "j_max": j_max},
            runtime={"out": str(args.out), "format": args.format},
        )
        out = write_table(Path(args.out), OutputFormat(args.format), LIMITS_SCHEMA, columns, rows, manifest)
        _finish(manifest, began, out)
    return 0


COMMANDS: Dict[CommandName, Callable[[argparse.Namespace], int]] = {
    CommandName.EXACT: cmd_exact,
    CommandName.BOUNDS: cmd_bounds,
    CommandName.SIMULATE: cmd_simulate,
    CommandName.VERIFY: cmd_verify,
    CommandName.LIMITS: cmd_limits,
}


def dispatch(args: argparse.Namespace) -> int:
    return COMMANDS[CommandName(args.command)](args)
