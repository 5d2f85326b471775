"""Command-line interface: sweep orchestration and report emission.

Four subcommands: ``sweep`` runs the full grid and writes sweep.csv,
summary.json and manifest.json; ``cell`` probes a single cell and prints
it as JSON; ``breakeven`` writes profit-preserving discount intervals;
``report`` turns a sweep.csv into averaged per-margin curves.

All numeric CSV fields use Python's shortest round-trip representation,
so re-parsing a file reproduces the exact float values.  Exit codes:
0 success, 2 invalid configuration or flags, 3 I/O failure, 4 sweep
finished with per-cell failures (listed in the manifest).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import AXES, METRICS, BreakEvenCurve, aggregate, empirical_breakeven, summary
from .engine import (
    CellParams,
    CellResult,
    GridAxis,
    ModelConfig,
    SweepGrid,
    run_sweep,
    simulate_cell,
)
from .errors import ConfigError, DomainError, IncompleteGridError, KioskSimError
from .model import (
    AnalyticMetrics,
    Category,
    CategoryCatalog,
    DiscountLaw,
    IntentionUpdateRule,
    MarginAccounting,
    breakeven,
    default_catalog,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_PARTIAL = 4

PARALLELISM_ENV = "KIOSKSIM_PARALLELISM"

SWEEP_COLUMNS = (
    "cell_index",
    "u",
    "pi",
    "d",
    "m",
    "customers",
    "display_users",
    "buyers_baseline",
    "buyers_display_scenario",
    "buyers_among_display_users",
    "counterfactual_buyers_among_display_users",
    "margin_sum_baseline",
    "margin_sum_display_scenario",
    "turnover_baseline",
    "turnover_display_scenario",
    "r_customers_mc",
    "r_margin_mc",
    "pii",
    "pi_eff",
    "r_customers_analytic",
    "r_margin_analytic",
    "clamp_active",
    "seed",
)

BREAKEVEN_COLUMNS = ("margin", "pi", "interval_lo", "interval_hi")


# ---------------------------------------------------------------------------
# configuration documents


def config_to_dict(config: ModelConfig, grid: SweepGrid) -> dict:
    """Round-trippable snapshot: feeding it back reproduces the run."""
    return {
        "law": {"slope": config.law.slope, "intercept": config.law.intercept},
        "rule": config.rule.value,
        "accounting": config.accounting.value,
        "catalog": [
            {"name": c.name, "weight": c.weight, "mean": c.price_mean, "std": c.price_std}
            for c in config.catalog.categories
        ],
        "grid": {
            "u": {"start": grid.u.start, "stop": grid.u.stop, "step": grid.u.step},
            "pi": {"start": grid.pi.start, "stop": grid.pi.stop, "step": grid.pi.step},
            "d": {"start": grid.d.start, "stop": grid.d.stop, "step": grid.d.step},
            "margins": list(grid.margins),
        },
        "customers_per_cell": config.customers_per_cell,
        "master_seed": config.master_seed,
    }


def _expect_number(doc: dict, path: str, key: str) -> float:
    value = doc.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _parse_axis(doc, path: str) -> GridAxis:
    if not isinstance(doc, dict):
        raise ConfigError(path, f"expected an object with start/stop/step, got {doc!r}")
    unknown = set(doc) - {"start", "stop", "step"}
    if unknown:
        raise ConfigError(f"{path}.{sorted(unknown)[0]}", "unknown key")
    try:
        return GridAxis(
            start=_expect_number(doc, path, "start"),
            stop=_expect_number(doc, path, "stop"),
            step=_expect_number(doc, path, "step"),
        )
    except DomainError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_enum(enum_cls, value, path: str):
    try:
        return enum_cls(value)
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise ConfigError(path, f"must be one of: {choices}; got {value!r}") from None


def config_from_dict(doc: dict) -> tuple[ModelConfig, SweepGrid]:
    """Validate a configuration document; errors name the offending field."""
    if not isinstance(doc, dict):
        raise ConfigError("config", f"expected a JSON object, got {type(doc).__name__}")
    known = {
        "law",
        "rule",
        "accounting",
        "catalog",
        "grid",
        "customers_per_cell",
        "master_seed",
    }
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")

    law = DiscountLaw()
    if "law" in doc:
        law_doc = doc["law"]
        if not isinstance(law_doc, dict) or set(law_doc) - {"slope", "intercept"}:
            raise ConfigError("law", "expected an object with slope and intercept")
        try:
            law = DiscountLaw(
                slope=_expect_number(law_doc, "law", "slope")
                if "slope" in law_doc
                else 8.52,
                intercept=_expect_number(law_doc, "law", "intercept")
                if "intercept" in law_doc
                else -0.57,
            )
        except DomainError as exc:
            raise ConfigError("law", str(exc)) from exc

    rule = IntentionUpdateRule.MULTIPLICATIVE
    if "rule" in doc:
        rule = _parse_enum(IntentionUpdateRule, doc["rule"], "rule")
    accounting = MarginAccounting.DISCOUNT_ALL_DISPLAY_BUYERS
    if "accounting" in doc:
        accounting = _parse_enum(MarginAccounting, doc["accounting"], "accounting")

    catalog = default_catalog()
    if "catalog" in doc:
        entries = doc["catalog"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("catalog", "expected a non-empty list of categories")
        categories = []
        for i, entry in enumerate(entries):
            path = f"catalog[{i}]"
            if not isinstance(entry, dict) or set(entry) - {"name", "weight", "mean", "std"}:
                raise ConfigError(path, "expected an object with name/weight/mean/std")
            name = entry.get("name")
            if not isinstance(name, str):
                raise ConfigError(f"{path}.name", f"expected a string, got {name!r}")
            try:
                categories.append(
                    Category(
                        name=name,
                        weight=_expect_number(entry, path, "weight"),
                        price_mean=_expect_number(entry, path, "mean"),
                        price_std=_expect_number(entry, path, "std"),
                    )
                )
            except DomainError as exc:
                raise ConfigError(path, str(exc)) from exc
        catalog = CategoryCatalog(tuple(categories))

    grid = SweepGrid()
    if "grid" in doc:
        grid_doc = doc["grid"]
        if not isinstance(grid_doc, dict):
            raise ConfigError("grid", "expected an object")
        unknown = set(grid_doc) - {"u", "pi", "d", "margins"}
        if unknown:
            raise ConfigError(f"grid.{sorted(unknown)[0]}", "unknown key")
        axes = {}
        for axis_name in ("u", "pi", "d"):
            if axis_name in grid_doc:
                axes[axis_name] = _parse_axis(grid_doc[axis_name], f"grid.{axis_name}")
        margins = SweepGrid().margins
        if "margins" in grid_doc:
            raw = grid_doc["margins"]
            if (
                not isinstance(raw, list)
                or not raw
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
            ):
                raise ConfigError("grid.margins", "expected a non-empty list of numbers")
            margins = tuple(float(v) for v in raw)
        try:
            grid = SweepGrid(
                u=axes.get("u", SweepGrid().u),
                pi=axes.get("pi", SweepGrid().pi),
                d=axes.get("d", SweepGrid().d),
                margins=margins,
            )
        except DomainError as exc:
            raise ConfigError("grid", str(exc)) from exc

    customers = 1000
    if "customers_per_cell" in doc:
        value = doc["customers_per_cell"]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigError("customers_per_cell", f"expected an integer >= 1, got {value!r}")
        customers = value
    master_seed = 42
    if "master_seed" in doc:
        value = doc["master_seed"]
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError("master_seed", f"expected an integer, got {value!r}")
        master_seed = value

    config = ModelConfig(
        law=law,
        rule=rule,
        accounting=accounting,
        catalog=catalog,
        customers_per_cell=customers,
        master_seed=master_seed,
    )
    return config, grid


def load_config(
    path: str | None,
    *,
    seed: int | None = None,
    customers: int | None = None,
    rule: str | None = None,
    accounting: str | None = None,
) -> tuple[ModelConfig, SweepGrid]:
    """Load a config file (defaults when absent) and apply flag overrides."""
    doc: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            raise ConfigError("config", f"file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc}") from None
    if seed is not None:
        doc["master_seed"] = seed
    if customers is not None:
        doc["customers_per_cell"] = customers
    if rule is not None:
        doc["rule"] = rule
    if accounting is not None:
        doc["accounting"] = accounting
    return config_from_dict(doc)


# ---------------------------------------------------------------------------
# serialization helpers


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _result_row(result: CellResult) -> list[str]:
    a = result.analytic
    return [
        _fmt(v)
        for v in (
            result.cell_index,
            result.cell.u,
            result.cell.pi,
            result.cell.d,
            result.cell.m,
            result.customers,
            result.display_users,
            result.buyers_baseline,
            result.buyers_display_scenario,
            result.buyers_among_display_users,
            result.counterfactual_buyers_among_display_users,
            result.margin_sum_baseline,
            result.margin_sum_display_scenario,
            result.turnover_baseline,
            result.turnover_display_scenario,
            result.r_customers_mc,
            result.r_margin_mc,
            a.pii,
            a.pi_eff,
            a.r_customers,
            a.r_margin,
            a.clamp_active,
            result.seed,
        )
    ]


def write_sweep_csv(path: Path, results: Sequence[CellResult]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for result in results:
            writer.writerow(_result_row(result))


def _parse_optional_float(text: str) -> float | None:
    return None if text == "" else float(text)


def read_sweep_csv(path: Path) -> list[CellResult]:
    """Parse a sweep.csv back into results; errors name the bad row/column."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError("sweep.csv", "file is empty") from None
        if tuple(header) != SWEEP_COLUMNS:
            raise ConfigError(
                "sweep.csv", f"unexpected header {header!r}, expected {list(SWEEP_COLUMNS)!r}"
            )
        results = []
        for row_number, row in enumerate(reader, start=2):
            if len(row) != len(SWEEP_COLUMNS):
                raise ConfigError(
                    "sweep.csv",
                    f"row {row_number}: expected {len(SWEEP_COLUMNS)} fields, got {len(row)}",
                )
            record = dict(zip(SWEEP_COLUMNS, row))
            try:
                cell = CellParams(
                    u=float(record["u"]),
                    pi=float(record["pi"]),
                    d=float(record["d"]),
                    m=float(record["m"]),
                )
                analytic = AnalyticMetrics(
                    pii=float(record["pii"]),
                    pi_eff=float(record["pi_eff"]),
                    r_customers=float(record["r_customers_analytic"]),
                    r_margin=float(record["r_margin_analytic"]),
                    clamp_active=record["clamp_active"] == "true",
                )
                results.append(
                    CellResult(
                        cell=cell,
                        cell_index=int(record["cell_index"]),
                        customers=int(record["customers"]),
                        display_users=int(record["display_users"]),
                        buyers_baseline=int(record["buyers_baseline"]),
                        buyers_display_scenario=int(record["buyers_display_scenario"]),
                        buyers_among_display_users=int(record["buyers_among_display_users"]),
                        counterfactual_buyers_among_display_users=int(
                            record["counterfactual_buyers_among_display_users"]
                        ),
                        margin_sum_baseline=float(record["margin_sum_baseline"]),
                        margin_sum_display_scenario=float(
                            record["margin_sum_display_scenario"]
                        ),
                        turnover_baseline=float(record["turnover_baseline"]),
                        turnover_display_scenario=float(record["turnover_display_scenario"]),
                        r_customers_mc=_parse_optional_float(record["r_customers_mc"]),
                        r_margin_mc=_parse_optional_float(record["r_margin_mc"]),
                        analytic=analytic,
                        seed=int(record["seed"]),
                    )
                )
            except (ValueError, DomainError) as exc:
                raise ConfigError("sweep.csv", f"row {row_number}: {exc}") from None
    if not results:
        raise ConfigError("sweep.csv", "no data rows")
    return results


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _manifest(
    config: ModelConfig,
    grid: SweepGrid,
    out_dir: Path,
    output_names: Sequence[str],
    *,
    parallelism: int,
    started: str,
    finished: str,
    elapsed: float,
    failures,
) -> dict:
    return {
        "tool": {"name": "kiosksim", "version": __version__},
        "config": config_to_dict(config, grid),
        "parallelism": parallelism,
        "started_utc": started,
        "finished_utc": finished,
        "elapsed_seconds": elapsed,
        "outputs": [
            {
                "path": name,
                "bytes": (out_dir / name).stat().st_size,
                "sha256": _sha256(out_dir / name),
            }
            for name in output_names
        ],
        "failed_cells": [
            {"cell_index": f.cell_index, "message": f.message} for f in failures
        ],
    }


# ---------------------------------------------------------------------------
# subcommands


def _resolve_parallelism(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(PARALLELISM_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ConfigError(PARALLELISM_ENV, f"expected an integer, got {env!r}") from None
        if value < 1:
            raise ConfigError(PARALLELISM_ENV, f"must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def _progress_printer():
    if not sys.stderr.isatty():
        return None

    def show(done: int, total: int):
        print(f"\r{done}/{total} cells", end="", file=sys.stderr, flush=True)
        if done == total:
            print(file=sys.stderr)

    return show


def cmd_sweep(args) -> int:
    config, grid = load_config(
        args.config,
        seed=args.seed,
        customers=args.customers,
        rule=args.rule,
        accounting=args.accounting,
    )
    parallelism = _resolve_parallelism(args.parallelism)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    started = datetime.now(timezone.utc).isoformat()
    t0 = time.monotonic()
    results, failures = run_sweep(grid, config, parallelism, progress=_progress_printer())
    elapsed = time.monotonic() - t0
    finished = datetime.now(timezone.utc).isoformat()

    write_sweep_csv(out_dir / "sweep.csv", results)
    run_summary = {
        "rule": config.rule.value,
        "accounting": config.accounting.value,
        **summary(results),
    }
    _write_json(out_dir / "summary.json", run_summary)
    manifest = _manifest(
        config,
        grid,
        out_dir,
        ["sweep.csv", "summary.json"],
        parallelism=parallelism,
        started=started,
        finished=finished,
        elapsed=elapsed,
        failures=failures,
    )
    _write_json(out_dir / "manifest.json", manifest)
    if failures:
        print(f"{len(failures)} cells failed; see manifest.json", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_cell(args) -> int:
    config, _ = load_config(
        args.config,
        seed=args.seed,
        customers=args.customers,
        rule=args.rule,
        accounting=args.accounting,
    )
    cell = CellParams(u=args.u, pi=args.pi, d=args.d, m=args.m)
    result = simulate_cell(cell, config, args.cell_index)
    a = result.analytic
    payload = {
        "cell_index": result.cell_index,
        "seed": result.seed,
        "rule": config.rule.value,
        "accounting": config.accounting.value,
        "cell": {"u": cell.u, "pi": cell.pi, "d": cell.d, "m": cell.m},
        "customers": result.customers,
        "display_users": result.display_users,
        "buyers_baseline": result.buyers_baseline,
        "buyers_display_scenario": result.buyers_display_scenario,
        "buyers_among_display_users": result.buyers_among_display_users,
        "counterfactual_buyers_among_display_users": (
            result.counterfactual_buyers_among_display_users
        ),
        "margin_sum_baseline": result.margin_sum_baseline,
        "margin_sum_display_scenario": result.margin_sum_display_scenario,
        "turnover_baseline": result.turnover_baseline,
        "turnover_display_scenario": result.turnover_display_scenario,
        "mc": {"r_customers": result.r_customers_mc, "r_margin": result.r_margin_mc},
        "analytic": {
            "pii": a.pii,
            "pi_eff": a.pi_eff,
            "r_customers": a.r_customers,
            "r_margin": a.r_margin,
            "clamp_active": a.clamp_active,
        },
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _breakeven_rows_analytic(args, config: ModelConfig) -> list[tuple]:
    pi_axis = GridAxis(args.pi_start, args.pi_stop, args.pi_step)
    rows = []
    for margin in args.margins:
        for pi in pi_axis.values():
            intervals = breakeven(
                margin,
                pi,
                law=config.law,
                rule=config.rule,
                accounting=config.accounting,
                d_domain=(args.d_min, args.d_max),
            )
            if intervals:
                rows.extend((margin, pi, lo, hi) for lo, hi in intervals)
            else:
                rows.append((margin, pi, None, None))
    return rows


def _breakeven_rows_empirical(args) -> list[tuple]:
    if args.input is None:
        raise ConfigError("--in", "empirical method requires a sweep.csv input")
    results = read_sweep_csv(Path(args.input))
    rows = []
    for margin in args.margins:
        curve: BreakEvenCurve = empirical_breakeven(results, margin)
        for pi, intervals in curve.points:
            if intervals:
                rows.extend((margin, pi, lo, hi) for lo, hi in intervals)
            else:
                rows.append((margin, pi, None, None))
    return rows


def cmd_breakeven(args) -> int:
    config, grid = load_config(args.config, rule=args.rule, accounting=args.accounting)
    if args.margins is None:
        args.margins = list(grid.margins)
    if args.method == "analytic":
        rows = _breakeven_rows_analytic(args, config)
    else:
        rows = _breakeven_rows_empirical(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "breakeven.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BREAKEVEN_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    manifest = {
        "tool": {"name": "kiosksim", "version": __version__},
        "command": "breakeven",
        "method": args.method,
        "rule": config.rule.value,
        "accounting": config.accounting.value,
        "law": {"slope": config.law.slope, "intercept": config.law.intercept},
        "margins": list(args.margins),
        "d_domain": [args.d_min, args.d_max],
        "outputs": [
            {
                "path": "breakeven.csv",
                "bytes": path.stat().st_size,
                "sha256": _sha256(path),
            }
        ],
    }
    _write_json(out_dir / "manifest.json", manifest)
    return EXIT_OK


def _aggregate_filename(metric: str, axis: str, margin: float, use_mc: bool) -> str:
    suffix = "_mc" if use_mc else ""
    return f"{metric}_{axis}_m{margin!r}{suffix}.csv"


def cmd_report(args) -> int:
    results = read_sweep_csv(Path(args.input))
    margins = args.margins
    if margins is None:
        margins = sorted({r.cell.m for r in results})
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    axis_column = {"by_discount": "d", "by_intention": "pi"}
    written = []
    for metric in args.metrics:
        for axis in args.axes:
            for margin in margins:
                curve = aggregate(results, metric, axis, margin, use_mc=args.use_mc)
                name = _aggregate_filename(metric, axis, margin, args.use_mc)
                value_column = f"mean_{metric}" + ("_mc" if args.use_mc else "")
                with open(out_dir / name, "w", encoding="utf-8", newline="") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow([axis_column[axis], value_column])
                    for x, y in curve.points:
                        writer.writerow([_fmt(x), _fmt(y)])
                written.append(name)
    print("\n".join(written))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_config_flags(parser: argparse.ArgumentParser, *, customers: bool = True):
    parser.add_argument("--config", help="path to a JSON configuration file")
    parser.add_argument("--seed", type=int, help="override the master seed")
    if customers:
        parser.add_argument("--customers", type=int, help="override customers per cell")
    parser.add_argument(
        "--rule",
        choices=[e.value for e in IntentionUpdateRule],
        help="override the intention update rule",
    )
    parser.add_argument(
        "--accounting",
        choices=[e.value for e in MarginAccounting],
        help="override the margin accounting variant",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kiosksim",
        description="Monte Carlo and closed-form analysis of kiosk discount offers.",
    )
    parser.add_argument("--version", action="version", version=f"kiosksim {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="simulate the full parameter grid")
    _add_config_flags(sweep)
    sweep.add_argument("--out", required=True, help="output directory")
    sweep.add_argument("--parallelism", type=int, help="worker processes (default: env or CPU count)")
    sweep.set_defaults(func=cmd_sweep)

    cell = commands.add_parser("cell", help="probe a single cell and print JSON")
    _add_config_flags(cell)
    cell.add_argument("--u", type=float, required=True)
    cell.add_argument("--pi", type=float, required=True)
    cell.add_argument("--d", type=float, required=True)
    cell.add_argument("--m", type=float, required=True)
    cell.add_argument("--cell-index", type=int, default=0)
    cell.set_defaults(func=cmd_cell)

    be = commands.add_parser("breakeven", help="profit-preserving discount intervals")
    _add_config_flags(be, customers=False)
    be.add_argument("--out", required=True, help="output directory")
    be.add_argument("--margins", type=float, nargs="+", help="margins (default: grid margins)")
    be.add_argument("--pi-start", type=float, default=0.10)
    be.add_argument("--pi-stop", type=float, default=0.70)
    be.add_argument("--pi-step", type=float, default=0.02)
    be.add_argument("--d-min", type=float, default=0.0)
    be.add_argument("--d-max", type=float, default=0.7)
    be.add_argument("--method", choices=["analytic", "empirical"], default="analytic")
    be.add_argument("--in", dest="input", help="sweep.csv (required for --method empirical)")
    be.set_defaults(func=cmd_breakeven)

    report = commands.add_parser("report", help="averaged per-margin curves from a sweep.csv")
    report.add_argument("--in", dest="input", required=True, help="sweep.csv from `kiosksim sweep`")
    report.add_argument("--out", required=True, help="output directory")
    report.add_argument("--metrics", nargs="+", choices=list(METRICS), default=list(METRICS))
    report.add_argument("--axes", nargs="+", choices=list(AXES), default=list(AXES))
    report.add_argument("--margins", type=float, nargs="+", help="default: all margins present")
    report.add_argument(
        "--use-mc", action="store_true", help="aggregate Monte Carlo estimates instead of analytic"
    )
    report.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, IncompleteGridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KioskSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
