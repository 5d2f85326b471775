"""Aggregation of sweep results into reporting views.

Per-margin averaged curves over the discount or intention axis, empirical
break-even frontiers read off the swept grid, and a run-level summary with
headline extrema.  All operations are pure transformations over immutable
result sequences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .engine import CellResult
from .errors import DomainError, IncompleteGridError

__all__ = [
    "METRICS",
    "AXES",
    "AggregateCurve",
    "BreakEvenCurve",
    "aggregate",
    "empirical_breakeven",
    "summary",
]

METRICS = ("r_margin", "r_customers")
AXES = ("by_discount", "by_intention")

_MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class AggregateCurve:
    """Mean metric per retained axis value, for one margin.

    ``points`` are ordered ascending by axis value.  The mean at each point
    is taken over every cell sharing that axis value and margin, i.e. over
    the full grid of the averaged-out axis and all display-usage shares
    (the latter is a no-op for analytic metrics, which do not depend on u).
    """

    metric: str
    axis: str
    margin: float
    points: tuple[tuple[float, float], ...]
    uses_mc: bool = False


@dataclass(frozen=True)
class BreakEvenCurve:
    """Per-margin map from intention to profitable discount intervals."""

    margin: float
    points: tuple[tuple[float, tuple[tuple[float, float], ...]], ...]
    method: str  # "analytic" or "empirical"


def _margin_slice(results: Sequence[CellResult], margin: float) -> list[CellResult]:
    cells = [r for r in results if abs(r.cell.m - margin) <= _MARGIN_TOL]
    if not cells:
        raise IncompleteGridError(f"no cells found for margin {margin}")
    return cells


def _check_rectangular(cells: list[CellResult], margin: float) -> tuple[list, list, list]:
    us = sorted({r.cell.u for r in cells})
    pis = sorted({r.cell.pi for r in cells})
    ds = sorted({r.cell.d for r in cells})
    seen = {(r.cell.u, r.cell.pi, r.cell.d) for r in cells}
    missing = [
        (u, pi, d)
        for u in us
        for pi in pis
        for d in ds
        if (u, pi, d) not in seen
    ]
    if missing:
        shown = ", ".join(f"(u={u}, pi={pi}, d={d})" for u, pi, d in missing[:10])
        more = f" and {len(missing) - 10} more" if len(missing) > 10 else ""
        raise IncompleteGridError(
            f"margin {margin}: grid is missing {len(missing)} cells: {shown}{more}"
        )
    return us, pis, ds


def _metric_value(result: CellResult, metric: str, use_mc: bool) -> float | None:
    if use_mc:
        return result.r_margin_mc if metric == "r_margin" else result.r_customers_mc
    return (
        result.analytic.r_margin if metric == "r_margin" else result.analytic.r_customers
    )


def aggregate(
    results: Sequence[CellResult],
    metric: str,
    axis: str,
    margin: float,
    use_mc: bool = False,
) -> AggregateCurve:
    """Average one relative metric over the non-retained axis.

    ``by_discount`` retains the discount axis and averages over the
    intention grid; ``by_intention`` does the opposite.  Analytic metrics
    are the default source (noise-free); ``use_mc`` switches to the Monte
    Carlo estimates, whose occasional missing values are excluded from the
    mean.  Requires a full rectangular grid for the margin.
    """
    if metric not in METRICS:
        raise DomainError(f"metric must be one of {METRICS}, got {metric!r}")
    if axis not in AXES:
        raise DomainError(f"axis must be one of {AXES}, got {axis!r}")
    cells = _margin_slice(results, margin)
    _check_rectangular(cells, margin)

    groups: dict[float, list[float]] = {}
    for r in cells:
        key = r.cell.d if axis == "by_discount" else r.cell.pi
        value = _metric_value(r, metric, use_mc)
        if value is not None:
            groups.setdefault(key, []).append(value)
    points = tuple(
        (key, math.fsum(vals) / len(vals)) for key, vals in sorted(groups.items())
    )
    return AggregateCurve(metric=metric, axis=axis, margin=margin, points=points, uses_mc=use_mc)


def _crossing_intervals(
    ds: Sequence[float], ratios: Sequence[float]
) -> tuple[tuple[float, float], ...]:
    # Maximal intervals where ratio > 1, crossings linearly interpolated.
    intervals = []
    open_lo = ds[0] if ratios[0] > 1.0 else None
    for i in range(len(ds) - 1):
        f0, f1 = ratios[i] - 1.0, ratios[i + 1] - 1.0
        if (f0 > 0.0) == (f1 > 0.0):
            continue
        crossing = ds[i] + (ds[i + 1] - ds[i]) * (0.0 - f0) / (f1 - f0)
        if open_lo is None:
            open_lo = crossing
        else:
            intervals.append((open_lo, crossing))
            open_lo = None
    if open_lo is not None:
        intervals.append((open_lo, ds[-1]))
    return tuple(intervals)


def empirical_breakeven(results: Sequence[CellResult], margin: float) -> BreakEvenCurve:
    """Break-even intervals read off the swept grid, per intention value.

    Scans the analytic margin ratio along the discount grid for sign
    changes around 1 and interpolates the crossings linearly, so endpoints
    are accurate to one grid step.  Values are identical across
    display-usage shares; the lowest one in the grid is used.
    """
    cells = _margin_slice(results, margin)
    us, pis, ds = _check_rectangular(cells, margin)
    u0 = us[0]
    by_pi: dict[float, dict[float, float]] = {pi: {} for pi in pis}
    for r in cells:
        if r.cell.u == u0:
            by_pi[r.cell.pi][r.cell.d] = r.analytic.r_margin
    points = []
    for pi in pis:
        series = by_pi[pi]
        ratios = [series[d] for d in ds]
        points.append((pi, _crossing_intervals(ds, ratios)))
    return BreakEvenCurve(margin=margin, points=tuple(points), method="empirical")


def summary(results: Sequence[CellResult]) -> dict:
    """Run-level summary: scenario totals plus extrema of each ratio.

    Extrema carry their cell coordinates; ties go to the lowest cell index
    (results are scanned in index order with strict comparisons).  Cells
    with missing MC ratios are skipped for the MC extrema.
    """
    if not results:
        raise DomainError("results must be non-empty")
    ordered = sorted(results, key=lambda r: r.cell_index)

    totals = {
        "cells": len(ordered),
        "customers": sum(r.customers for r in ordered),
        "display_users": sum(r.display_users for r in ordered),
        "buyers_baseline": sum(r.buyers_baseline for r in ordered),
        "buyers_display_scenario": sum(r.buyers_display_scenario for r in ordered),
        "margin_sum_baseline": math.fsum(r.margin_sum_baseline for r in ordered),
        "margin_sum_display_scenario": math.fsum(
            r.margin_sum_display_scenario for r in ordered
        ),
        "turnover_baseline": math.fsum(r.turnover_baseline for r in ordered),
        "turnover_display_scenario": math.fsum(
            r.turnover_display_scenario for r in ordered
        ),
    }

    def extremum(values: list[tuple[float, CellResult]], want_max: bool) -> dict | None:
        if not values:
            return None
        best_value, best_cell = values[0]
        for value, cell in values[1:]:
            if (value > best_value) if want_max else (value < best_value):
                best_value, best_cell = value, cell
        return {
            "value": best_value,
            "cell_index": best_cell.cell_index,
            "u": best_cell.cell.u,
            "pi": best_cell.cell.pi,
            "d": best_cell.cell.d,
            "m": best_cell.cell.m,
        }

    extrema = {}
    for name, getter in (
        ("r_customers_analytic", lambda r: r.analytic.r_customers),
        ("r_margin_analytic", lambda r: r.analytic.r_margin),
        ("r_customers_mc", lambda r: r.r_customers_mc),
        ("r_margin_mc", lambda r: r.r_margin_mc),
    ):
        values = [(v, r) for r in ordered if (v := getter(r)) is not None]
        extrema[name] = {
            "max": extremum(values, want_max=True),
            "min": extremum(values, want_max=False),
        }

    return {"totals": totals, "extrema": extrema}
