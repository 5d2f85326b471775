"""Figure builders for kiosksim CSV outputs.

Five figure kinds, each a pure view of the pinned CSV schemas: per-cell
panels and averaged curves for the margin ratio and the buyer ratio, plus
the break-even frontier.  Rendering is deterministic: fixed styling, no
timestamps in image content, identical CSVs produce identical bytes.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

__all__ = ["KINDS", "FigureError", "FigureSpec", "build_figure", "render"]

KINDS = (
    "margin_loss_panels",
    "margin_loss_averaged",
    "customer_increase_panels",
    "customer_increase_averaged",
    "profitability_frontier",
)

DEFAULT_PI_SLICES = (0.1, 0.36, 0.7)

_TOL = 1e-9


class FigureError(ValueError):
    """Input data cannot back the requested figure."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: figure kind, input CSV path(s), output image path."""

    kind: str
    inputs: tuple[Path, ...]
    out: Path
    pi_slices: tuple[float, ...] = DEFAULT_PI_SLICES
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FigureError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise FigureError("at least one --in path is required")

    @property
    def single_input(self) -> Path:
        return self.inputs[0]


# ---------------------------------------------------------------------------
# CSV access


def _read_table(path: Path, required: tuple[str, ...]) -> dict[str, list[str]]:
    if not path.exists():
        raise FigureError(f"input file not found: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FigureError(f"{path.name}: file is empty") from None
        missing = [column for column in required if column not in header]
        if missing:
            raise FigureError(f"{path.name}: missing column {missing[0]!r}")
        rows = list(reader)
    if not rows:
        raise FigureError(f"{path.name}: no data rows")
    table: dict[str, list[str]] = {column: [] for column in header}
    for row in rows:
        if len(row) != len(header):
            raise FigureError(f"{path.name}: ragged row with {len(row)} fields")
        for column, value in zip(header, row):
            table[column].append(value)
    return table


def _floats(table: dict[str, list[str]], column: str, path: Path) -> np.ndarray:
    try:
        return np.asarray([float(v) for v in table[column]])
    except ValueError as exc:
        raise FigureError(f"{path.name}: column {column!r}: {exc}") from None


def _optional_floats(table: dict[str, list[str]], column: str) -> np.ndarray:
    return np.asarray([float(v) if v != "" else np.nan for v in table[column]])


@dataclass
class _Sweep:
    u: np.ndarray
    pi: np.ndarray
    d: np.ndarray
    m: np.ndarray
    values: np.ndarray
    path: Path = field(repr=False)

    def slice_value(self, pi: float, m: float, u: float) -> tuple[np.ndarray, np.ndarray]:
        mask = (
            (np.abs(self.pi - pi) <= _TOL)
            & (np.abs(self.m - m) <= _TOL)
            & (np.abs(self.u - u) <= _TOL)
        )
        if not mask.any():
            raise FigureError(
                f"{self.path.name}: no rows at pi={pi}, m={m} (is the slice on the grid?)"
            )
        order = np.argsort(self.d[mask])
        return self.d[mask][order], self.values[mask][order]


def _load_sweep(path: Path, metric_column: str) -> _Sweep:
    table = _read_table(path, ("u", "pi", "d", "m", metric_column))
    return _Sweep(
        u=_floats(table, "u", path),
        pi=_floats(table, "pi", path),
        d=_floats(table, "d", path),
        m=_floats(table, "m", path),
        values=_floats(table, metric_column, path),
        path=path,
    )


def _unique_sorted(values: np.ndarray) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > _TOL:
            out.append(float(v))
    return out


# ---------------------------------------------------------------------------
# figure builders


def _margin_loss_panels(spec: FigureSpec) -> Figure:
    sweep = _load_sweep(spec.single_input, "r_margin_analytic")
    margins = _unique_sorted(sweep.m)
    u0 = _unique_sorted(sweep.u)[0]
    slices = spec.pi_slices
    fig, axes = plt.subplots(
        len(margins),
        len(slices),
        figsize=(3.1 * len(slices), 2.5 * len(margins)),
        sharex=True,
        sharey="row",
        squeeze=False,
    )
    for row, margin in enumerate(margins):
        for col, pi in enumerate(slices):
            ax = axes[row][col]
            d, values = sweep.slice_value(pi, margin, u0)
            ax.plot(d, values, color="tab:red", lw=1.6)
            ax.axhline(1.0, color="grey", lw=0.8, ls="--")
            ax.axhline(0.0, color="grey", lw=0.8, ls=":")
            if row == 0:
                ax.set_title(f"intention {pi:g}", fontsize=10)
            if row == len(margins) - 1:
                ax.set_xlabel("discount fraction")
            if col == 0:
                ax.set_ylabel(f"margin {margin:g}\nmargin ratio vs baseline")
    fig.suptitle("Margin ratio per display user (1 = break-even, < 0 absolute loss)")
    fig.tight_layout(rect=(0, 0, 1, 0.95))
    return fig


def _customer_increase_panels(spec: FigureSpec) -> Figure:
    sweep = _load_sweep(spec.single_input, "r_customers_analytic")
    u0 = _unique_sorted(sweep.u)[0]
    m0 = _unique_sorted(sweep.m)[0]  # buyer ratio is margin-independent
    slices = spec.pi_slices
    fig, axes = plt.subplots(
        1, len(slices), figsize=(3.1 * len(slices), 2.8), sharey=True, squeeze=False
    )
    for col, pi in enumerate(slices):
        ax = axes[0][col]
        d, values = sweep.slice_value(pi, m0, u0)
        ax.plot(d, values, color="tab:blue", lw=1.6)
        ax.axhline(1.0, color="grey", lw=0.8, ls="--")
        ax.set_title(f"intention {pi:g}", fontsize=10)
        ax.set_xlabel("discount fraction")
    axes[0][0].set_ylabel("buyer ratio vs baseline")
    fig.suptitle("Relative increase in buyers per display user")
    fig.tight_layout(rect=(0, 0, 1, 0.93))
    return fig


def _margin_loss_averaged(spec: FigureSpec) -> Figure:
    directory = spec.single_input
    if not directory.is_dir():
        raise FigureError(
            f"margin_loss_averaged expects the report directory, got {directory}"
        )
    panels = (("by_discount", "d", "discount fraction"), ("by_intention", "pi", "initial intention"))
    fig, axes = plt.subplots(1, 2, figsize=(8.4, 3.2), squeeze=False)
    for ax, (axis, column, xlabel) in zip(axes[0], panels):
        paths = sorted(directory.glob(f"r_margin_{axis}_m*.csv"))
        if not paths:
            raise FigureError(
                f"{directory}: no r_margin_{axis}_m*.csv files (run `kiosksim report` first)"
            )
        for path in paths:
            table = _read_table(path, (column, "mean_r_margin"))
            x = _floats(table, column, path)
            y = _floats(table, "mean_r_margin", path)
            margin_label = path.stem.rsplit("_m", 1)[1]
            ax.plot(x, y, lw=1.6, label=f"margin {margin_label}")
        ax.axhline(1.0, color="grey", lw=0.8, ls="--")
        ax.set_xlabel(xlabel)
        ax.set_ylabel("mean margin ratio")
        ax.legend(fontsize=8)
    fig.suptitle("Averaged margin ratio (mean over the other axis)")
    fig.tight_layout(rect=(0, 0, 1, 0.93))
    return fig


def _customer_increase_averaged(spec: FigureSpec) -> Figure:
    sweep = _load_sweep(spec.single_input, "r_customers_analytic")
    # buyer ratio depends only on (pi, d); average out u and margin
    groups: dict[tuple[float, float], list[float]] = {}
    for pi, d, value in zip(sweep.pi, sweep.d, sweep.values):
        groups.setdefault((round(float(pi), 9), round(float(d), 9)), []).append(float(value))
    mean = {key: math.fsum(values) / len(values) for key, values in groups.items()}
    pis = _unique_sorted(np.asarray([k[0] for k in mean]))
    ds = _unique_sorted(np.asarray([k[1] for k in mean]))

    fig, axes = plt.subplots(1, 2, figsize=(8.8, 3.4), squeeze=False)
    cmap = plt.get_cmap("viridis")

    ax = axes[0][0]
    for i, pi in enumerate(pis):
        color = cmap(i / max(1, len(pis) - 1))
        ax.plot(ds, [mean[(pi, d)] for d in ds], color=color, lw=1.0)
    ax.set_xlabel("discount fraction")
    ax.set_ylabel("buyer ratio vs baseline")
    ax.set_title("one line per intention (dark = hesitant)", fontsize=9)

    ax = axes[0][1]
    for i, d in enumerate(ds):
        color = cmap(i / max(1, len(ds) - 1))
        ax.plot(pis, [mean[(pi, d)] for pi in pis], color=color, lw=1.0)
    ax.set_xlabel("initial intention")
    ax.set_title("one line per discount (bright = deep)", fontsize=9)

    fig.suptitle("Relative buyer increase, averaged over usage share and margins")
    fig.tight_layout(rect=(0, 0, 1, 0.92))
    return fig


def _profitability_frontier(spec: FigureSpec) -> Figure:
    path = spec.single_input
    table = _read_table(path, ("margin", "pi", "interval_lo", "interval_hi"))
    margin = _floats(table, "margin", path)
    pi = _floats(table, "pi", path)
    lo = _optional_floats(table, "interval_lo")
    hi = _optional_floats(table, "interval_hi")

    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    colors = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple")
    for i, m in enumerate(_unique_sorted(margin)):
        mask = np.abs(margin - m) <= _TOL
        pis = _unique_sorted(pi[mask])
        upper = []
        lower = []
        for p in pis:
            rows = mask & (np.abs(pi - p) <= _TOL)
            his = hi[rows]
            los = lo[rows]
            upper.append(np.nanmax(his) if not np.all(np.isnan(his)) else np.nan)
            lower.append(np.nanmin(los) if not np.all(np.isnan(los)) else np.nan)
        upper_arr = np.asarray(upper)
        lower_arr = np.asarray(lower)
        color = colors[i % len(colors)]
        empty = bool(np.all(np.isnan(upper_arr)))
        label = f"margin {m:g}" + (" (never profitable)" if empty else "")
        ax.plot(pis, upper_arr, color=color, lw=1.8, label=label)
        if not empty:
            ax.fill_between(
                pis, lower_arr, upper_arr, where=~np.isnan(upper_arr), color=color, alpha=0.15
            )
    ax.set_xlabel("initial purchase intention")
    ax.set_ylabel("discount fraction")
    ax.set_title("Break-even frontier: shaded discounts keep the margin ratio above 1")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


_BUILDERS = {
    "margin_loss_panels": _margin_loss_panels,
    "margin_loss_averaged": _margin_loss_averaged,
    "customer_increase_panels": _customer_increase_panels,
    "customer_increase_averaged": _customer_increase_averaged,
    "profitability_frontier": _profitability_frontier,
}


def build_figure(spec: FigureSpec) -> Figure:
    """Build the matplotlib figure for a spec without writing it."""
    return _BUILDERS[spec.kind](spec)


def render(spec: FigureSpec) -> Path:
    """Render the figure to ``spec.out``; the write is all-or-nothing."""
    fig = build_figure(spec)
    try:
        metadata = {}
        suffix = spec.out.suffix.lower()
        if suffix == ".png":
            metadata = {"Software": "render_figures"}
        elif suffix == ".svg":
            metadata = {"Date": None}
        spec.out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.out, dpi=spec.dpi, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.out
