"""Per-cell Monte Carlo simulation and the deterministic grid sweep.

One cell simulates N customer visits under two scenarios that share every
random draw: a baseline kiosk without the interactive display, and a
display scenario in which display users are offered the discount.  A
single purchase uniform per customer decides buying in both scenarios
(common random numbers), which nests the buyer sets and removes
cross-scenario noise from the relative estimates.

Cells are embarrassingly parallel.  Each owns a stream derived from the
master seed and its cell index, so sweep output is a pure function of
(grid, config) regardless of the degree or the scheduling of parallelism.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DomainError
from .model import (
    DEFAULT_ACCOUNTING,
    DEFAULT_LAW,
    DEFAULT_RULE,
    AnalyticMetrics,
    CategoryCatalog,
    CellParams,
    DiscountLaw,
    IntentionUpdateRule,
    MarginAccounting,
    analytic_metrics,
    default_catalog,
    effective_intention,
)
from .sampling import RandomStream, bernoulli, derive_cell_seed, sample_category, sample_prices

__all__ = [
    "GridAxis",
    "SweepGrid",
    "ModelConfig",
    "CustomerBatch",
    "CustomerRecord",
    "CellResult",
    "CellFailure",
    "grid_cells",
    "simulate_customer",
    "simulate_customers",
    "simulate_cell",
    "run_sweep",
]


@dataclass(frozen=True, slots=True)
class GridAxis:
    """Inclusive arithmetic progression ``start, start + step, ..`` up to stop.

    The inclusive end carries a half-step tolerance, so decimal specs like
    (0.10, 0.70, 0.02) yield exactly 31 points despite float rounding.
    Values are rounded to 12 decimals to obtain the canonical doubles of
    the decimal grid (0.1 + 13 * 0.02 comes out as 0.36 exactly).
    """

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.step > 0.0:
            raise DomainError(f"step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise DomainError(f"start must be <= stop, got {self.start} > {self.stop}")

    def values(self) -> list[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 0.5)) + 1
        return [round(self.start + k * self.step, 12) for k in range(count)]


@dataclass(frozen=True, slots=True)
class SweepGrid:
    """Full parameter grid: three axes plus an explicit margin list."""

    u: GridAxis = GridAxis(0.10, 0.70, 0.02)
    pi: GridAxis = GridAxis(0.10, 0.70, 0.02)
    d: GridAxis = GridAxis(0.10, 0.70, 0.02)
    margins: tuple[float, ...] = (0.3, 0.4, 0.5)

    def __post_init__(self):
        object.__setattr__(self, "margins", tuple(self.margins))
        if len(self.margins) < 1:
            raise DomainError("margins must be non-empty")

    def cell_count(self) -> int:
        return (
            len(self.u.values())
            * len(self.pi.values())
            * len(self.d.values())
            * len(self.margins)
        )


@dataclass(frozen=True)
class ModelConfig:
    """Everything a sweep needs besides the grid itself."""

    law: DiscountLaw = DEFAULT_LAW
    rule: IntentionUpdateRule = DEFAULT_RULE
    accounting: MarginAccounting = DEFAULT_ACCOUNTING
    catalog: CategoryCatalog = field(default_factory=default_catalog)
    customers_per_cell: int = 1000
    master_seed: int = 42

    def __post_init__(self):
        if self.customers_per_cell < 1:
            raise DomainError(
                f"customers_per_cell must be >= 1, got {self.customers_per_cell}"
            )


@dataclass(frozen=True)
class CustomerBatch:
    """Per-customer draws and outcomes for one cell, as parallel arrays."""

    uses_display: np.ndarray
    category: np.ndarray
    price: np.ndarray
    q_buy: np.ndarray
    bought_baseline: np.ndarray
    bought_display_scenario: np.ndarray
    discounted: np.ndarray
    margin_baseline: np.ndarray
    margin_display_scenario: np.ndarray

    def __len__(self) -> int:
        return len(self.q_buy)


@dataclass(frozen=True, slots=True)
class CustomerRecord:
    """Scalar view of one simulated customer."""

    uses_display: bool
    category: int
    price: float
    q_buy: float
    bought_baseline: bool
    bought_display_scenario: bool
    discounted: bool
    margin_baseline: float
    margin_display_scenario: float


@dataclass(frozen=True, slots=True)
class CellResult:
    """Monte Carlo tallies and attached expected metrics for one cell.

    The counterfactual counts re-evaluate the same display users at their
    undiscounted intention using the same purchase uniforms, so as long as
    the uplift is non-negative the buyer sets nest:
    ``buyers_among_display_users >= counterfactual_buyers_among_display_users``.
    Relative MC metrics are None when the denominator tally is zero.
    """

    cell: CellParams
    cell_index: int
    customers: int
    display_users: int
    buyers_baseline: int
    buyers_display_scenario: int
    buyers_among_display_users: int
    counterfactual_buyers_among_display_users: int
    margin_sum_baseline: float
    margin_sum_display_scenario: float
    turnover_baseline: float
    turnover_display_scenario: float
    r_customers_mc: float | None
    r_margin_mc: float | None
    analytic: AnalyticMetrics
    seed: int


@dataclass(frozen=True, slots=True)
class CellFailure:
    """A cell that raised during simulation; the sweep carries on."""

    cell_index: int
    message: str


def grid_cells(grid: SweepGrid) -> Iterator[tuple[int, CellParams]]:
    """Enumerate ``(cell_index, CellParams)`` in pinned row-major order.

    Axis order: u outermost, then pi, then d, margins innermost.  The index
    is the cell's stable identity; it keys the derived stream seed and the
    output ordering, so changing the enumeration would change results.
    """
    index = 0
    for u in grid.u.values():
        for pi in grid.pi.values():
            for d in grid.d.values():
                for m in grid.margins:
                    yield index, CellParams(u=u, pi=pi, d=d, m=m)
                    index += 1


def simulate_customers(
    stream: RandomStream, cell: CellParams, config: ModelConfig, n: int
) -> CustomerBatch:
    """Draws and outcomes for ``n`` customer visits.

    Draw order is pinned: display-usage uniforms, category uniforms, price
    normals (with positive redraws), then purchase uniforms.  Category and
    price are drawn once per customer and shared by both scenarios; the one
    purchase uniform decides buying in both.
    """
    uses_display, _ = bernoulli(stream, cell.u, n)
    category = sample_category(stream, config.catalog, n)
    price = sample_prices(stream, config.catalog, category)
    q_buy = stream.uniform(n)

    pi_eff = effective_intention(config.rule, config.law, cell.pi, cell.d)
    bought_baseline = q_buy < cell.pi
    bought_display = np.where(uses_display, q_buy < pi_eff, bought_baseline)

    if config.accounting is MarginAccounting.DISCOUNT_ALL_DISPLAY_BUYERS:
        discounted = uses_display & bought_display
    else:
        discounted = uses_display & bought_display & ~bought_baseline

    margin_baseline = np.where(bought_baseline, price * cell.m, 0.0)
    margin_display = np.where(
        bought_display,
        np.where(discounted, price * (cell.m - cell.d), price * cell.m),
        0.0,
    )
    return CustomerBatch(
        uses_display=uses_display,
        category=category,
        price=price,
        q_buy=q_buy,
        bought_baseline=bought_baseline,
        bought_display_scenario=bought_display,
        discounted=discounted,
        margin_baseline=margin_baseline,
        margin_display_scenario=margin_display,
    )


def simulate_customer(
    stream: RandomStream, cell: CellParams, config: ModelConfig
) -> CustomerRecord:
    """Simulate a single customer visit (a batch of one)."""
    b = simulate_customers(stream, cell, config, 1)
    return CustomerRecord(
        uses_display=bool(b.uses_display[0]),
        category=int(b.category[0]),
        price=float(b.price[0]),
        q_buy=float(b.q_buy[0]),
        bought_baseline=bool(b.bought_baseline[0]),
        bought_display_scenario=bool(b.bought_display_scenario[0]),
        discounted=bool(b.discounted[0]),
        margin_baseline=float(b.margin_baseline[0]),
        margin_display_scenario=float(b.margin_display_scenario[0]),
    )


def simulate_cell(cell: CellParams, config: ModelConfig, cell_index: int) -> CellResult:
    """Monte Carlo tallies for one grid cell from its own derived stream."""
    seed = derive_cell_seed(config.master_seed, cell_index)
    stream = RandomStream(seed)
    batch = simulate_customers(stream, cell, config, config.customers_per_cell)

    uses = batch.uses_display
    buyers_among = int((uses & batch.bought_display_scenario).sum())
    counterfactual = int((uses & batch.bought_baseline).sum())

    paid = np.where(batch.discounted, batch.price * (1.0 - cell.d), batch.price)
    turnover_baseline = float(np.where(batch.bought_baseline, batch.price, 0.0).sum())
    turnover_display = float(np.where(batch.bought_display_scenario, paid, 0.0).sum())

    display_margin = float(np.where(uses, batch.margin_display_scenario, 0.0).sum())
    counterfactual_margin = float(
        np.where(uses & batch.bought_baseline, batch.price * cell.m, 0.0).sum()
    )

    return CellResult(
        cell=cell,
        cell_index=cell_index,
        customers=config.customers_per_cell,
        display_users=int(uses.sum()),
        buyers_baseline=int(batch.bought_baseline.sum()),
        buyers_display_scenario=int(batch.bought_display_scenario.sum()),
        buyers_among_display_users=buyers_among,
        counterfactual_buyers_among_display_users=counterfactual,
        margin_sum_baseline=float(batch.margin_baseline.sum()),
        margin_sum_display_scenario=float(batch.margin_display_scenario.sum()),
        turnover_baseline=turnover_baseline,
        turnover_display_scenario=turnover_display,
        r_customers_mc=buyers_among / counterfactual if counterfactual else None,
        r_margin_mc=display_margin / counterfactual_margin if counterfactual_margin else None,
        analytic=analytic_metrics(config.law, config.rule, config.accounting, cell),
        seed=seed,
    )


def _simulate_chunk(
    args: tuple[list[tuple[int, CellParams]], ModelConfig]
) -> tuple[list[CellResult], list[CellFailure]]:
    cells, config = args
    results: list[CellResult] = []
    failures: list[CellFailure] = []
    for index, cell in cells:
        try:
            results.append(simulate_cell(cell, config, index))
        except Exception as exc:  # deliberate: one bad cell must not kill the sweep
            failures.append(CellFailure(index, f"{type(exc).__name__}: {exc}"))
    return results, failures


def run_sweep(
    grid: SweepGrid,
    config: ModelConfig,
    parallelism: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> tuple[list[CellResult], list[CellFailure]]:
    """Simulate every grid cell; results come back ordered by cell index.

    Output is bit-identical for any ``parallelism`` degree: cells only read
    the shared config and own their derived streams, and assembly merges by
    cell index.  Per-cell failures are collected, not raised.
    """
    cells = list(grid_cells(grid))
    total = len(cells)
    if parallelism < 1:
        raise DomainError(f"parallelism must be >= 1, got {parallelism}")

    results: list[CellResult] = []
    failures: list[CellFailure] = []
    if parallelism == 1 or total <= 1:
        done = 0
        chunk = max(1, total // 100)
        for start in range(0, total, chunk):
            part, bad = _simulate_chunk((cells[start : start + chunk], config))
            results.extend(part)
            failures.extend(bad)
            done += len(cells[start : start + chunk])
            if progress is not None:
                progress(done, total)
    else:
        chunk = max(1, math.ceil(total / (parallelism * 16)))
        chunks = [(cells[i : i + chunk], config) for i in range(0, total, chunk)]
        done = 0
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for part, bad in pool.map(_simulate_chunk, chunks):
                results.extend(part)
                failures.extend(bad)
                done += len(part) + len(bad)
                if progress is not None:
                    progress(done, total)
    results.sort(key=lambda r: r.cell_index)
    failures.sort(key=lambda f: f.cell_index)
    return results, failures
