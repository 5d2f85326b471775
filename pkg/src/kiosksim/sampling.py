"""Deterministic random sampling primitives.

Draw streams are backed by numpy's Philox 4x64 counter-based generator,
keyed per sweep cell through a splitmix64-style integer hash.  Philox is
platform-independent by construction, so a cell can be replayed in
isolation on any machine and sweeps parallelize without ever sharing a
stream.  The exact bit streams are pinned by golden-value tests.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, SamplingError
from .model import Category, CategoryCatalog

__all__ = [
    "RandomStream",
    "derive_cell_seed",
    "bernoulli",
    "sample_category",
    "sample_price",
    "sample_prices",
]

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15

# Rounds of vectorized redraws (or scalar retries) before a price
# distribution is declared degenerate.
_MAX_PRICE_REDRAWS = 1000


def derive_cell_seed(master_seed: int, cell_index: int) -> int:
    """Stable 64-bit stream key for one sweep cell.

    splitmix64 finalizer over ``master + (index + 1) * gamma``; distinct
    cell indices map to distinct keys and single-bit input changes flip
    about half the output bits.  The mapping is frozen by golden tests.
    """
    if cell_index < 0:
        raise DomainError(f"cell_index must be >= 0, got {cell_index}")
    z = ((master_seed & _MASK64) + ((cell_index + 1) * _SPLITMIX_GAMMA)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class RandomStream:
    """Single-owner draw stream; one seed replays one exact sequence.

    Not to be shared across threads or processes: concurrency is achieved
    by deriving independent streams, never by sharing one.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._gen = np.random.Generator(np.random.Philox(key=self.seed))

    def uniform(self, size: int | None = None):
        """Uniform draw(s) in [0, 1); a scalar when ``size`` is None."""
        return self._gen.random() if size is None else self._gen.random(size)

    def normal(self, size: int | None = None):
        """Standard normal draw(s); a scalar when ``size`` is None."""
        return self._gen.standard_normal() if size is None else self._gen.standard_normal(size)


def bernoulli(stream: RandomStream, p: float, size: int | None = None):
    """Bernoulli draw(s) plus the underlying uniform(s).

    Returns ``(q < p, q)``.  Surfacing ``q`` lets callers reuse the same
    draw across counterfactual scenarios (common random numbers).
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    q = stream.uniform(size)
    return q < p, q


def sample_category(stream: RandomStream, catalog: CategoryCatalog, size: int | None = None):
    """Category index draw(s) proportional to the catalog weights."""
    cum = np.cumsum(catalog.normalized_weights())
    cum[-1] = 1.0
    q = stream.uniform(size)
    idx = np.searchsorted(cum, q, side="right")
    return int(idx) if size is None else idx


def sample_price(stream: RandomStream, category: Category) -> float:
    """One strictly positive price from the category's normal distribution.

    Non-positive draws are rejected and redrawn, up to a hard cap that is
    unreachable for any catalog with positive means.
    """
    for _ in range(_MAX_PRICE_REDRAWS):
        value = category.price_mean + category.price_std * stream.normal()
        if value > 0.0:
            return value
    raise SamplingError(
        f"category {category.name!r}: no positive price after {_MAX_PRICE_REDRAWS} draws"
    )


def sample_prices(
    stream: RandomStream, catalog: CategoryCatalog, category_indices: np.ndarray
) -> np.ndarray:
    """Vectorized positive price draws, one per entry of ``category_indices``.

    Failing entries are redrawn in index order each round, keeping the
    consumed stream sequence a pure function of the inputs.
    """
    means = np.asarray([c.price_mean for c in catalog.categories])
    stds = np.asarray([c.price_std for c in catalog.categories])
    mu = means[category_indices]
    sd = stds[category_indices]
    price = mu + sd * stream.normal(len(mu))
    bad = price <= 0.0
    rounds = 0
    while bad.any():
        rounds += 1
        if rounds > _MAX_PRICE_REDRAWS:
            raise SamplingError(
                f"no positive price after {_MAX_PRICE_REDRAWS} redraw rounds"
            )
        price[bad] = mu[bad] + sd[bad] * stream.normal(int(bad.sum()))
        bad = price <= 0.0
    return price
