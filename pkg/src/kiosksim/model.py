"""Closed-form kiosk discounting model.

A linear law converts a discount fraction into a purchase-intention uplift,
an update rule composes that uplift with the customer's initial intention,
and a margin-accounting variant prices the resulting sales.  Everything in
this module is pure scalar arithmetic: expected per-display-user metrics and
the break-even discount intervals at which the discounted scenario earns at
least as much margin as the undiscounted baseline.

Both relative metrics are normalized by the undiscounted per-display-user
baseline ``pi * m`` (expected margin per unit price), which is why they do
not depend on the share of customers actually using the display.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import DomainError

__all__ = [
    "DiscountLaw",
    "IntentionUpdateRule",
    "MarginAccounting",
    "Category",
    "CategoryCatalog",
    "CellParams",
    "AnalyticMetrics",
    "DEFAULT_LAW",
    "DEFAULT_RULE",
    "DEFAULT_ACCOUNTING",
    "DEFAULT_D_DOMAIN",
    "default_catalog",
    "pii",
    "effective_intention",
    "clamp_threshold",
    "margin_fraction",
    "analytic_metrics",
    "expected_price",
    "breakeven",
]


@dataclass(frozen=True, slots=True)
class DiscountLaw:
    """Linear discount-to-uplift law: ``uplift = slope * d + intercept``.

    The intercept is negative, so small discounts produce a (extrapolated)
    negative uplift; the law crosses zero at ``-intercept / slope``.
    """

    slope: float = 8.52
    intercept: float = -0.57

    def __post_init__(self):
        if not self.slope > 0.0:
            raise DomainError("slope must be > 0")
        root = -self.intercept / self.slope
        if not 0.0 <= root < 1.0:
            raise DomainError("law zero-crossing -intercept/slope must lie in [0, 1)")

    @property
    def root(self) -> float:
        """Discount at which the uplift changes sign."""
        return -self.intercept / self.slope


class IntentionUpdateRule(Enum):
    """How the uplift composes with the initial intention."""

    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"


class MarginAccounting(Enum):
    """Which display-scenario buyers pay the discounted price.

    DISCOUNT_ALL_DISPLAY_BUYERS: every buying display user pays
    ``price * (1 - d)``.  DISCOUNT_INCREMENTAL_ONLY: display users who would
    have bought at full price still pay it; only the uplift-induced buyers
    get the discount.
    """

    DISCOUNT_ALL_DISPLAY_BUYERS = "discount_all_display_buyers"
    DISCOUNT_INCREMENTAL_ONLY = "discount_incremental_only"


DEFAULT_LAW = DiscountLaw()
DEFAULT_RULE = IntentionUpdateRule.MULTIPLICATIVE
DEFAULT_ACCOUNTING = MarginAccounting.DISCOUNT_ALL_DISPLAY_BUYERS

# Discounts considered by default when solving for break-even intervals;
# the upper end matches the default sweep's largest discount.
DEFAULT_D_DOMAIN = (0.0, 0.7)


@dataclass(frozen=True, slots=True)
class Category:
    """One product category: popularity weight and price distribution."""

    name: str
    weight: float
    price_mean: float
    price_std: float

    def __post_init__(self):
        if not self.weight > 0.0:
            raise DomainError(f"category {self.name!r}: weight must be > 0")
        if not self.price_mean > 0.0:
            raise DomainError(f"category {self.name!r}: price_mean must be > 0")
        if not self.price_std > 0.0:
            raise DomainError(f"category {self.name!r}: price_std must be > 0")
        if self.price_mean / self.price_std < 2.0:
            warnings.warn(
                f"category {self.name!r}: price_mean/price_std < 2, "
                "positive-truncation bias is no longer negligible",
                stacklevel=2,
            )


@dataclass(frozen=True, slots=True)
class CategoryCatalog:
    """Ordered product categories with relative popularity weights."""

    categories: tuple[Category, ...]

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        if len(self.categories) < 1:
            raise DomainError("catalog must contain at least one category")

    def normalized_weights(self) -> list[float]:
        total = math.fsum(c.weight for c in self.categories)
        return [c.weight / total for c in self.categories]


def default_catalog() -> CategoryCatalog:
    """Six-category telecom-kiosk assortment.

    Price distributions reflect the per-category price spread of a real
    accessories kiosk chain.  The equal weights are a neutral default:
    replace them with observed category shares when available.
    """
    return CategoryCatalog(
        (
            Category("cases and protectors", 1.0, 29.0, 8.0),
            Category("GSM accessories", 1.0, 35.0, 8.0),
            Category("smartphones and tablets", 1.0, 700.0, 200.0),
            Category("hobby & sport", 1.0, 45.0, 10.0),
            Category("moto accessories", 1.0, 80.0, 21.0),
            Category("electronics", 1.0, 50.0, 13.0),
        )
    )


@dataclass(frozen=True, slots=True)
class CellParams:
    """One grid point: display-usage share, intention, discount, margin."""

    u: float
    pi: float
    d: float
    m: float

    def __post_init__(self):
        if not 0.0 <= self.u <= 1.0:
            raise DomainError(f"u must lie in [0, 1], got {self.u}")
        if not 0.0 < self.pi <= 1.0:
            raise DomainError(f"pi must lie in (0, 1], got {self.pi}")
        if not 0.0 <= self.d < 1.0:
            raise DomainError(f"d must lie in [0, 1), got {self.d}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m}")


@dataclass(frozen=True, slots=True)
class AnalyticMetrics:
    """Expected relative outcomes for one cell, per display user.

    ``r_customers`` is the buying-probability ratio with/without the
    discount offer; ``r_margin`` is the expected-margin ratio against the
    full-price baseline (values below 1 are a loss, negative values an
    absolute loss).  ``clamp_active`` records that the composed intention
    exceeded 1 before clamping.
    """

    pii: float
    pi_eff: float
    r_customers: float
    r_margin: float
    clamp_active: bool


def pii(law: DiscountLaw, d: float) -> float:
    """Intention uplift granted by discount fraction ``d``.

    Negative below the law's zero-crossing: the linear law is an
    extrapolation there.
    """
    if not 0.0 <= d < 1.0:
        raise DomainError(f"d must lie in [0, 1), got {d}")
    return law.slope * d + law.intercept


def _compose(rule: IntentionUpdateRule, pi: float, uplift: float) -> float:
    if rule is IntentionUpdateRule.MULTIPLICATIVE:
        return pi * (1.0 + uplift)
    return pi + uplift


def effective_intention(
    rule: IntentionUpdateRule, law: DiscountLaw, pi: float, d: float
) -> float:
    """Post-discount purchase probability, clamped to [0, 1]."""
    if not 0.0 < pi <= 1.0:
        raise DomainError(f"pi must lie in (0, 1], got {pi}")
    raw = _compose(rule, pi, pii(law, d))
    return min(1.0, max(0.0, raw))


def clamp_threshold(
    rule: IntentionUpdateRule,
    law: DiscountLaw,
    pi: float,
    d_max: float | None = 0.7,
) -> float | None:
    """Smallest discount at which the effective intention saturates at 1.

    Returns None when saturation would only occur beyond ``d_max`` (pass
    ``d_max=None`` for the raw threshold regardless of the sweep domain).
    """
    if not 0.0 < pi <= 1.0:
        raise DomainError(f"pi must lie in (0, 1], got {pi}")
    threshold = _saturation_discount(rule, law, pi)
    if d_max is not None and threshold > d_max:
        return None
    return threshold


def _saturation_discount(rule: IntentionUpdateRule, law: DiscountLaw, pi: float) -> float:
    if rule is IntentionUpdateRule.MULTIPLICATIVE:
        return (1.0 / pi - 1.0 - law.intercept) / law.slope
    return (1.0 - pi - law.intercept) / law.slope


def _extinction_discount(rule: IntentionUpdateRule, law: DiscountLaw, pi: float) -> float:
    # Discount below which the composed intention clamps at 0.
    if rule is IntentionUpdateRule.MULTIPLICATIVE:
        return (-1.0 - law.intercept) / law.slope
    return (-pi - law.intercept) / law.slope


def margin_fraction(
    accounting: MarginAccounting, pi: float, pi_eff: float, m: float, d: float
) -> float:
    """Expected margin per display user, per unit of list price.

    A discounted sale contributes ``m - d``: the sale price drops to
    ``price * (1 - d)`` while the cost stays ``price * (1 - m)``.  The
    contribution may be negative when the discount exceeds the margin.
    """
    if pi_eff < 0.0:
        raise DomainError(f"pi_eff must be >= 0, got {pi_eff}")
    if not 0.0 < pi <= 1.0:
        raise DomainError(f"pi must lie in (0, 1], got {pi}")
    if not 0.0 < m <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m}")
    if not 0.0 <= d < 1.0:
        raise DomainError(f"d must lie in [0, 1), got {d}")
    if accounting is MarginAccounting.DISCOUNT_ALL_DISPLAY_BUYERS:
        return pi_eff * (m - d)
    return pi * m + (pi_eff - pi) * (m - d)


def analytic_metrics(
    law: DiscountLaw,
    rule: IntentionUpdateRule,
    accounting: MarginAccounting,
    cell: CellParams,
) -> AnalyticMetrics:
    """Expected relative metrics for one cell.

    Independent of ``cell.u`` by construction: both ratios are taken per
    display user against the per-display-user baseline ``pi * m``.
    """
    uplift = pii(law, cell.d)
    raw = _compose(rule, cell.pi, uplift)
    clamp_active = raw > 1.0
    pi_eff = min(1.0, max(0.0, raw))
    r_customers = pi_eff / cell.pi
    r_margin = margin_fraction(accounting, cell.pi, pi_eff, cell.m, cell.d) / (cell.pi * cell.m)
    return AnalyticMetrics(
        pii=uplift,
        pi_eff=pi_eff,
        r_customers=r_customers,
        r_margin=r_margin,
        clamp_active=clamp_active,
    )


def expected_price(catalog: CategoryCatalog) -> float:
    """Weight-averaged mean sale price over the catalog.

    Ignores the positive-truncation bias of the price draw, which is
    negligible while ``price_mean / price_std`` stays at 2 or above.
    """
    weights = catalog.normalized_weights()
    return math.fsum(w * c.price_mean for w, c in zip(weights, catalog.categories))


def _margin_ratio_fn(
    m: float,
    pi: float,
    law: DiscountLaw,
    rule: IntentionUpdateRule,
    accounting: MarginAccounting,
) -> Callable[[float], float]:
    def ratio(d: float) -> float:
        pi_eff = effective_intention(rule, law, pi, d)
        return margin_fraction(accounting, pi, pi_eff, m, d) / (pi * m)

    return ratio


def _bisect_crossing(
    f: Callable[[float], float], lo: float, hi: float, lo_positive: bool, tol: float
) -> float:
    # Precondition: the predicate f(x) > 0 differs between lo and hi.
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def breakeven(
    m: float,
    pi: float,
    law: DiscountLaw = DEFAULT_LAW,
    rule: IntentionUpdateRule = DEFAULT_RULE,
    accounting: MarginAccounting = DEFAULT_ACCOUNTING,
    d_domain: tuple[float, float] = DEFAULT_D_DOMAIN,
    scan_step: float = 1e-3,
    tol: float = 1e-12,
) -> list[tuple[float, float]]:
    """Maximal discount intervals on which the margin ratio exceeds 1.

    The ratio is piecewise smooth in ``d`` with kinks only where the
    composed intention clamps at 1 (or at 0 for the additive rule), so the
    clamp points are inserted as scan nodes, sign changes of ``ratio - 1``
    are bracketed on a ``scan_step`` grid, and each bracket is refined by
    bisection to width ``tol``.  Returns an empty list when no discount is
    profitable; endpoints that coincide with the domain boundary are not
    break-even roots.
    """
    d_lo, d_hi = d_domain
    if not (0.0 <= d_lo < d_hi < 1.0):
        raise DomainError(f"d_domain must satisfy 0 <= lo < hi < 1, got {d_domain}")
    if not 0.0 < pi <= 1.0:
        raise DomainError(f"pi must lie in (0, 1], got {pi}")
    if not 0.0 < m <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m}")

    ratio = _margin_ratio_fn(m, pi, law, rule, accounting)

    nodes = {d_lo, d_hi}
    for kink in (
        _saturation_discount(rule, law, pi),
        _extinction_discount(rule, law, pi),
    ):
        if d_lo < kink < d_hi:
            nodes.add(kink)
    node_list = sorted(nodes)

    points: list[float] = []
    for a, b in zip(node_list[:-1], node_list[1:]):
        steps = max(1, math.ceil((b - a) / scan_step))
        points.extend(a + (b - a) * k / steps for k in range(steps))
    points.append(d_hi)

    def f(d: float) -> float:
        return ratio(d) - 1.0

    values = [f(p) for p in points]
    intervals: list[tuple[float, float]] = []
    open_lo = points[0] if values[0] > 0.0 else None
    for (x0, f0), (x1, f1) in zip(zip(points, values), zip(points[1:], values[1:])):
        if (f0 > 0.0) == (f1 > 0.0):
            continue
        crossing = _bisect_crossing(f, x0, x1, f0 > 0.0, tol)
        if open_lo is None:
            open_lo = crossing
        else:
            intervals.append((open_lo, crossing))
            open_lo = None
    if open_lo is not None:
        intervals.append((open_lo, d_hi))
    return intervals
