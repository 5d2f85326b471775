"""Monte Carlo and closed-form analysis of kiosk discount recommendations.

The library sweeps a four-parameter grid (display-usage share, initial
purchase intention, discount, margin), simulates per-cell customer visits
with common random numbers across the with/without-display scenarios, and
pairs every Monte Carlo estimate with its closed-form expectation.
"""

__version__ = "0.1.0"

from .analysis import AggregateCurve, BreakEvenCurve, aggregate, empirical_breakeven, summary
from .engine import (
    CellFailure,
    CellResult,
    CustomerBatch,
    CustomerRecord,
    GridAxis,
    ModelConfig,
    SweepGrid,
    grid_cells,
    run_sweep,
    simulate_cell,
    simulate_customer,
    simulate_customers,
)
from .errors import (
    ConfigError,
    DomainError,
    IncompleteGridError,
    KioskSimError,
    SamplingError,
)
from .model import (
    DEFAULT_ACCOUNTING,
    DEFAULT_D_DOMAIN,
    DEFAULT_LAW,
    DEFAULT_RULE,
    AnalyticMetrics,
    Category,
    CategoryCatalog,
    CellParams,
    DiscountLaw,
    IntentionUpdateRule,
    MarginAccounting,
    analytic_metrics,
    breakeven,
    clamp_threshold,
    default_catalog,
    effective_intention,
    expected_price,
    margin_fraction,
    pii,
)
from .sampling import (
    RandomStream,
    bernoulli,
    derive_cell_seed,
    sample_category,
    sample_price,
    sample_prices,
)

__all__ = [
    "__version__",
    "AggregateCurve",
    "AnalyticMetrics",
    "BreakEvenCurve",
    "Category",
    "CategoryCatalog",
    "CellFailure",
    "CellParams",
    "CellResult",
    "ConfigError",
    "CustomerBatch",
    "CustomerRecord",
    "DEFAULT_ACCOUNTING",
    "DEFAULT_D_DOMAIN",
    "DEFAULT_LAW",
    "DEFAULT_RULE",
    "DiscountLaw",
    "DomainError",
    "GridAxis",
    "IncompleteGridError",
    "IntentionUpdateRule",
    "KioskSimError",
    "MarginAccounting",
    "ModelConfig",
    "RandomStream",
    "SamplingError",
    "SweepGrid",
    "aggregate",
    "analytic_metrics",
    "bernoulli",
    "breakeven",
    "clamp_threshold",
    "default_catalog",
    "derive_cell_seed",
    "effective_intention",
    "empirical_breakeven",
    "expected_price",
    "grid_cells",
    "margin_fraction",
    "pii",
    "run_sweep",
    "sample_category",
    "sample_price",
    "sample_prices",
    "simulate_cell",
    "simulate_customer",
    "simulate_customers",
    "summary",
]
