"""Chart where discounting pays for itself.

For each margin level, solve for the discount intervals in which the
display scenario earns at least the no-display baseline.  The margin ratio
is scanned and bisected numerically, so the same code answers the question
for any update-rule or accounting variant.

Run: python demos/breakeven_frontier.py
"""
from kiosksim import MarginAccounting, breakeven

print("Default accounting (every buying display user gets the discount):")
print(f"  {'margin':>6} | {'pi':>4} | profitable discounts")
for margin in (0.3, 0.4, 0.5):
    for pi in (0.10, 0.36, 0.70):
        intervals = breakeven(margin, pi)
        if intervals:
            text = ", ".join(f"({lo:.4f}, {hi:.4f})" for lo, hi in intervals)
        else:
            text = "none"
        print(f"  {margin:>6.2f} | {pi:>4.2f} | {text}")
print()
print("At margin 0.3 no discount is profitable under this accounting; at")
print("higher margins the window narrows as intention rises, because")
print("already-willing buyers absorb discounts without adding sales.")
print()

print("Incremental-only accounting (full-price buyers keep paying full price):")
for margin in (0.3, 0.4, 0.5):
    intervals = breakeven(margin, 0.36, accounting=MarginAccounting.DISCOUNT_INCREMENTAL_ONLY)
    text = ", ".join(f"({lo:.4f}, {hi:.4f})" for lo, hi in intervals)
    print(f"  margin {margin:.2f}, pi 0.36: {text}")
print()
print("Here any discount between the uplift zero-crossing and the margin is")
print("profitable, independent of intention; the two accountings bracket the")
print("plausible readings of how a salesman grants the discount.")
