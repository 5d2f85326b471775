"""Walk through the analytic heart of the model: the discount-to-uplift law,
how it composes with a customer's initial purchase intention, and where the
composed intention saturates.

Run: python demos/discount_uplift_laws.py
"""
from kiosksim import (
    DEFAULT_LAW,
    IntentionUpdateRule,
    clamp_threshold,
    effective_intention,
    pii,
)

MULT = IntentionUpdateRule.MULTIPLICATIVE

print("The uplift law is linear in the discount fraction d:")
print(f"  uplift(d) = {DEFAULT_LAW.slope} * d + ({DEFAULT_LAW.intercept})")
print(f"  zero-crossing at d = {DEFAULT_LAW.root:.6f}")
print()

print("Uplift across the default sweep range:")
for d in (0.10, 0.20, 0.30, 0.50, 0.70):
    print(f"  d={d:.2f}  uplift={pii(DEFAULT_LAW, d):+.3f}")
print()

print("Effective intention pi_eff = clamp(pi * (1 + uplift)) for a few customers:")
print(f"  {'pi':>5} | " + " ".join(f"d={d:.2f}" for d in (0.1, 0.3, 0.5, 0.7)))
for pi in (0.10, 0.36, 0.70):
    row = [effective_intention(MULT, DEFAULT_LAW, pi, d) for d in (0.1, 0.3, 0.5, 0.7)]
    print(f"  {pi:>5.2f} | " + " ".join(f"{v:6.4f}" for v in row))
print()

print("Saturation: discounts beyond this threshold no longer add buyers")
print("(hesitant customers never saturate inside the sweep):")
for pi in (0.10, 0.36, 0.50, 0.70, 1.00):
    threshold = clamp_threshold(MULT, DEFAULT_LAW, pi)
    label = f"{threshold:.4f}" if threshold is not None else "above 0.70"
    print(f"  pi={pi:.2f}  saturation discount: {label}")
