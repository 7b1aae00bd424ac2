"""Turning the real line into a one-way space with the cone of nonnegative functions.

Run: python3 demos/asymmetrize_line.py
"""

# %%
from slipfree.asymmetrize import (ConeSpec, canonical_asym, check_property,
                                  closed_form_Dplus_reals, real_line)
from slipfree.rational import fmt

points = [-2, 0, 1, 3]
line = real_line(points)
plus = canonical_asym(line, ConeSpec.nonneg())

print("     " + " ".join(f"{p:>4}" for p in plus.labels))
for label, row in zip(plus.labels, plus.d):
    print(f"{label:>4} " + " ".join(f"{fmt(v):>4}" for v in row))
print("kind:", plus.kind)

# %% the piecewise formula gives the same matrix without solving anything
print("closed form agrees:", closed_form_Dplus_reals(points) == plus)

# %% moving away from 0 is cheap, coming back is capped by the distance to 0
print("D+(1,3) =", fmt(plus.d[2][3]), "  D+(3,1) =", fmt(plus.d[3][2]))

# %% which splitting properties survive?
for prop in ("S", "S*", "S0*"):
    report = check_property(real_line([0, 1, 3]), ConeSpec.nonneg(), prop)
    print(prop, report.verdict, report.witness or "")
