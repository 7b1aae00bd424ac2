"""Experiment: a discrete stand-in for the cone of functions with nonnegative integral.

On a finite subset of the line, take P = {phi : sum of phi >= 0}. Does the
induced quasi-metric collapse back to the usual distance?

Run: python3 demos/integral_cone.py
"""

# %%
import itertools

from slipfree.asymmetrize import ConeSpec, canonical_asym, real_line
from slipfree.rational import fmt

same = differ = 0
for k in range(1, 5):
    for combo in itertools.combinations([-3, -2, -1, 1, 2, 3], k):
        line = real_line((0,) + combo)
        cone = ConeSpec.explicit([{label: 1 for label in line.labels}])
        if canonical_asym(line, cone) == line:
            same += 1
        else:
            differ += 1
            if differ == 1:
                print("first subset where it differs:", line.labels)
                for row in canonical_asym(line, cone).d:
                    print("  ", " ".join(fmt(v) for v in row))
print(f"equal to the usual metric on {same} subsets, different on {differ}")
