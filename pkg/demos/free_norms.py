"""Free-space norms on a small hemi-metric space, three ways.

Run: python3 demos/free_norms.py
"""

# %% the space: points 0..3, every jump costs 1 except jumps back to 0, which are free
from slipfree.fixtures import naturals_hemi
from slipfree.freespace import Molecule, dual_solution, kr_norm, sym_free_norm
from slipfree.rational import fmt

space = naturals_hemi(3)
for row in space.d:
    print(" ".join(fmt(v) for v in row))
print("kind:", space.kind)

# %% a molecule with mixed signs
Q = Molecule(space, {1: 2, 2: -3, 3: 1})
print(Q)

# %% maximize <Q, f> over the semi-Lipschitz unit ball
value, f = dual_solution(Q)
print("dual norm:", fmt(value), " maximizer:", {space.labels[i]: fmt(v) for i, v in f.values.items()})

# %% cheapest transport plan; the base point may absorb or supply mass
cost, plan = kr_norm(Q)
print("transport cost:", fmt(cost))
for lam, y, z in plan.terms:
    print(f"  {fmt(lam)} x (delta({space.labels[y]}) - delta({space.labels[z]}))"
          f"  at {fmt(space.d[z][y])} each")

# %% only positive mass costs anything here: the norm is the sum of positive parts
print("sum of positive parts:", fmt(sum(c for c in Q.coefficients.values() if c > 0)))

# %% forgetting direction makes things more expensive
for mode in ("max", "sum"):
    print(f"symmetrized ({mode}):", fmt(sym_free_norm(Q, mode)))
