"""Edge flows on weighted trees, and where the flow formula stops matching the LP.

Run: python3 demos/tree_flows.py
"""

# %%
import random

from slipfree.asymmetrize import ConeSpec, canonical_asym
from slipfree.freespace import Molecule, dual_norm, sym_free_norm
from slipfree.rational import fmt
from slipfree.sampling import random_molecule, random_tree
from slipfree.tree import (WeightedRootedTree, godard_embed, marked_branching, path_metric,
                           tree_asym_norm, tree_sym_norm)

tree = WeightedRootedTree.from_edges("r", [("a", "r", 1), ("b", "a", 2), ("c", "a", 1)])
space = path_metric(tree)
Q = Molecule.by_label(space, {"b": 1, "c": -2})
print("flows:", {v: fmt(f) for v, f in godard_embed(tree, Q).items()})
print("sym:", fmt(tree_sym_norm(tree, Q)), " LP:", fmt(sym_free_norm(Q)))
dp = canonical_asym(space, ConeSpec.tree_monotone(tree))
print("asym:", fmt(tree_asym_norm(tree, Q)), " LP:", fmt(dual_norm(Q.on(dp))))

# %% now hide the branch point a from the space
hidden = WeightedRootedTree.from_edges("r", [("a", "r", 1), ("b", "a", 2), ("c", "a", 1)],
                                       ["r", "b", "c"])
hs = path_metric(hidden)
hdp = canonical_asym(hs, ConeSpec.tree_monotone(hidden))
Q = Molecule.by_label(hs, {"b": 1, "c": -1})
print("with a unmarked -> asym:", fmt(tree_asym_norm(hidden, Q)),
      " LP:", fmt(dual_norm(Q.on(hdp))))

# %% how often does that happen on random trees?
rng = random.Random(7)
tally = {True: [0, 0], False: [0, 0]}
for _ in range(60):
    t = random_tree(rng, rng.randint(2, 8))
    s = path_metric(t)
    d = canonical_asym(s, ConeSpec.tree_monotone(t))
    q = random_molecule(rng, s)
    key = marked_branching(t)
    tally[key][0] += 1
    tally[key][1] += tree_asym_norm(t, q) != dual_norm(q.on(d))
for key, (n, bad) in tally.items():
    label = "all branch points marked" if key else "some branch point unmarked"
    print(f"{label}: {bad} mismatches in {n} trees")

# %% the meet formula D(x ^ y, y) on a tree with marked branching
ok = all(dp.d[i][j] == tree.dist(tree.meet(x, y), y)
         for i, x in enumerate(tree.marked) for j, y in enumerate(tree.marked))
print("D_P(x, y) = D(x ^ y, y):", ok)
