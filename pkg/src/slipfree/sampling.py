"""Seeded random spaces, molecules, functions and trees.

Every generator takes a :class:`random.Random` so callers control
reproducibility. Entries are small rationals to keep LPs cheap.
"""

import random

from .freespace import Molecule
from .functions import PointFunction
from .rational import Fraction
from .space import METRIC, QUASI_HEMI_METRIC, QUASI_METRIC, validate


def _rational(rng, lo=1, hi=9, dens=(1, 2, 3, 4)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def _closure(d):
    """Shortest-path closure so the triangle inequality holds."""
    n = len(d)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            row = d[i]
            for j in range(n):
                if dik + dk[j] < row[j]:
                    row[j] = dik + dk[j]
    return d


def random_space(rng: random.Random, n: int, kind: str = None):
    """A valid space with ``n`` points whose kind is exactly ``kind``.

    ``kind`` defaults to a uniform choice among the three. Hemi spaces get
    zero distances along a random linear order, which keeps separation.
    """
    kind = kind or rng.choice((METRIC, QUASI_METRIC, QUASI_HEMI_METRIC))
    while True:
        d = [[Fraction(0)] * n for _ in range(n)]
        if kind == METRIC:
            for i in range(n):
                for j in range(i + 1, n):
                    d[i][j] = d[j][i] = _rational(rng)
        else:
            for i in range(n):
                for j in range(n):
                    if i != j:
                        d[i][j] = _rational(rng)
            if kind == QUASI_HEMI_METRIC:
                order = list(range(n))
                rng.shuffle(order)
                rank = {p: r for r, p in enumerate(order)}
                for i in range(n):
                    for j in range(n):
                        if rank[i] < rank[j] and rng.random() < 0.5:
                            d[i][j] = Fraction(0)
        space = validate(_closure(d), base=rng.randrange(n))
        if space.kind == kind or n == 1:
            return space


def random_metric(rng: random.Random, n: int):
    return random_space(rng, n, METRIC)


def random_molecule(rng: random.Random, space, support=None):
    idx = list(space.free_indices if support is None else support)
    coeffs = {i: Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for i in idx}
    return Molecule(space, coeffs)


def random_function(rng: random.Random, space, domain=None, base_zero=True):
    idx = list(range(space.n) if domain is None else domain)
    vals = {i: Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4))) for i in idx}
    if base_zero and space.base in vals:
        vals[space.base] = Fraction(0)
    return PointFunction(space, vals)


def random_semi_lipschitz(rng: random.Random, space, domain=None):
    """A semi-Lipschitz function on ``domain`` that vanishes at the base.

    Built as a nonnegative combination of ``d(a, .)`` and ``-d(., a)``,
    both of which have semi-Lipschitz constant at most 1.
    """
    idx = list(range(space.n) if domain is None else domain)
    d = space.d
    vals = {i: Fraction(0) for i in idx}
    for a in idx:
        w = Fraction(rng.randint(0, 3), rng.choice((1, 2)))
        v = Fraction(rng.randint(0, 3), rng.choice((1, 2)))
        for i in idx:
            vals[i] += w * d[a][i] - v * d[i][a]
    shift = vals.get(space.base, Fraction(0))
    return PointFunction(space, {i: x - shift for i, x in vals.items()})


def random_tree(rng: random.Random, n_nodes: int, mark_prob=0.6):
    """A random rooted tree with rational lengths and a random marked set."""
    from .tree import WeightedRootedTree

    nodes = [f"t{i}" for i in range(n_nodes)]
    edges = []
    for i in range(1, n_nodes):
        edges.append((nodes[i], nodes[rng.randrange(i)], _rational(rng, 1, 6, (1, 2, 3))))
    marked = [nodes[0]] + [v for v in nodes[1:] if rng.random() < mark_prob]
    return WeightedRootedTree.from_edges(nodes[0], edges, marked)
