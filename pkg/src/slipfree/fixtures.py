"""Small named spaces used throughout the tests and demos."""

from .asymmetrize import ConeSpec, canonical_asym, real_line
from .rational import Fraction, fmt, to_fraction
from .space import adjoin_basepoint, validate
from .tree import WeightedRootedTree, path_metric, path_tree


def skew_triangle():
    """Three points, all distances 1 except d(x1, x0) = 3/2."""
    d = [[0, 1, 1], [Fraction(3, 2), 0, 1], [1, 1, 0]]
    return validate(d, 0, ("x0", "x1", "x2"))


def naturals_hemi(n):
    """Points 0..n with d(a, b) = 1 unless b is 0 or b = a (then 0)."""
    pts = range(n + 1)
    return validate([[0 if b in (0, a) else 1 for b in pts] for a in pts], 0,
                    [str(p) for p in pts])


def u_space(points):
    """``d(x, y) = max(y - x, 0)`` on rationals; base 0."""
    pts = sorted(set(to_fraction(p) for p in points))
    return validate([[max(t - s, Fraction(0)) for t in pts] for s in pts],
                    pts.index(Fraction(0)), [fmt(p) for p in pts])


def two_point_hemi():
    """d(a, b) = 1, d(b, a) = 0."""
    return validate([[0, 1], [0, 0]], 0, ("a", "b"))


def three_point_hemi():
    """d(a, b) = d(b, c) = 1, d(a, c) = 2, zero otherwise."""
    return validate([[0, 1, 2], [0, 0, 1], [0, 0, 0]], 0, ("a", "b", "c"))


def directed_cycle(n):
    """``d(i, j) = (j - i) mod n``: travel only one way round."""
    return validate([[(j - i) % n for j in range(n)] for i in range(n)], 0,
                    [f"c{i}" for i in range(n)])


def y_tree():
    """Root 0 with two unit edges to b and c."""
    return WeightedRootedTree.from_edges("0", [("b", "0", 1), ("c", "0", 1)])


def path_monotone(points=(0, 1, 2, 3)):
    t = path_tree(points)
    return canonical_asym(path_metric(t), ConeSpec.tree_monotone(t))


def _named():
    return {
        "single": validate([[0]]),
        "two-point-metric": validate([[0, 1], [1, 0]], 0, ("a", "b")),
        "skew-triangle": skew_triangle(),
        "hemi-0..2": naturals_hemi(2),
        "hemi-0..3": naturals_hemi(3),
        "hemi-0..2-adjoined": adjoin_basepoint(naturals_hemi(2)),
        "cycle-3": directed_cycle(3),
        "cycle-4": directed_cycle(4),
        "u-0..2": u_space([0, 1, 2]),
        "u-0..3": u_space([0, 1, 2, 3]),
        "line-0,1,3": real_line([0, 1, 3]),
        "line--2,0,2": real_line([-2, 0, 2]),
        "hemi-pair": two_point_hemi(),
        "hemi-chain": three_point_hemi(),
        "y-tree": path_metric(y_tree()),
        "path-monotone": path_monotone(),
        "lplus-0..3": canonical_asym(real_line([0, 1, 2, 3]), ConeSpec.nonneg()),
        "lplus--1..2": canonical_asym(real_line([-1, 0, 1, 2]), ConeSpec.nonneg()),
        "hemi-0..5": naturals_hemi(5),
        "line-0..5": real_line(range(6)),
    }


FIXTURES = _named()
SMALL = {k: v for k, v in FIXTURES.items() if v.n <= 4}
