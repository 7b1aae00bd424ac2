"""Finite quasi-metric spaces with exact rational distances."""

from dataclasses import dataclass
from itertools import product

from .rational import Fraction, to_fraction

METRIC = "metric"
QUASI_METRIC = "quasi-metric"
QUASI_HEMI_METRIC = "quasi-hemi-metric"
KINDS = (METRIC, QUASI_METRIC, QUASI_HEMI_METRIC)


class SpaceError(ValueError):
    """A violated axiom or precondition.

    ``axiom`` names what failed (``"negative"``, ``"diagonal"``,
    ``"triangle"``, ``"separation"``, ...) and ``witness`` holds the
    offending labels.
    """

    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class QuasiMetricSpace:
    """Points ``labels`` with quasi-distance ``d[i][j]`` from i to j.

    Build instances through :func:`validate`, which computes ``kind``.
    """

    labels: tuple
    d: tuple
    base: int
    kind: str

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def base_label(self):
        return self.labels[self.base]

    @property
    def free_indices(self) -> tuple:
        """Non-base point indices; these index molecule/function coordinates."""
        return tuple(i for i in range(self.n) if i != self.base)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SpaceError(f"unknown point {label!r}", "domain", (label,)) from None

    def dist(self, x, y) -> Fraction:
        return self.d[x][y]

    def matrix(self):
        return [list(row) for row in self.d]

    def same_points(self, other) -> bool:
        return self.labels == other.labels and self.base == other.base


def validate(matrix, base=0, labels=None) -> QuasiMetricSpace:
    """Check the axioms and return the space with its strongest kind.

    Raises :class:`SpaceError` naming the first violated axiom.
    """
    rows = [[to_fraction(v) for v in row] for row in matrix]
    n = len(rows)
    if n == 0:
        raise SpaceError("empty point set", "shape")
    if any(len(r) != n for r in rows):
        raise SpaceError("distance matrix is not square", "shape")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise SpaceError("label count does not match matrix size", "shape")
    if len(set(labels)) != n:
        raise SpaceError("labels are not distinct", "labels")
    if isinstance(base, str) or base not in range(n):
        if base in labels:
            base = labels.index(base)
        else:
            raise SpaceError(f"invalid base point {base!r}", "base")

    for i, j in product(range(n), repeat=2):
        if rows[i][j] < 0:
            raise SpaceError(
                f"negative distance d({labels[i]},{labels[j]}) = {rows[i][j]}",
                "negative", (labels[i], labels[j]))
    for i in range(n):
        if rows[i][i] != 0:
            raise SpaceError(f"nonzero diagonal d({labels[i]},{labels[i]})",
                             "diagonal", (labels[i],))
    for i in range(n):
        for j in range(n):
            dij = rows[i][j]
            for k in range(n):
                if dij > rows[i][k] + rows[k][j]:
                    raise SpaceError(
                        f"triangle inequality fails: d({labels[i]},{labels[j]}) = {dij} > "
                        f"d({labels[i]},{labels[k]}) + d({labels[k]},{labels[j]})",
                        "triangle", (labels[i], labels[k], labels[j]))
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] == 0 and rows[j][i] == 0:
                raise SpaceError(
                    f"separation fails: d({labels[i]},{labels[j]}) = d({labels[j]},{labels[i]}) = 0",
                    "separation", (labels[i], labels[j]))

    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    if all(rows[i][j] == rows[j][i] for i, j in offdiag):
        kind = METRIC
    elif all(rows[i][j] > 0 for i, j in offdiag):
        kind = QUASI_METRIC
    else:
        kind = QUASI_HEMI_METRIC
    return QuasiMetricSpace(labels, tuple(tuple(r) for r in rows), base, kind)


def from_function(points, dist, base_point, labels=None) -> QuasiMetricSpace:
    """Build a space from a distance callable; ``base_point`` is a member of ``points``."""
    pts = list(points)
    if labels is None:
        labels = [str(p) for p in pts]
    matrix = [[dist(p, q) for q in pts] for p in pts]
    return validate(matrix, pts.index(base_point), labels)


def reverse(space: QuasiMetricSpace) -> QuasiMetricSpace:
    """The reverse quasi-metric: transpose of the distance matrix."""
    n = space.n
    return validate([[space.d[j][i] for j in range(n)] for i in range(n)],
                    space.base, space.labels)


def _check_combiner(phi, a, b, value, labels):
    if value != to_fraction(phi(b, a)):
        raise SpaceError(f"combiner is not symmetric at ({a}, {b})", "combiner", labels)
    if value < max(a, b):
        raise SpaceError(f"combiner below max at ({a}, {b})", "combiner", labels)
    if (value == 0) != (a == 0 and b == 0):
        raise SpaceError(f"combiner zero-set wrong at ({a}, {b})", "combiner", labels)


def symmetrize(space: QuasiMetricSpace, mode="max") -> QuasiMetricSpace:
    """Symmetrized distance: ``max`` (s0), ``sum`` (s) or a custom combiner.

    A custom combiner is a callable ``phi(a, b)`` which must be symmetric,
    dominate ``max(a, b)`` and vanish exactly at ``(0, 0)``; these
    conditions are checked on every pair actually combined.
    """
    if mode == "max":
        phi = max
    elif mode == "sum":
        def phi(a, b):
            return a + b
    elif callable(mode):
        phi = mode
    else:
        raise ValueError(f"unknown symmetrization mode {mode!r}")
    n = space.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = space.d[i][j], space.d[j][i]
            value = to_fraction(phi(a, b))
            if callable(mode):
                _check_combiner(phi, a, b, value, (space.labels[i], space.labels[j]))
            out[i][j] = out[j][i] = value
    result = validate(out, space.base, space.labels)
    if result.kind != METRIC:  # pragma: no cover - guaranteed by construction
        raise SpaceError("symmetrization is not a metric", "kind")
    return result


def adjoin_basepoint(space: QuasiMetricSpace, label="xbar") -> QuasiMetricSpace:
    """Add a point at distance 1 to and from every point; it becomes the base.

    Triangle failures (some distance above 2) are reported, never repaired.
    """
    if label in space.labels:
        raise SpaceError(f"label {label!r} already used", "labels", (label,))
    n = space.n
    rows = [list(space.d[i]) + [Fraction(1)] for i in range(n)]
    rows.append([Fraction(1)] * n + [Fraction(0)])
    return validate(rows, n, space.labels + (label,))


def equivalence_constant(space_a: QuasiMetricSpace, space_b: QuasiMetricSpace):
    """Best ``(c_low, c_high)`` with ``c_low*a <= b <= c_high*a`` entrywise.

    Returns ``None`` when the two are not equivalent, i.e. one vanishes on
    an ordered pair where the other does not.
    """
    if space_a.labels != space_b.labels:
        raise SpaceError("spaces have different point sets", "domain")
    ratios = []
    for i, j in product(range(space_a.n), repeat=2):
        if i == j:
            continue
        a, b = space_a.d[i][j], space_b.d[i][j]
        if (a == 0) != (b == 0):
            return None
        if a > 0:
            ratios.append(b / a)
    if not ratios:
        return Fraction(1), Fraction(1)
    return min(ratios), max(ratios)


def is_symmetric(space: QuasiMetricSpace) -> bool:
    return space.kind == METRIC


def subspace(space: QuasiMetricSpace, indices) -> QuasiMetricSpace:
    """Induced quasi-metric on ``indices`` (which must contain the base point)."""
    idx = sorted(set(indices))
    if space.base not in idx:
        raise SpaceError("subspace must contain the base point", "base", (space.base_label,))
    return validate([[space.d[i][j] for j in idx] for i in idx], idx.index(space.base),
                    [space.labels[i] for i in idx])
