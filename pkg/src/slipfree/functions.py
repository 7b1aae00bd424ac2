"""Real-valued functions on finite quasi-metric spaces.

Semi-Lipschitz constants follow the one-sided condition
``f(x) - f(y) <= L * d(y, x)``. A pair with ``d(y, x) = 0`` forces
``f(x) <= f(y)``; if that fails no finite ``L`` exists and the constant is
:data:`~slipfree.rational.INF`.
"""

from dataclasses import dataclass
from types import MappingProxyType

from .rational import INF, Fraction, to_fraction
from .space import METRIC, QuasiMetricSpace, SpaceError


@dataclass(frozen=True, eq=False)
class PointFunction:
    """Exact values on ``domain`` (all points unless given a subset)."""

    space: QuasiMetricSpace
    values: MappingProxyType

    def __init__(self, space, values):
        if not isinstance(values, dict) and not isinstance(values, MappingProxyType):
            values = dict(enumerate(values))
        vals = {}
        for key, v in values.items():
            i = space.index(key) if isinstance(key, str) else key
            if i not in range(space.n):
                raise SpaceError(f"point index {i} out of range", "domain", (i,))
            vals[i] = to_fraction(v)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", MappingProxyType(dict(sorted(vals.items()))))

    @classmethod
    def by_label(cls, space, mapping):
        return cls(space, {space.index(k): v for k, v in mapping.items()})

    @property
    def domain(self) -> tuple:
        return tuple(self.values)

    @property
    def is_full(self) -> bool:
        return len(self.values) == self.space.n

    def __call__(self, i) -> Fraction:
        return self.values[i]

    def __neg__(self):
        return PointFunction(self.space, {i: -v for i, v in self.values.items()})

    def __eq__(self, other):
        return (isinstance(other, PointFunction) and self.space == other.space
                and dict(self.values) == dict(other.values))

    def __hash__(self):
        return hash((self.space.labels, tuple(self.values.items())))

    def __repr__(self):
        body = ", ".join(f"{self.space.labels[i]}: {v}" for i, v in self.values.items())
        return f"PointFunction({{{body}}})"

    def restrict(self, indices):
        return PointFunction(self.space, {i: self.values[i] for i in indices})

    def vanishes_at_base(self) -> bool:
        return self.values.get(self.space.base) == 0

    def vector(self) -> tuple:
        """Values at the non-base points, in coordinate order."""
        return tuple(self.values[i] for i in self.space.free_indices)

    @classmethod
    def from_vector(cls, space, vec):
        vals = {space.base: Fraction(0)}
        vals.update(zip(space.free_indices, (to_fraction(v) for v in vec)))
        return cls(space, vals)


def _pairs(f):
    dom = f.domain
    return [(x, y) for x in dom for y in dom if x != y]


def ratio_sups(f: PointFunction):
    """The plain and the zero-clipped sup of ``(f(x)-f(y))/d(y,x)`` over d(y,x) > 0.

    Returns ``(plain, clipped)``, or ``(None, None)`` when no pair has
    positive distance. The two agree whenever ``f`` is d-monotone.
    """
    d = f.space.d
    plain = clipped = None
    for x, y in _pairs(f):
        dyx = d[y][x]
        if dyx > 0:
            r = (f(x) - f(y)) / dyx
            plain = r if plain is None else max(plain, r)
            c = max(r, Fraction(0))
            clipped = c if clipped is None else max(clipped, c)
    return plain, clipped


def slip_norm(f: PointFunction):
    """Semi-Lipschitz constant of ``f`` on its domain, or INF."""
    d = f.space.d
    best = Fraction(0)
    for x, y in _pairs(f):
        diff = f(x) - f(y)
        dyx = d[y][x]
        if dyx == 0:
            if diff > 0:
                return INF
        elif diff > 0:
            r = diff / dyx
            if r > best:
                best = r
    return best


def lip_norm(f: PointFunction, metric: QuasiMetricSpace = None):
    """Lipschitz constant of ``f`` with respect to a metric on the same points."""
    metric = f.space if metric is None else metric
    if metric.kind != METRIC:
        raise SpaceError(f"lip_norm needs a metric, got {metric.kind}", "kind")
    if metric.labels != f.space.labels:
        raise SpaceError("function and metric live on different point sets", "domain")
    best = Fraction(0)
    dom = f.domain
    for a in range(len(dom)):
        for b in range(a + 1, len(dom)):
            x, y = dom[a], dom[b]
            r = abs(f(x) - f(y)) / metric.d[x][y]
            if r > best:
                best = r
    return best


def is_d_monotone(f: PointFunction):
    """``(True, None)`` or ``(False, (y, x))`` with d(y, x) = 0 and f(x) > f(y).

    The witness pair is given as labels in the order they index ``d``.
    """
    d = f.space.d
    for x, y in _pairs(f):
        if d[y][x] == 0 and f(x) > f(y):
            return False, (f.space.labels[y], f.space.labels[x])
    return True, None


def distance_function(space: QuasiMetricSpace, x) -> PointFunction:
    """``d(x, .) - d(x, x0)``: semi-Lipschitz with constant 1 when it is not constant."""
    d = space.d
    return PointFunction(space, [d[x][z] - d[x][space.base] for z in range(space.n)])


def mcshane_extend(f: PointFunction) -> PointFunction:
    """Extend ``f`` from its domain M to the whole space, keeping the constant.

    Uses ``f~(x) = min over m in M of f(m) + L d(m, x)`` with ``L`` the
    semi-Lipschitz constant of ``f`` on M.
    """
    space = f.space
    if space.base not in f.values:
        raise SpaceError("extension domain must contain the base point", "domain",
                         (space.base_label,))
    L = slip_norm(f)
    if L is INF:
        raise SpaceError("function is not semi-Lipschitz on its domain", "semi-lipschitz")
    d = space.d
    out = {}
    for x in range(space.n):
        out[x] = min(f(m) + L * d[m][x] for m in f.domain)
    return PointFunction(space, out)
