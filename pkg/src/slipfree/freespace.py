"""Molecules and their norms in the semi-Lipschitz free space.

A molecule is a finite combination of evaluation functionals ``delta(x)``.
Its asymmetric norm is computed two independent ways:

* :func:`dual_norm` maximizes ``<Q, f>`` over the unit ball of
  semi-Lipschitz functions vanishing at the base point;
* :func:`kr_norm` minimizes the transport cost of writing ``Q`` as a
  nonnegative combination of dipoles ``delta(y) - delta(z)`` priced at
  ``d(z, y)``.

The two are LP duals of each other and agree exactly.
"""

from dataclasses import dataclass
from types import MappingProxyType

from . import lp
from .functions import PointFunction
from .rational import INF, Fraction, fmt, to_fraction
from .space import QuasiMetricSpace, SpaceError, symmetrize


class Molecule:
    """Finitely supported rational coefficients on non-base points.

    Base-point coefficients and zeros are dropped on construction, so
    equal molecules have equal coefficient maps.
    """

    __slots__ = ("space", "coefficients")

    def __init__(self, space: QuasiMetricSpace, coefficients=None):
        coeffs = {}
        for key, v in (coefficients or {}).items():
            i = space.index(key) if isinstance(key, str) else key
            if i not in range(space.n):
                raise SpaceError(f"point index {i} out of range", "domain", (i,))
            coeffs[i] = coeffs.get(i, Fraction(0)) + to_fraction(v)
        coeffs.pop(space.base, None)
        self.space = space
        self.coefficients = MappingProxyType(
            {i: c for i, c in sorted(coeffs.items()) if c != 0})

    @classmethod
    def delta(cls, space, x):
        return cls(space, {x: 1})

    @classmethod
    def by_label(cls, space, mapping):
        return cls(space, {space.index(k): v for k, v in mapping.items()})

    @classmethod
    def from_vector(cls, space, vec):
        return cls(space, dict(zip(space.free_indices, vec)))

    def vector(self) -> tuple:
        return tuple(self.coefficients.get(i, Fraction(0)) for i in self.space.free_indices)

    def on(self, space):
        """The same coefficients read on another space over the same points."""
        if space.labels != self.space.labels or space.base != self.space.base:
            raise SpaceError("molecule and target space have different points", "domain")
        return Molecule(space, self.coefficients)

    def _check(self, other):
        if not isinstance(other, Molecule):
            return NotImplemented
        if other.space.labels != self.space.labels or other.space.base != self.space.base:
            raise SpaceError("molecules live on different spaces", "domain")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, Fraction(0)) + c
        return Molecule(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Molecule(self.space, {i: -c for i, c in self.coefficients.items()})

    def __mul__(self, scalar):
        s = to_fraction(scalar)
        return Molecule(self.space, {i: s * c for i, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / to_fraction(scalar))

    def __eq__(self, other):
        return (isinstance(other, Molecule) and self.space.labels == other.space.labels
                and dict(self.coefficients) == dict(other.coefficients))

    def __hash__(self):
        return hash((self.space.labels, tuple(self.coefficients.items())))

    def __bool__(self):
        return bool(self.coefficients)

    def __repr__(self):
        if not self.coefficients:
            return "Molecule(0)"
        parts = []
        for i, c in self.coefficients.items():
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {fmt(abs(c))}*d({self.space.labels[i]})")
        terms = " ".join(parts)
        terms = terms[2:] if terms.startswith("+") else "-" + terms[2:]
        return f"Molecule({terms})"


@dataclass(frozen=True)
class KRDecomposition:
    """Dipole terms ``(lam, y, z)`` meaning ``lam * (delta(y) - delta(z))``."""

    terms: tuple
    cost: Fraction

    def molecule(self, space) -> Molecule:
        out = {}
        for lam, y, z in self.terms:
            out[y] = out.get(y, Fraction(0)) + lam
            out[z] = out.get(z, Fraction(0)) - lam
        return Molecule(space, out)

    def total_cost(self, space) -> Fraction:
        return sum((lam * space.d[z][y] for lam, y, z in self.terms), Fraction(0))


def _fname(space, i):
    return f"f[{space.labels[i]}]"


def slip_ball_program(space: QuasiMetricSpace, objective=None) -> lp.LinearProgram:
    """LP over the semi-Lipschitz unit ball: ``f(x) - f(y) <= d(y, x)`` for all pairs."""
    prog = lp.LinearProgram()
    idx = space.free_indices
    for i in idx:
        prog.add_variable(_fname(space, i))
    d = space.d
    for x in range(space.n):
        for y in range(space.n):
            if x == y:
                continue
            coeffs = {}
            if x != space.base:
                coeffs[_fname(space, x)] = 1
            if y != space.base:
                coeffs[_fname(space, y)] = coeffs.get(_fname(space, y), 0) - 1
            prog.add_constraint(coeffs, "<=", d[y][x],
                                name=f"sl[{space.labels[x]},{space.labels[y]}]")
    if objective is not None:
        prog.maximize({_fname(space, i): c for i, c in objective.items()})
    return prog


def dual_program(Q: Molecule) -> lp.LinearProgram:
    return slip_ball_program(Q.space, dict(Q.coefficients))


def dual_solution(Q: Molecule):
    """``(value, maximizer)`` of the dual LP; the maximizer is a PointFunction."""
    space = Q.space
    out = lp.solve(dual_program(Q))
    if not out.optimal:  # pragma: no cover - the ball is a bounded polytope
        raise AssertionError(f"dual LP ended {out.status}")
    f = PointFunction.from_vector(space, [out.witness[_fname(space, i)]
                                          for i in space.free_indices])
    return out.value, f


def dual_norm(Q: Molecule) -> Fraction:
    """``sup <Q, f>`` over semi-Lipschitz ``f`` with constant at most 1."""
    if not Q.coefficients:
        return Fraction(0)
    return dual_solution(Q)[0]


def kr_program(Q: Molecule) -> lp.LinearProgram:
    space = Q.space
    n, d = space.n, space.d
    prog = lp.LinearProgram()
    cost = {}
    for z in range(n):
        for y in range(n):
            if z != y:
                v = prog.add_variable(f"lam[{space.labels[z]}>{space.labels[y]}]", lower=0)
                cost[v] = d[z][y]
    for x in space.free_indices:
        coeffs = {}
        for other in range(n):
            if other == x:
                continue
            coeffs[f"lam[{space.labels[other]}>{space.labels[x]}]"] = 1
            coeffs[f"lam[{space.labels[x]}>{space.labels[other]}]"] = -1
        prog.add_constraint(coeffs, "=", Q.coefficients.get(x, 0),
                            name=f"bal[{space.labels[x]}]")
    prog.minimize(cost)
    return prog


def kr_norm(Q: Molecule):
    """Minimal transport cost and an optimal dipole decomposition.

    The base point has no balance row, so mass may enter or leave there.
    """
    space = Q.space
    if not Q.coefficients:
        return Fraction(0), KRDecomposition((), Fraction(0))
    out = lp.solve(kr_program(Q))
    if not out.optimal:  # pragma: no cover - always feasible and bounded below
        raise AssertionError(f"KR LP ended {out.status}")
    terms = []
    for z in range(space.n):
        for y in range(space.n):
            if z == y:
                continue
            lam = out.witness[f"lam[{space.labels[z]}>{space.labels[y]}]"]
            if lam:
                terms.append((lam, y, z))
    return out.value, KRDecomposition(tuple(terms), out.value)


def sym_free_norm(Q: Molecule, mode="max") -> Fraction:
    """Classical Lipschitz-free norm of ``Q`` over the symmetrized space."""
    metric = symmetrize(Q.space, mode)
    return dual_norm(Q.on(metric))


def elementary_molecule(space: QuasiMetricSpace, x, y) -> Molecule:
    """``(delta(x) - delta(y)) / d(y, x)``; requires ``d(y, x) > 0``."""
    dyx = space.d[y][x]
    if dyx == 0:
        raise SpaceError(f"d({space.labels[y]},{space.labels[x]}) = 0", "molecule",
                         (space.labels[x], space.labels[y]))
    return (Molecule.delta(space, x) - Molecule.delta(space, y)) / dyx


def pair(Q: Molecule, f: PointFunction) -> Fraction:
    """Evaluation ``sum lam_x f(x)``."""
    if f.space.labels != Q.space.labels:
        raise SpaceError("molecule and function live on different spaces", "domain")
    if not f.is_full:
        raise SpaceError("function must be defined on every point", "domain")
    if f(Q.space.base) != 0:
        raise SpaceError("function must vanish at the base point", "base")
    return sum((c * f(i) for i, c in Q.coefficients.items()), Fraction(0))


def molecule_distance(Q1: Molecule, Q2: Molecule) -> Fraction:
    """Induced quasi-distance ``||Q2 - Q1|``."""
    return dual_norm(Q2 - Q1)


def _as_index_map(fmap, source, target):
    if isinstance(fmap, dict):
        items = fmap.items()
    else:
        items = enumerate(fmap)
    out = {}
    for a, b in items:
        i = source.index(a) if isinstance(a, str) else a
        j = target.index(b) if isinstance(b, str) else b
        out[i] = j
    if sorted(out) != list(range(source.n)):
        raise SpaceError("point map must be defined on every source point", "domain")
    return out


def map_slip_constant(fmap, source: QuasiMetricSpace, target: QuasiMetricSpace):
    """Smallest ``L`` with ``d2(f(y), f(x)) <= L d1(y, x)``, or INF."""
    m = _as_index_map(fmap, source, target)
    best = Fraction(0)
    for x in range(source.n):
        for y in range(source.n):
            if x == y:
                continue
            num = target.d[m[y]][m[x]]
            den = source.d[y][x]
            if den == 0:
                if num > 0:
                    return INF
            elif num / den > best:
                best = num / den
    return best


def pushforward(fmap, Q: Molecule, target: QuasiMetricSpace) -> Molecule:
    """Linearization of a base-preserving semi-Lipschitz map, applied to ``Q``."""
    source = Q.space
    m = _as_index_map(fmap, source, target)
    if m[source.base] != target.base:
        raise SpaceError("map does not send base point to base point", "base")
    if map_slip_constant(m, source, target) is INF:
        raise SpaceError("map is not semi-Lipschitz", "semi-lipschitz")
    out = {}
    for i, c in Q.coefficients.items():
        out[m[i]] = out.get(m[i], Fraction(0)) + c
    return Molecule(target, out)


def operator_norm(fmap, source: QuasiMetricSpace, target: QuasiMetricSpace):
    """Norm of the linearized map, as a max over vertices of the source free ball.

    Only for sources with at most four points, where the ball's vertices
    and recession rays can be enumerated exactly.
    """
    from .polytope import free_ball

    if source.n > 4:
        raise SpaceError("operator_norm supports at most 4 source points", "dimension")
    if map_slip_constant(fmap, source, target) is INF:
        return INF
    ball = free_ball(source)
    best = Fraction(0)
    for r in ball.rays:
        if dual_norm(pushforward(fmap, Molecule.from_vector(source, r), target)) > 0:
            return INF
    for v in ball.vertices:
        val = dual_norm(pushforward(fmap, Molecule.from_vector(source, v), target))
        if val > best:
            best = val
    return best
