"""Cone-induced asymmetrizations of finite metric spaces and property checks.

For a metric ``D`` and a cone ``P`` of Lipschitz functions vanishing at the
base point, ``D_P(x, y)`` is the largest increase ``phi(y) - phi(x)`` over
``phi`` in ``P`` with Lipschitz constant at most 1. Each entry is one LP.
"""

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import lp
from .freespace import Molecule, dual_norm
from .functions import PointFunction, lip_norm, slip_norm
from .rational import Fraction, fmt, to_fraction
from .space import METRIC, QuasiMetricSpace, SpaceError, symmetrize, validate

NONNEG, TREE_MONOTONE, EXPLICIT = "nonneg", "tree-monotone", "explicit"


@dataclass(frozen=True)
class ConeSpec:
    """A polyhedral cone given by homogeneous inequalities ``sum c_x phi(x) >= 0``.

    Use the constructors: :meth:`nonneg`, :meth:`tree_monotone`, :meth:`explicit`.
    ``rows`` maps point labels to coefficients.
    """

    variant: str
    rows: tuple = ()
    tree: object = field(default=None, compare=False)

    @classmethod
    def nonneg(cls):
        return cls(NONNEG)

    @classmethod
    def tree_monotone(cls, tree):
        from .tree import atom_weights

        rows = tuple(((a, Fraction(1)), (pred, Fraction(-1)))
                     for a, (pred, _) in atom_weights(tree).items())
        return cls(TREE_MONOTONE, rows, tree)

    @classmethod
    def explicit(cls, rows):
        out = []
        for row in rows:
            items = tuple((k, to_fraction(v)) for k, v in dict(row).items())
            out.append(items)
        return cls(EXPLICIT, tuple(out))

    def inequalities(self, space: QuasiMetricSpace) -> list:
        """Rows as ``{index: coeff}`` on ``space``; base-point terms dropped."""
        if self.variant == NONNEG:
            return [{i: Fraction(1)} for i in space.free_indices]
        if self.variant == TREE_MONOTONE:
            t = self.tree
            if t.marked != space.labels or space.base_label != t.root:
                raise SpaceError("tree marked set and root must match the space", "cone")
        out = []
        for row in self.rows:
            coeffs = {}
            for label, c in row:
                i = space.index(label)
                if i != space.base:
                    coeffs[i] = coeffs.get(i, Fraction(0)) + c
            out.append({i: c for i, c in coeffs.items() if c})
        return out

    def contains(self, f: PointFunction) -> tuple:
        """``(True, None)`` or ``(False, violated_row)``."""
        for row in self.inequalities(f.space):
            if sum((c * f(i) for i, c in row.items()), Fraction(0)) < 0:
                return False, row
        return True, None


def slip_cone(space: QuasiMetricSpace) -> ConeSpec:
    """Semi-Lipschitz functions of ``space`` as a cone: ``phi(y) >= phi(x)`` when d(y, x) = 0."""
    rows = []
    for x in range(space.n):
        for y in range(space.n):
            if x != y and space.d[y][x] == 0:
                rows.append({space.labels[y]: 1, space.labels[x]: -1})
    return ConeSpec.explicit(rows)


def _phi(space, i):
    return f"phi[{space.labels[i]}]"


def cone_ball_program(metric: QuasiMetricSpace, cone: ConeSpec) -> lp.LinearProgram:
    """``phi`` in the cone with ``|phi(a) - phi(b)| <= D(a, b)`` and ``phi(base) = 0``."""
    if metric.kind != METRIC:
        raise SpaceError(f"asymmetrization needs a metric, got {metric.kind}", "kind")
    prog = lp.LinearProgram()
    for i in metric.free_indices:
        prog.add_variable(_phi(metric, i))
    for a in range(metric.n):
        for b in range(metric.n):
            if a == b:
                continue
            coeffs = {}
            if a != metric.base:
                coeffs[_phi(metric, a)] = 1
            if b != metric.base:
                coeffs[_phi(metric, b)] = -1
            prog.add_constraint(coeffs, "<=", metric.d[a][b],
                                name=f"lip[{metric.labels[a]},{metric.labels[b]}]")
    for k, row in enumerate(cone.inequalities(metric)):
        if row:
            prog.add_constraint({_phi(metric, i): c for i, c in row.items()}, ">=", 0,
                                name=f"cone{k}")
    return prog


def cone_norm(metric: QuasiMetricSpace, cone: ConeSpec, Q: Molecule) -> Fraction:
    """``sup <Q, phi>`` over ``phi`` in the cone with Lipschitz constant at most 1."""
    Q = Q.on(metric)
    if not Q.coefficients:
        return Fraction(0)
    prog = cone_ball_program(metric, cone)
    prog.maximize({_phi(metric, i): c for i, c in Q.coefficients.items()})
    out = lp.solve(prog)
    if not out.optimal:  # pragma: no cover - bounded and contains 0
        raise AssertionError(f"cone LP ended {out.status}")
    return out.value


def _entry(args):
    metric, cone, x, y = args
    if x == y:
        return Fraction(0)
    return cone_norm(metric, cone, Molecule.delta(metric, y) - Molecule.delta(metric, x))


def _workers():
    try:
        return max(1, int(os.environ.get("SLIPFREE_WORKERS", "1")))
    except ValueError:
        return 1


def canonical_asym(metric: QuasiMetricSpace, cone: ConeSpec) -> QuasiMetricSpace:
    """The matrix ``D_P``, validated (triangle inequality re-checked).

    Set ``SLIPFREE_WORKERS`` to spread the per-pair LPs over processes;
    the result does not depend on it.
    """
    cone.inequalities(metric)  # early shape check
    n = metric.n
    jobs = [(metric, cone, x, y) for x in range(n) for y in range(n)]
    workers = _workers()
    if workers > 1 and n > 3:
        with ProcessPoolExecutor(workers) as pool:
            vals = list(pool.map(_entry, jobs, chunksize=n))
    else:
        vals = [_entry(j) for j in jobs]
    rows = [vals[x * n:(x + 1) * n] for x in range(n)]
    return validate(rows, metric.base, metric.labels)


def closed_form_Dplus_reals(points) -> QuasiMetricSpace:
    """``D_P`` for the nonnegative cone on a finite set of rationals containing 0.

    ``D(s, t)`` is the largest ``phi(t) - phi(s)`` over 1-Lipschitz
    ``phi >= 0`` with ``phi(0) = 0``.
    """
    pts = sorted(set(to_fraction(p) for p in points))
    if Fraction(0) not in pts:
        raise SpaceError("point set must contain 0", "base")

    def dplus(s, t):
        if s == t:
            return Fraction(0)
        if 0 <= s <= t or t <= s <= 0:
            return abs(t - s)
        if 0 <= t <= s:
            return min(t, s - t)
        if s <= t <= 0:
            return min(abs(t), t - s)
        return abs(t)

    matrix = [[dplus(s, t) for t in pts] for s in pts]
    return validate(matrix, pts.index(Fraction(0)), [fmt(p) for p in pts])


def real_line(points) -> QuasiMetricSpace:
    """Usual metric on a finite set of rationals, based at 0."""
    pts = sorted(set(to_fraction(p) for p in points))
    if Fraction(0) not in pts:
        raise SpaceError("point set must contain 0", "base")
    return validate([[abs(s - t) for t in pts] for s in pts], pts.index(Fraction(0)),
                    [fmt(p) for p in pts])


@dataclass(frozen=True)
class SplitCertificate:
    positive: PointFunction
    negative: PointFunction
    lip: Fraction
    lip_positive: Fraction
    lip_negative: Fraction

    @property
    def ok(self) -> bool:
        return max(self.lip_positive, self.lip_negative) <= self.lip <= \
            self.lip_positive + self.lip_negative


def split_pos_neg(phi: PointFunction, metric: QuasiMetricSpace = None) -> SplitCertificate:
    """Pointwise parts ``phi = phi+ - phi-`` with their Lipschitz constants."""
    if not phi.vanishes_at_base():
        raise SpaceError("function must vanish at the base point", "base")
    pos = PointFunction(phi.space, {i: max(v, Fraction(0)) for i, v in phi.values.items()})
    neg = PointFunction(phi.space, {i: max(-v, Fraction(0)) for i, v in phi.values.items()})
    return SplitCertificate(pos, neg, lip_norm(phi, metric), lip_norm(pos, metric),
                            lip_norm(neg, metric))


# ---------------------------------------------------------------- properties

S, S_STAR, S0_STAR, H = "S", "S*", "S0*", "H"
HOLDS, HOLDS_ON_SAMPLE, COUNTEREXAMPLE = "holds", "holds-on-sample", "counterexample"


@dataclass(frozen=True)
class PropertyReport:
    property: str
    verdict: str
    witness: dict = None
    sample: dict = None

    @property
    def failed(self) -> bool:
        return self.verdict == COUNTEREXAMPLE

    def as_dict(self) -> dict:
        return {"property": self.property, "verdict": self.verdict,
                "witness": self.witness, "sample": self.sample}


def _labelled(space, mapping):
    return {space.labels[i]: fmt(v) for i, v in mapping.items()}


def _check_S(metric, cone, dp=None):
    """Exact: every cone row stays nonnegative on the SLip ball of ``D_P``.

    ``P`` sits inside ``SLip_0(D_P)`` by construction, so only the reverse
    inclusion is tested. Minimizing each row over the (bounded) ball decides it.
    """
    dp = dp or canonical_asym(metric, cone)
    from .freespace import slip_ball_program, _fname

    for row in cone.inequalities(metric):
        if not row:
            continue
        prog = slip_ball_program(dp)
        prog.maximize({_fname(dp, i): -c for i, c in row.items()})
        out = lp.solve(prog)
        if out.value > 0:
            f = PointFunction.from_vector(dp, [out.witness[_fname(dp, i)]
                                               for i in dp.free_indices])
            return dp, {"function": _labelled(dp, f.values),
                        "inequality": _labelled(dp, row),
                        "value": fmt(-out.value),
                        "slip_norm": fmt(slip_norm(f))}
    return dp, None


def _check_S_vertices(dp, cone):
    """Same decision by enumerating SLip-ball vertices (at most 4 points)."""
    from .polytope import enumerate_vertices, slip_ball_hrep

    for v in enumerate_vertices(slip_ball_hrep(dp)).vertices:
        f = PointFunction.from_vector(dp, v)
        ok, row = cone.contains(f)
        if not ok:
            return {"function": _labelled(dp, f.values), "inequality": _labelled(dp, row)}
    return None


def _molecule_sample(metric, rng, samples):
    n = metric.n
    for x in range(n):
        for y in range(n):
            if x != y:
                yield "pair", Molecule.delta(metric, y) - Molecule.delta(metric, x)
    for _ in range(samples):
        coeffs = {i: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                  for i in metric.free_indices}
        yield "random", Molecule(metric, coeffs)


def check_property(metric: QuasiMetricSpace, cone: ConeSpec, prop: str,
                   seed: int = 0, samples: int = 20) -> PropertyReport:
    """Decide (S) exactly; hunt counterexamples to (S*) or (S0*).

    (S*) and (S0*) include (S), so a failure of (S) is reported as their
    counterexample too.
    """
    if prop not in (S, S_STAR, S0_STAR):
        raise ValueError(f"unknown property {prop!r}")
    dp, bad = _check_S(metric, cone)
    if metric.n <= 4:
        vbad = _check_S_vertices(dp, cone)
        if (vbad is None) != (bad is None):  # pragma: no cover - two exact methods
            raise AssertionError("LP and vertex decisions of (S) disagree")
    if bad is not None:
        return PropertyReport(prop, COUNTEREXAMPLE, {"failed": S, **bad},
                              {"mode": "exact"})
    if prop == S:
        return PropertyReport(S, HOLDS, None, {"mode": "exact"})

    rng = random.Random(seed)
    checked = {"pair": 0, "random": 0}
    for origin, Q in _molecule_sample(metric, rng, samples):
        if not Q:
            continue
        checked[origin] += 1
        full = dual_norm(Q)
        up, down = cone_norm(metric, cone, Q), cone_norm(metric, cone, -Q)
        combined = up + down if prop == S_STAR else max(up, down)
        if full != combined:
            return PropertyReport(prop, COUNTEREXAMPLE, {
                "molecule": _labelled(metric, Q.coefficients),
                "free_norm": fmt(full), "cone_norm": fmt(up),
                "reverse_cone_norm": fmt(down), "combined": fmt(combined)},
                {"seed": seed, "pairs": checked["pair"], "random": checked["random"]})
    return PropertyReport(prop, HOLDS_ON_SAMPLE, None,
                          {"seed": seed, "pairs": checked["pair"], "random": checked["random"]})


def compatibility_constant(quasi: QuasiMetricSpace, mode="max") -> Fraction:
    """Smallest ``alpha`` with ``slip_norm(phi) <= alpha * lip_norm(phi)`` on SLip_0.

    One LP per ordered pair with ``d(y, x) > 0``: maximize ``phi(x) - phi(y)``
    over semi-Lipschitz ``phi`` in the unit ball of the symmetrized metric.
    """
    metric = symmetrize(quasi, mode)
    cone = slip_cone(quasi)
    alpha = Fraction(1)
    for x in range(quasi.n):
        for y in range(quasi.n):
            dyx = quasi.d[y][x]
            if x == y or dyx == 0:
                continue
            Q = Molecule.delta(metric, x) - Molecule.delta(metric, y)
            alpha = max(alpha, cone_norm(metric, cone, Q) / dyx)
    return alpha


def compatibility_constant_vertices(quasi: QuasiMetricSpace, mode="max") -> Fraction:
    """Same constant by vertex enumeration of the Lipschitz ball cut by the cone."""
    from .polytope import HRep, enumerate_vertices

    metric = symmetrize(quasi, mode)
    prog = cone_ball_program(metric, slip_cone(quasi))
    alpha = Fraction(1)
    for v in enumerate_vertices(HRep.from_program(prog)).vertices:
        f = PointFunction.from_vector(quasi, v)
        L = lip_norm(PointFunction.from_vector(metric, v))
        if L:
            alpha = max(alpha, slip_norm(f) / L)
    return alpha


def _decomposes(quasi, phi, bound):
    """Is there ``phi1`` with ``phi1`` and ``phi1 - phi`` semi-Lipschitz up to ``bound``?"""
    prog = lp.LinearProgram()
    names = {i: f"p1[{quasi.labels[i]}]" for i in quasi.free_indices}
    for name in names.values():
        prog.add_variable(name)
    for x in range(quasi.n):
        for y in range(quasi.n):
            if x == y:
                continue
            coeffs = {}
            if x != quasi.base:
                coeffs[names[x]] = 1
            if y != quasi.base:
                coeffs[names[y]] = coeffs.get(names[y], 0) - 1
            rhs = bound * quasi.d[y][x]
            prog.add_constraint(coeffs, "<=", rhs)
            prog.add_constraint(coeffs, "<=", rhs + phi(x) - phi(y))
    prog.maximize({})
    out = lp.solve(prog)
    if not out.optimal:
        return None
    return PointFunction.from_vector(quasi, [out.witness[names[i]] for i in quasi.free_indices])


def check_H(quasi: QuasiMetricSpace, mode="max", seed=0, samples=20):
    """``(report, alpha)``: hunt counterexamples to the splitting hypothesis.

    Tested on every vertex of the Lipschitz unit ball (at most 4 points)
    and on seeded random Lipschitz functions.
    """
    metric = symmetrize(quasi, mode)
    alpha = compatibility_constant(quasi, mode)
    candidates = []
    if quasi.n <= 4:
        from .polytope import enumerate_vertices, lip_ball_hrep

        candidates.extend(("vertex", v) for v in enumerate_vertices(lip_ball_hrep(metric)).vertices)
    rng = random.Random(seed)
    for _ in range(samples):
        candidates.append(("random", [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                                      for _ in quasi.free_indices]))
    counts = {"vertex": 0, "random": 0}
    for origin, vec in candidates:
        phi = PointFunction.from_vector(quasi, vec)
        L = lip_norm(PointFunction.from_vector(metric, vec))
        counts[origin] += 1
        if _decomposes(quasi, phi, L) is None:
            return PropertyReport(H, COUNTEREXAMPLE, {"function": _labelled(quasi, phi.values),
                                                      "lip_norm": fmt(L)},
                                  {"seed": seed, **counts}), alpha
    return PropertyReport(H, HOLDS_ON_SAMPLE, None, {"seed": seed, **counts}), alpha
