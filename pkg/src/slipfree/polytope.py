"""Exact H/V representations of small polyhedra (dimension at most 3).

The semi-Lipschitz unit ball lives in function coordinates ``f(x), x != base``;
its asymmetric polar, the free-space unit ball, lives in molecule
coordinates over the same index order. Unbounded bodies carry recession rays.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, lcm

from .freespace import Molecule, dual_norm, elementary_molecule
from .functions import PointFunction, slip_norm
from .rational import INF, Fraction, fmt
from .space import METRIC, QuasiMetricSpace, SpaceError

MAX_DIM = 3


@dataclass(frozen=True)
class HRep:
    """``{v : normal . v <= rhs}`` for every row."""

    dimension: int
    rows: tuple

    @classmethod
    def from_rows(cls, dimension, rows):
        return cls(dimension, tuple((tuple(Fraction(a) for a in nrm), Fraction(b))
                                    for nrm, b in rows))

    @classmethod
    def from_program(cls, program):
        """Feasible region of an LP, with variables in declaration order."""
        pos = {v: k for k, v in enumerate(program.variables)}
        n = len(pos)
        rows = []

        def vec(coeffs, sign):
            out = [Fraction(0)] * n
            for v, a in coeffs.items():
                out[pos[v]] = sign * a
            return out

        for con in program.constraints:
            if con.rel in ("<=", "="):
                rows.append((vec(con.coeffs, 1), con.rhs))
            if con.rel in (">=", "="):
                rows.append((vec(con.coeffs, -1), -con.rhs))
        for v, (lo, hi) in program.bounds.items():
            if lo is not None:
                rows.append((vec({v: 1}, -1), -lo))
            if hi is not None:
                rows.append((vec({v: 1}, 1), hi))
        return cls.from_rows(n, rows)

    def contains(self, point) -> bool:
        return all(_dot(nrm, point) <= b for nrm, b in self.rows)

    def recedes(self, ray) -> bool:
        return all(_dot(nrm, ray) <= 0 for nrm, _ in self.rows)


@dataclass(frozen=True)
class VRep:
    """Vertices and extreme rays, sorted lexicographically.

    If the body contains a line, ``lineality`` spans those directions and
    ``vertices``/``rays`` describe its section orthogonal to them.
    """

    vertices: tuple
    rays: tuple = ()
    lineality: tuple = field(default=())

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lineality


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _rref(rows, ncols):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols) -> list:
    m, pivots = _rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(_primitive(v))
    return basis


def _solve_square(rows, rhs):
    n = len(rows)
    m, pivots = _rref([list(r) + [b] for r, b in zip(rows, rhs)], n)
    if pivots != list(range(n)):
        return None
    return tuple(m[i][n] for i in range(n))


def _primitive(v):
    """Positive rescaling to coprime integers, so equal directions compare equal."""
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints) if g else tuple(Fraction(0) for _ in v)


def enumerate_vertices(h: HRep) -> VRep:
    """Vertices by intersecting row subsets, then the recession rays.

    Raises for dimension above 3, where the subset search stops being cheap.
    """
    n = h.dimension
    if n > MAX_DIM:
        raise SpaceError(f"vertex enumeration supports dimension <= {MAX_DIM}, got {n}",
                         "dimension")
    normals = [nrm for nrm, _ in h.rows]
    lin = nullspace(normals, n) if normals else [_primitive(
        [Fraction(int(i == k)) for i in range(n)]) for k in range(n)]
    k = len(lin)
    zero = [Fraction(0)] * k
    vertices = set()
    for subset in combinations(range(len(h.rows)), n - k):
        sys = [normals[i] for i in subset] + lin
        p = _solve_square(sys, [h.rows[i][1] for i in subset] + zero)
        if p is not None and h.contains(p):
            vertices.add(p)
    rays = set()
    if vertices and n - k >= 1:
        for subset in combinations(range(len(h.rows)), n - k - 1):
            ns = nullspace([normals[i] for i in subset] + lin, n)
            if len(ns) != 1:
                continue
            for sign in (1, -1):
                r = tuple(sign * x for x in ns[0])
                if h.recedes(r):
                    rays.add(r)
    return VRep(tuple(sorted(vertices)), tuple(sorted(rays)), tuple(sorted(lin)))


def asymmetric_polar(v: VRep) -> HRep:
    """``<vertex, .> <= 1`` per vertex, ``<ray, .> <= 0`` per ray or line direction."""
    if not v.vertices:
        raise SpaceError("polar needs at least one vertex", "empty")
    dim = len(v.vertices[0])
    rows = [(p, Fraction(1)) for p in v.vertices]
    rows += [(r, Fraction(0)) for r in v.rays]
    for l in v.lineality:
        rows += [(l, Fraction(0)), (tuple(-x for x in l), Fraction(0))]
    return HRep.from_rows(dim, rows)


def _check_size(space):
    if space.n - 1 > MAX_DIM:
        raise SpaceError(f"polytope operations support at most {MAX_DIM + 1} points",
                         "dimension")


def slip_ball_hrep(space: QuasiMetricSpace) -> HRep:
    """One row ``f(x) - f(y) <= d(y, x)`` per ordered pair, base coordinate dropped."""
    _check_size(space)
    pos = {i: k for k, i in enumerate(space.free_indices)}
    rows = []
    for x in range(space.n):
        for y in range(space.n):
            if x == y:
                continue
            nrm = [Fraction(0)] * len(pos)
            if x in pos:
                nrm[pos[x]] += 1
            if y in pos:
                nrm[pos[y]] -= 1
            rows.append((nrm, space.d[y][x]))
    return HRep.from_rows(len(pos), rows)


def lip_ball_hrep(metric: QuasiMetricSpace) -> HRep:
    if metric.kind != METRIC:
        raise SpaceError(f"Lipschitz ball needs a metric, got {metric.kind}", "kind")
    return slip_ball_hrep(metric)


def slip_ball(space) -> VRep:
    return enumerate_vertices(slip_ball_hrep(space))


def free_ball(space) -> VRep:
    """The free-space unit ball: polar of the semi-Lipschitz ball."""
    return enumerate_vertices(asymmetric_polar(slip_ball(space)))


def molecule_generators(space) -> VRep:
    """Elementary molecules plus 0 as points, zero-cost dipoles as rays."""
    _check_size(space)
    pts = {tuple(Fraction(0) for _ in space.free_indices)}
    rays = set()
    for x in range(space.n):
        for y in range(space.n):
            if x == y:
                continue
            if space.d[y][x] > 0:
                pts.add(elementary_molecule(space, x, y).vector())
            else:
                dip = Molecule.delta(space, x) - Molecule.delta(space, y)
                rays.add(_primitive(list(dip.vector())))
    return VRep(tuple(sorted(pts)), tuple(sorted(rays)))


@dataclass(frozen=True)
class BipolarReport:
    ok: bool
    body: VRep
    failures: tuple = ()


def bipolar_check(space) -> BipolarReport:
    """Polar of the molecule set, polar again, compared with ``dual_norm <= 1``.

    The body ``{Q : dual_norm(Q) <= 1}`` is generated by the elementary
    molecules, 0 and the zero-cost dipoles, so membership is checked both
    ways: body vertices/rays against ``dual_norm``, generators against the body.
    """
    gens = molecule_generators(space)
    slip = enumerate_vertices(asymmetric_polar(gens))
    outer = asymmetric_polar(slip)
    body = enumerate_vertices(outer)
    fails = []
    for v in body.vertices:
        if dual_norm(Molecule.from_vector(space, v)) > 1:
            fails.append(("vertex outside ball", v))
    for r in body.rays + body.lineality + tuple(tuple(-x for x in l) for l in body.lineality):
        if dual_norm(Molecule.from_vector(space, r)) != 0:
            fails.append(("ray with positive norm", r))
    for p in gens.vertices:
        if not outer.contains(p):
            fails.append(("molecule outside body", p))
    for r in gens.rays:
        if not outer.recedes(r):
            fails.append(("dipole not a recession direction", r))
    return BipolarReport(not fails, body, tuple(fails))


def reversal_constant(space):
    """Smallest ``M`` with ``||-Q| <= M ||Q|`` for all molecules; INF if the ball is unbounded."""
    ball = free_ball(space)
    if not ball.bounded:
        return INF
    best = Fraction(0)
    for v in ball.vertices:
        Q = Molecule.from_vector(space, v)
        up = dual_norm(Q)
        if up:
            best = max(best, dual_norm(-Q) / up)
    return best


def vertex_slip_norms(space) -> list:
    """``slip_norm`` at every slip-ball vertex, in vertex order."""
    return [slip_norm(PointFunction.from_vector(space, v)) for v in slip_ball(space).vertices]


# ---------------------------------------------------------------- SVG

_SIZE = 400
_PAD = 40


def _coord(q: Fraction) -> str:
    """Pixels to two decimals, rounded exactly."""
    hundredths = round(q * 100)
    sign = "-" if hundredths < 0 else ""
    a = abs(hundredths)
    return f"{sign}{a // 100}.{a % 100:02d}"


def _point_label(p):
    return "(" + ", ".join(fmt(x) for x in p) + ")"


def render_svg(space, polar=False) -> str:
    """Two-dimensional picture of the slip ball, or with ``polar`` the free ball.

    Rays of an unbounded ball are drawn as dashed segments to the frame.
    Output depends only on the exact vertex data.
    """
    if space.n != 3:
        raise SpaceError("SVG output needs exactly 3 points (dimension 2)", "dimension")
    body = free_ball(space) if polar else slip_ball(space)
    pts = list(body.vertices)
    extent = max([abs(c) for p in pts for c in p] + [Fraction(1)])
    extent = Fraction(int(extent * 2) + 1, 2)  # next half-integer above
    scale = Fraction(_SIZE - 2 * _PAD, 2) / extent
    mid = Fraction(_SIZE, 2)

    def px(p):
        return mid + p[0] * scale, mid - p[1] * scale

    name = space.labels
    free = [name[i] for i in space.free_indices]
    title = "free-space unit ball" if polar else "semi-Lipschitz unit ball"
    axes = ("Q", "Q") if polar else ("f", "f")
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
           f'viewBox="0 0 {_SIZE} {_SIZE}">',
           f'<title>{title}</title>',
           f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE}" fill="white"/>',
           f'<line x1="{_PAD // 2}" y1="{_SIZE // 2}" x2="{_SIZE - _PAD // 2}" '
           f'y2="{_SIZE // 2}" stroke="gray"/>',
           f'<line x1="{_SIZE // 2}" y1="{_PAD // 2}" x2="{_SIZE // 2}" '
           f'y2="{_SIZE - _PAD // 2}" stroke="gray"/>',
           f'<text x="{_SIZE - _PAD // 2}" y="{_SIZE // 2 - 6}" font-size="12" '
           f'text-anchor="end">{axes[0]}({free[0]})</text>',
           f'<text x="{_SIZE // 2 + 6}" y="{_PAD // 2 + 10}" font-size="12">'
           f'{axes[1]}({free[1]})</text>']
    if body.bounded:
        path = " ".join(f"{_coord(x)},{_coord(y)}" for x, y in map(px, _cyclic(pts)))
        out.append(f'<polygon points="{path}" fill="#cfe2f3" stroke="#1f4e79" '
                   f'stroke-width="2"/>')
    else:
        rows = asymmetric_polar(slip_ball(space)).rows
        reach = 2 * extent
        segments = []
        for a, b in combinations(pts, 2):
            if any(_dot(nrm, a) == rhs and _dot(nrm, b) == rhs for nrm, rhs in rows):
                segments.append((a, b, ""))
        for v in pts:
            for r in body.rays:
                if any(_dot(nrm, v) == rhs and _dot(nrm, r) == 0 for nrm, rhs in rows):
                    top = max(abs(c) for c in r)
                    far = tuple(a + reach * c / top for a, c in zip(v, r))
                    segments.append((v, far, ' stroke-dasharray="6,4"'))
        for a, b, style in segments:
            (x1, y1), (x2, y2) = px(a), px(b)
            out.append(f'<line x1="{_coord(x1)}" y1="{_coord(y1)}" x2="{_coord(x2)}" '
                       f'y2="{_coord(y2)}" stroke="#1f4e79" stroke-width="2"{style}/>')
    for p in pts:
        x, y = px(p)
        out.append(f'<circle cx="{_coord(x)}" cy="{_coord(y)}" r="3" fill="#1f4e79"/>')
        out.append(f'<text x="{_coord(x + 6)}" y="{_coord(y - 6)}" font-size="11">'
                   f'{_point_label(p)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cyclic(pts):
    """Vertices in boundary order, by exact angle comparison around their centroid."""
    if len(pts) < 3:
        return pts
    c = tuple(sum(p[k] for p in pts) / len(pts) for k in range(2))

    def key(p):
        dx, dy = p[0] - c[0], p[1] - c[1]
        half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
        return half, _Slope(dx, dy)

    return sorted(pts, key=key)


class _Slope:
    """Orders vectors in the same half plane by angle, without trigonometry."""

    __slots__ = ("dx", "dy")

    def __init__(self, dx, dy):
        self.dx, self.dy = dx, dy

    def __lt__(self, other):
        return self.dx * other.dy - self.dy * other.dx > 0
