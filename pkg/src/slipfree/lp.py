"""Exact rational linear programming.

A two-phase tableau simplex over rationals with Bland's rule. Programs are
small (a few hundred columns at most), so every pivot is exact and the
optimal value carries no rounding error at all.

Variables are free unless bounds are given. Example::

    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_constraint({"x": 1}, "<=", Fraction(3, 2))
    lp.maximize({"x": 1})
    solve(lp).value   # Fraction(3, 2)
"""

from dataclasses import dataclass, field

from .rational import Fraction, fmt, to_fraction

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover - gmpy2 ships in the test image
    _num = Fraction

RELATIONS = ("<=", "=", ">=")
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


class LPError(ValueError):
    """Raised for malformed programs."""


@dataclass
class Constraint:
    coeffs: dict
    rel: str
    rhs: Fraction
    name: str = ""


@dataclass
class LinearProgram:
    variables: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    sense: str = "max"
    constraints: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def add_variable(self, name, lower=None, upper=None):
        if name in self.bounds:
            raise LPError(f"duplicate variable {name!r}")
        self.variables.append(name)
        lo = None if lower is None else to_fraction(lower)
        hi = None if upper is None else to_fraction(upper)
        self.bounds[name] = (lo, hi)
        return name

    def add_constraint(self, coeffs, rel, rhs, name=""):
        if rel not in RELATIONS:
            raise LPError(f"unknown relation {rel!r}")
        terms = {v: to_fraction(a) for v, a in coeffs.items() if a != 0}
        self.constraints.append(Constraint(terms, rel, to_fraction(rhs), name))

    def maximize(self, coeffs):
        self.sense = "max"
        self.objective = {v: to_fraction(a) for v, a in coeffs.items() if a != 0}

    def minimize(self, coeffs):
        self.sense = "min"
        self.objective = {v: to_fraction(a) for v, a in coeffs.items() if a != 0}

    def check(self):
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise LPError("duplicate variable names")
        if self.sense not in ("max", "min"):
            raise LPError(f"unknown sense {self.sense!r}")
        for v in self.objective:
            if v not in declared:
                raise LPError(f"objective references undeclared variable {v!r}")
        for k, con in enumerate(self.constraints):
            if con.rel not in RELATIONS:
                raise LPError(f"constraint {k}: unknown relation {con.rel!r}")
            for v in con.coeffs:
                if v not in declared:
                    raise LPError(f"constraint {k} references undeclared variable {v!r}")

    def listing(self) -> str:
        """Plain-text listing of the program, one line per row."""

        def expr(coeffs):
            parts = []
            for v in self.variables:
                a = coeffs.get(v, 0)
                if a == 0:
                    continue
                sign = "-" if a < 0 else "+"
                mag = abs(a)
                parts.append(f"{sign} {v}" if mag == 1 else f"{sign} {fmt(mag)} {v}")
            if not parts:
                return "0"
            text = " ".join(parts)
            return text[2:] if text.startswith("+ ") else text

        lines = [f"{'maximize' if self.sense == 'max' else 'minimize'}: {expr(self.objective)}",
                 "subject to:"]
        for k, con in enumerate(self.constraints):
            label = con.name or f"c{k}"
            lines.append(f"  {label}: {expr(con.coeffs)} {con.rel} {fmt(con.rhs)}")
        lines.append("bounds:")
        for v in self.variables:
            lo, hi = self.bounds.get(v, (None, None))
            if lo is None and hi is None:
                lines.append(f"  {v} free")
            else:
                left = "-inf" if lo is None else fmt(lo)
                right = "+inf" if hi is None else fmt(hi)
                lines.append(f"  {left} <= {v} <= {right}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Fraction = None
    witness: dict = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau; row 0 of ``obj`` holds reduced costs for a maximization."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.obj = [_num(0)] * ncols
        self.obj_rhs = _num(0)

    def set_objective(self, costs):
        # reduced costs r_j = c_B B^-1 a_j - c_j; the tableau rows already are B^-1 A
        obj = [-c for c in costs]
        val = _num(0)
        for i, b in enumerate(self.basis):
            cb = costs[b]
            if cb:
                row = self.rows[i]
                for k in range(self.ncols):
                    if row[k]:
                        obj[k] += cb * row[k]
                val += cb * self.rhs[i]
        self.obj = obj
        self.obj_rhs = val

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            inv = 1 / p
            for k in range(self.ncols):
                if row[k]:
                    row[k] *= inv
            self.rhs[r] *= inv
        nz = [k for k in range(self.ncols) if row[k]]
        br = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
                self.rhs[i] -= f * br
        f = self.obj[j]
        if f:
            for k in nz:
                self.obj[k] -= f * row[k]
            self.obj_rhs -= f * br
        self.basis[r] = j

    def run(self, allowed):
        """Maximize the current objective; Bland's rule on both choices."""
        while True:
            enter = None
            for k in range(self.ncols):
                if allowed[k] and self.obj[k] < 0:
                    enter = k
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def solve(program: LinearProgram) -> LPOutcome:
    """Solve ``program`` exactly; deterministic for identical input."""
    program.check()
    # each original variable v = const + sum(sign * column)
    subst = {}
    ncols = 0
    bound_rows = []
    for v in program.variables:
        lo, hi = program.bounds.get(v, (None, None))
        if lo is not None:
            subst[v] = (lo, [(ncols, 1)])
            if hi is not None:
                bound_rows.append(({ncols: Fraction(1)}, "<=", hi - lo))
            ncols += 1
        elif hi is not None:
            subst[v] = (hi, [(ncols, -1)])
            ncols += 1
        else:
            subst[v] = (Fraction(0), [(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    nstruct = ncols

    rows_spec = []
    for con in program.constraints:
        coeffs = {}
        rhs = con.rhs
        for v, a in con.coeffs.items():
            const, cols = subst[v]
            rhs -= a * const
            for col, sign in cols:
                coeffs[col] = coeffs.get(col, 0) + sign * a
        rows_spec.append(({c: a for c, a in coeffs.items() if a}, con.rel, rhs))
    rows_spec.extend(bound_rows)

    m = len(rows_spec)
    nslack = sum(1 for _, rel, _ in rows_spec if rel != "=")
    slack_of = []
    col = nstruct
    for _, rel, _ in rows_spec:
        if rel == "=":
            slack_of.append(None)
        else:
            slack_of.append(col)
            col += 1
    nart = 0
    needs_art = []
    for (coeffs, rel, rhs) in rows_spec:
        flip = rhs < 0
        slack_sign = {"<=": 1, ">=": -1, "=": 0}[rel] * (-1 if flip else 1)
        art = slack_sign != 1
        needs_art.append(art)
        nart += art
    total = nstruct + nslack + nart

    rows, rhs_list, basis = [], [], []
    art_col = nstruct + nslack
    for i, (coeffs, rel, rhs) in enumerate(rows_spec):
        flip = -1 if rhs < 0 else 1
        row = [_num(0)] * total
        for c, a in coeffs.items():
            row[c] = _num(a * flip)
        if slack_of[i] is not None:
            row[slack_of[i]] = _num((1 if rel == "<=" else -1) * flip)
        if needs_art[i]:
            row[art_col] = _num(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(slack_of[i])
        rows.append(row)
        rhs_list.append(_num(rhs * flip))

    tab = _Tableau(rows, rhs_list, basis, total)
    first_art = nstruct + nslack
    allowed = [True] * total

    if nart:
        tab.set_objective([_num(0)] * first_art + [_num(-1)] * nart)
        tab.run(allowed)
        if tab.obj_rhs < 0:
            return LPOutcome(INFEASIBLE)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= first_art:
                row = tab.rows[i]
                j = next((k for k in range(first_art) if row[k]), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        for k in range(first_art, total):
            allowed[k] = False

    offset = Fraction(0)
    costs = [_num(0)] * total
    sgn = 1 if program.sense == "max" else -1
    for v, c in program.objective.items():
        const, cols = subst[v]
        offset += c * const
        for colk, sign in cols:
            costs[colk] += _num(sgn * sign * c)
    tab.set_objective(costs)
    status = tab.run(allowed)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)

    x = [Fraction(0)] * nstruct
    for i, b in enumerate(tab.basis):
        if b < nstruct:
            x[b] = _to_fraction(tab.rhs[i])
    witness = {}
    for v in program.variables:
        const, cols = subst[v]
        witness[v] = const + sum(sign * x[c] for c, sign in cols)
    value = sum((c * witness[v] for v, c in program.objective.items()), Fraction(0))
    if _to_fraction(tab.obj_rhs) * sgn + offset != value:  # pragma: no cover
        raise AssertionError("simplex objective disagrees with its own witness")
    _verify(program, witness)
    return LPOutcome(OPTIMAL, value, witness)


def _verify(program, witness):
    for k, con in enumerate(program.constraints):
        lhs = sum((a * witness[v] for v, a in con.coeffs.items()), Fraction(0))
        ok = {"<=": lhs <= con.rhs, "=": lhs == con.rhs, ">=": lhs >= con.rhs}[con.rel]
        if not ok:  # pragma: no cover
            raise AssertionError(f"witness violates constraint {k}")
    for v, (lo, hi) in program.bounds.items():
        if (lo is not None and witness[v] < lo) or (hi is not None and witness[v] > hi):
            raise AssertionError(f"witness violates bounds of {v!r}")  # pragma: no cover
