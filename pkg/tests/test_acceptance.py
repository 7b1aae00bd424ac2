"""Acceptance criteria 1-14, all exact.

Each criterion is a function returning ``(ok, detail)``. Under pytest every
criterion prints one ``criterion N: PASS|FAIL`` line; run this file directly
to get the same lines without pytest.
"""

import hashlib
import itertools
import random
import sys

import pytest

from slipfree.asymmetrize import (COUNTEREXAMPLE, HOLDS, S, S0_STAR, S_STAR, ConeSpec,
                                  canonical_asym, check_property, closed_form_Dplus_reals,
                                  real_line)
from slipfree.fixtures import FIXTURES, SMALL, naturals_hemi, skew_triangle, u_space
from slipfree.freespace import (Molecule, dual_norm, elementary_molecule, kr_norm, pair,
                                pushforward, sym_free_norm)
from slipfree.functions import PointFunction, mcshane_extend, slip_norm
from slipfree.polytope import bipolar_check, free_ball, render_svg, reversal_constant, slip_ball
from slipfree.rational import INF, Fraction, fmt
from slipfree.sampling import (random_function, random_metric, random_molecule,
                               random_semi_lipschitz, random_space, random_tree)
from slipfree.space import subspace, symmetrize
from slipfree.tree import marked_branching, path_metric, tree_asym_norm, tree_sym_norm

KINDS = ("metric", "quasi-metric", "quasi-hemi-metric")
NONNEG = ConeSpec.nonneg()


def criterion_1():
    rng = random.Random(101)
    checked = 0
    for k in range(200):
        space = random_space(rng, rng.randint(3, 8), KINDS[k % 3])
        for _ in range(5):
            Q = random_molecule(rng, space)
            if kr_norm(Q)[0] != dual_norm(Q):
                return False, f"gap on space {k}: {Q!r}"
            checked += 1
    return True, f"{checked} molecules, kr = dual"


def criterion_2():
    pairs = 0
    for name, space in FIXTURES.items():
        for x in range(space.n):
            for y in range(space.n):
                Q = Molecule.delta(space, y) - Molecule.delta(space, x)
                if dual_norm(Q) != space.d[x][y]:
                    return False, f"{name}: ({space.labels[x]}, {space.labels[y]})"
                pairs += 1
    return True, f"{pairs} ordered pairs over {len(FIXTURES)} fixtures"


def criterion_3():
    count = 0
    for name, space in FIXTURES.items():
        for x in range(space.n):
            for y in range(space.n):
                if x != y and space.d[y][x] > 0:
                    if dual_norm(elementary_molecule(space, x, y)) != 1:
                        return False, f"{name}: M({space.labels[x]}, {space.labels[y]})"
                    count += 1
    return True, f"{count} elementary molecules of norm 1"


def criterion_4():
    rng = random.Random(104)
    for _ in range(50):
        space = naturals_hemi(rng.randint(1, 10))
        Q = random_molecule(rng, space)
        expected = sum((max(c, Fraction(0)) for c in Q.coefficients.values()), Fraction(0))
        if dual_norm(Q) != expected:
            return False, f"{Q!r}: {fmt(dual_norm(Q))} != {fmt(expected)}"
    for n in range(1, 11):
        D = symmetrize(naturals_hemi(n), "sum")
        for a in range(n + 1):
            for b in range(n + 1):
                want = 0 if a == b else (1 if 0 in (a, b) else 2)
                if D.d[a][b] != want:
                    return False, f"D({a},{b}) on 0..{n}"
    return True, "50 molecules match the positive-part sum; D(0,n)=1, D(m,n)=2"


def criterion_5():
    dp = canonical_asym(real_line(range(6)), NONNEG)
    for n in range(2, 6):
        if dp.d[1][n] != n - 1 or dp.d[n][1] != 1:
            return False, f"D+(1,{n}) or D+({n},1)"
    others = [p for p in range(-5, 6) if p]
    count = 0
    for k in range(len(others) + 1):
        for combo in itertools.combinations(others, k):
            pts = (0,) + combo
            if closed_form_Dplus_reals(pts) != canonical_asym(real_line(pts), NONNEG):
                return False, f"closed form differs on {sorted(pts)}"
            count += 1
    return True, f"path values exact; closed form = LP on all {count} subsets"


def criterion_6():
    holds = check_property(real_line([0, 1, 2]), NONNEG, S)
    if holds.verdict != HOLDS:
        return False, f"(S) on {{0,1,2}}: {holds.verdict}"
    star = check_property(real_line([0, 1, 3]), NONNEG, S_STAR)
    w = star.witness or {}
    if (star.verdict != COUNTEREXAMPLE or w.get("molecule") != {"1": "-1", "3": "1"}
            or (w.get("free_norm"), w.get("combined")) != ("2", "3")):
        return False, f"(S*) on {{0,1,3}}: {star.as_dict()}"
    zero = check_property(real_line([-2, 0, 2]), NONNEG, S0_STAR)
    if zero.verdict != COUNTEREXAMPLE:
        return False, "(S0*) on {-2,0,2} not refuted"
    return True, (f"(S) holds; (S*) fails at d(3)-d(1) with 2 vs 3; "
                  f"(S0*) fails at {zero.witness['molecule']}")


def equiva_corpus():
    rng = random.Random(107)
    return [random_metric(rng, rng.randint(2, 6)) for _ in range(50)], rng


def criterion_7():
    spaces, rng = equiva_corpus()
    for k, D in enumerate(spaces):
        dp = canonical_asym(D, NONNEG)
        for _ in range(10):
            Q = random_molecule(rng, D)
            up, down = dual_norm(Q.on(dp)), dual_norm((-Q).on(dp))
            full = dual_norm(Q)
            m = max(up, down)
            if not (m <= full <= up + down <= 2 * m):
                return False, f"space {k}, {Q!r}: {fmt(up)}, {fmt(down)}, {fmt(full)}"
    return True, "500 molecules over 50 metric spaces"


def criterion_8():
    spaces, _ = equiva_corpus()
    for k, D in enumerate(spaces):
        s = symmetrize(canonical_asym(D, NONNEG), "sum")
        for i in range(D.n):
            for j in range(D.n):
                if not D.d[i][j] <= s.d[i][j] <= 2 * D.d[i][j]:
                    return False, f"space {k} entry ({i},{j})"
    return True, "D <= (D+)^s <= 2D on 50 spaces"


def criterion_9():
    rng = random.Random(109)
    sym_bad = asym_bad = star_bad = 0
    asym_bad_marked = 0
    unmarked_branch = 0
    first = None
    for k in range(100):
        tree = random_tree(rng, rng.randint(1, 8))
        space = path_metric(tree)
        dp = canonical_asym(space, ConeSpec.tree_monotone(tree))
        if not marked_branching(tree):
            unmarked_branch += 1
        for _ in range(3):
            Q = random_molecule(rng, space)
            sym = tree_sym_norm(tree, Q)
            up, down = tree_asym_norm(tree, Q), tree_asym_norm(tree, -Q)
            sym_bad += sym != sym_free_norm(Q)
            star_bad += sym != up + down
            if up != dual_norm(Q.on(dp)):
                asym_bad += 1
                asym_bad_marked += marked_branching(tree)
                if first is None:
                    first = (k, repr(Q), fmt(up), fmt(dual_norm(Q.on(dp))),
                             marked_branching(tree))
    detail = (f"sym mismatches {sym_bad}/300, (S*) identity failures {star_bad}/300, "
              f"asym mismatches {asym_bad}/300, {asym_bad_marked} of them on trees whose "
              f"branch points are all marked ({unmarked_branch} trees have an unmarked "
              f"branch point)")
    if first:
        detail += (f"; first: tree {first[0]} {first[1]} edge-flow {first[2]} vs "
                   f"LP {first[3]}, marked branching {first[4]}")
    return sym_bad == asym_bad == star_bad == 0, detail


SKEW_SLIP = ((Fraction(-3, 2), -1), (Fraction(-3, 2), Fraction(-1, 2)), (0, -1), (0, 1),
             (1, 0), (1, 1))
SKEW_SVG_SHA256 = "6f29b32ea08f01c783d496d56a959d5d381143da6c2a5cc6867431f2965da60a"


def criterion_10():
    ball = slip_ball(skew_triangle())
    if ball.vertices != tuple(tuple(Fraction(c) for c in v) for v in SKEW_SLIP):
        return False, f"vertices {ball.vertices}"
    if len(ball.vertices) > 6 or not ball.bounded:
        return False, "vertex count or boundedness"
    a, b = render_svg(skew_triangle()), render_svg(skew_triangle())
    digest = hashlib.sha256(a.encode()).hexdigest()
    if a != b or digest != SKEW_SVG_SHA256:
        return False, f"svg digest {digest}"
    return True, "six vertices in lexicographic order; svg sha256 " + digest[:12]


def criterion_11():
    rng = random.Random(111)
    runs = 0
    for name, space in FIXTURES.items():
        rest = [i for i in range(space.n) if i != space.base]
        for k in range(len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                M = sorted((space.base,) + extra)
                sub = subspace(space, M)
                to_sub = {i: sub.index(space.labels[i]) for i in M}
                for _ in range(20):
                    f = random_semi_lipschitz(rng, space, M)
                    ext = mcshane_extend(f)
                    if any(ext(i) != f(i) for i in M):
                        return False, f"{name} M={M}: extension moved a value"
                    on_sub = PointFunction(sub, {to_sub[i]: f(i) for i in M})
                    if slip_norm(ext) != slip_norm(on_sub):
                        return False, f"{name} M={M}: norm changed"
                    runs += 1
                inclusion = {to_sub[i]: i for i in M}
                for _ in range(10):
                    Q = random_molecule(rng, sub)
                    if dual_norm(pushforward(inclusion, Q, space)) != dual_norm(Q):
                        return False, f"{name} M={M}: subspace norm not preserved"
    return True, f"{runs} extensions over {len(FIXTURES)} fixtures, all subsets"


def support(space, ball, f):
    if any(pair(Molecule.from_vector(space, r), f) > 0 for r in ball.rays):
        return INF
    return max(pair(Molecule.from_vector(space, v), f) for v in ball.vertices)


def criterion_12():
    rng = random.Random(112)
    count = 0
    for name, space in SMALL.items():
        if space.n == 1:
            continue
        fb, sb = free_ball(space), slip_ball(space)
        for _ in range(20):
            f = random_function(rng, space)
            if support(space, fb, f) != slip_norm(f):
                return False, f"{name}: slip norm of {f.values}"
            Q = random_molecule(rng, space)
            best = max(pair(Q, PointFunction.from_vector(space, w)) for w in sb.vertices)
            if best != dual_norm(Q):
                return False, f"{name}: dual norm of {Q!r}"
            count += 1
    return True, f"{count} function/molecule pairs over {len(SMALL) - 1} fixtures"


def criterion_13():
    with_rays = []
    for name, space in SMALL.items():
        report = bipolar_check(space)
        if not report.ok:
            return False, f"{name}: {report.failures[:2]}"
        if space.kind == "quasi-hemi-metric" and report.body.rays:
            with_rays.append(name)
    if not with_rays:
        return False, "no hemi fixture with recession rays was checked"
    return True, f"{len(SMALL)} fixtures; hemi with rays: {', '.join(sorted(with_rays))}"


def criterion_14():
    metric = [n for n, s in SMALL.items() if s.kind == "metric" and s.n > 1]
    for name in metric:
        if reversal_constant(SMALL[name]) != 1:
            return False, f"{name}: {fmt(reversal_constant(SMALL[name]))}"
    u = reversal_constant(u_space([0, 1, 2]))
    fig = reversal_constant(skew_triangle())
    if u is not INF or fig != Fraction(3, 2):
        return False, f"u-space {fmt(u)}, skew triangle {fmt(fig)}"
    return True, f"M = 1 on {len(metric)} metric fixtures; u-space inf; skew triangle 3/2"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 15)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number]()
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, check in CRITERIA.items():
        ok, detail = check()
        failed += not ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    sys.exit(1 if failed else 0)
