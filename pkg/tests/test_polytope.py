import hashlib
import random
from fractions import Fraction as F

import pytest

from slipfree.asymmetrize import real_line
from slipfree.fixtures import SMALL, naturals_hemi, skew_triangle, u_space
from slipfree.freespace import Molecule, dual_norm, pair
from slipfree.functions import PointFunction, slip_norm
from slipfree.polytope import (HRep, VRep, asymmetric_polar, bipolar_check, enumerate_vertices,
                               free_ball, lip_ball_hrep, molecule_generators, nullspace,
                               render_svg, reversal_constant, slip_ball, vertex_slip_norms)
from slipfree.rational import INF
from slipfree.sampling import random_function, random_molecule
from slipfree.space import SpaceError

SKEW_SLIP = ((F(-3, 2), F(-1)), (F(-3, 2), F(-1, 2)), (F(0), F(-1)), (F(0), F(1)),
             (F(1), F(0)), (F(1), F(1)))
# frozen from an independent float LP run, all entries confirmed exactly by dual_norm
SKEW_FREE = ((F(-1), F(1)), (F(-2, 3), F(0)), (F(0), F(-1)), (F(0), F(1)),
             (F(1), F(-1)), (F(1), F(0)))


def test_skew_triangle_slip_ball():
    ball = slip_ball(skew_triangle())
    assert ball.vertices == SKEW_SLIP
    assert ball.bounded and len(ball.vertices) <= 6


def test_skew_triangle_free_ball():
    ball = free_ball(skew_triangle())
    assert ball.vertices == SKEW_FREE and ball.bounded


def test_free_ball_vertices_have_unit_norm():
    space = skew_triangle()
    assert all(dual_norm(Molecule.from_vector(space, v)) == 1 for v in SKEW_FREE)


def test_u_space_free_ball_is_unbounded():
    ball = free_ball(u_space([0, 1, 2]))
    assert ball.vertices == ((F(-1), F(1)), (F(1), F(0)))
    assert ball.rays == ((F(-1), F(0)), (F(1), F(-1)))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_slip_vertices_have_unit_norm(name):
    space = SMALL[name]
    if space.n == 1:
        return
    # the apex 0 is a vertex when the ball is a cone near the origin
    ball = slip_ball(space)
    for v, norm in zip(ball.vertices, vertex_slip_norms(space)):
        assert norm == (1 if any(v) else 0)


def test_enumeration_of_a_square():
    h = HRep.from_rows(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    v = enumerate_vertices(h)
    assert v.vertices == ((-1, -1), (-1, 1), (1, -1), (1, 1)) and v.bounded


def test_enumeration_of_a_half_plane():
    v = enumerate_vertices(HRep.from_rows(2, [((1, 1), 2)]))
    assert v.lineality == ((F(-1), F(1)),)
    assert v.vertices == ((F(1), F(1)),)
    assert v.rays == ((F(-1), F(-1)),)


def test_enumeration_of_a_quadrant():
    v = enumerate_vertices(HRep.from_rows(2, [((-1, 0), 0), ((0, -1), 0)]))
    assert v.vertices == ((0, 0),) and v.rays == ((0, 1), (1, 0))


def test_nullspace_is_primitive():
    assert nullspace([[F(1, 2), F(-1, 3)]], 2) == [(F(2), F(3))]


def test_polar_of_the_square_is_the_diamond():
    square = VRep(((F(-1), F(-1)), (F(-1), F(1)), (F(1), F(-1)), (F(1), F(1))))
    diamond = enumerate_vertices(asymmetric_polar(square))
    assert set(diamond.vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_polar_needs_a_vertex():
    with pytest.raises(SpaceError):
        asymmetric_polar(VRep(()))


def test_dimension_limit():
    with pytest.raises(SpaceError):
        slip_ball(naturals_hemi(4))
    with pytest.raises(SpaceError):
        enumerate_vertices(HRep.from_rows(4, [((1, 0, 0, 0), 1)]))


def test_lip_ball_needs_metric():
    with pytest.raises(SpaceError):
        lip_ball_hrep(skew_triangle())
    assert lip_ball_hrep(real_line([0, 1, 3])).dimension == 2


def support(space, f):
    """max of pair(v, f) over free-ball vertices; INF if a ray pairs positively."""
    ball = free_ball(space)
    if any(pair(Molecule.from_vector(space, r), f) > 0 for r in ball.rays):
        return INF
    return max(pair(Molecule.from_vector(space, v), f) for v in ball.vertices)


@pytest.mark.parametrize("name", sorted(k for k, v in SMALL.items() if v.n > 1))
def test_duality_both_ways(name):
    space = SMALL[name]
    rng = random.Random(name)
    slip = slip_ball(space)
    for _ in range(5):
        f = random_function(rng, space)
        assert support(space, f) == slip_norm(f)
        Q = random_molecule(rng, space)
        best = max(pair(Q, PointFunction.from_vector(space, w)) for w in slip.vertices)
        assert best == dual_norm(Q)


def test_non_monotone_function_has_infinite_support():
    space = naturals_hemi(2)
    f = PointFunction(space, [0, -1, 0])
    g = PointFunction(space, [0, 0, -1])
    h = PointFunction(space, [0, 2, F(-1, 2)])
    for func in (f, g, h):
        assert support(space, func) is slip_norm(func) is INF


@pytest.mark.parametrize("name", sorted(SMALL))
def test_bipolar(name):
    report = bipolar_check(SMALL[name])
    assert report.ok, report.failures


def test_bipolar_on_hemi_has_rays():
    report = bipolar_check(naturals_hemi(2))
    assert report.ok and report.body.rays
    assert molecule_generators(naturals_hemi(2)).rays


@pytest.mark.parametrize("space, value", [
    (real_line([0, 1, 3]), 1),
    (real_line([-2, 0, 2]), 1),
    (u_space([0, 1, 2]), INF),
    (skew_triangle(), F(3, 2)),
], ids=["line", "line-sym", "u", "skew"])
def test_reversal_constant(space, value):
    assert reversal_constant(space) == value


SVG_SHA256 = {
    ("skew-triangle", False): "6f29b32ea08f01c783d496d56a959d5d381143da6c2a5cc6867431f2965da60a",
    ("skew-triangle", True): "b371741a59a7c1ef3e3ac06b3979567edafce1602b9a6a6cf1ae1902124ea3cc",
    ("u", False): "4cdf8232c3687e40094a4a8b0e13bebd52c6056d3985b96449dea9c8c1cb7e69",
    ("u", True): "fb280412c8c989cf854fc2f4923c3b19b55d74b9d71da8e7f30d283deec5ac4c",
}


@pytest.mark.parametrize("key", sorted(SVG_SHA256))
def test_svg_is_byte_stable(key):
    space = skew_triangle() if key[0] == "skew-triangle" else u_space([0, 1, 2])
    text = render_svg(space, polar=key[1])
    assert text == render_svg(space, polar=key[1])
    assert hashlib.sha256(text.encode()).hexdigest() == SVG_SHA256[key]


def test_svg_polygon_follows_the_boundary():
    text = render_svg(skew_triangle())
    assert ('<polygon points="280.00,200.00 280.00,120.00 200.00,120.00 80.00,240.00 '
            '80.00,280.00 200.00,280.00"') in text


def test_svg_needs_three_points():
    with pytest.raises(SpaceError):
        render_svg(u_space([0, 1]))
