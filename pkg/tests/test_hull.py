from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.optimize import linprog as sp_linprog

from gitstab.hull import (
    HullPosition,
    Stability,
    centroid_point,
    hull_membership,
    separating_subgroup,
    torus_verdict,
    weight_point,
)
from gitstab.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog, rank
from gitstab.ops import pairing
from gitstab.poly import enumerate_monomials, parse_poly, parse_profile

F = Fraction


def test_lp_small():
    res = linprog([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == OPTIMAL
    assert res.value == F(14, 5)
    assert res.x == (F(8, 5), F(6, 5))


def test_lp_infeasible_and_unbounded():
    assert linprog([1], A_eq=[[1]], b_eq=[-1]).status == INFEASIBLE
    assert linprog([1, 0], A_ub=[[-1, 1]], b_ub=[0]).status == UNBOUNDED


def test_lp_free_variable():
    res = linprog([-1], A_ub=[[-1]], b_ub=[3], free=[0])
    assert res.value == 3 and res.x == (F(-3),)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(0, 6), min_size=4, max_size=4),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)
def test_lp_matches_scipy(A, b, c):
    b = b[: len(A)]
    # bounded box keeps every instance feasible and finite
    A_full = A + [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    b_full = b + [5, 5, 5]
    ours = linprog(c, A_ub=A_full, b_ub=b_full)
    ref = sp_linprog([-x for x in c], A_ub=A_full, b_ub=b_full, method="highs")
    assert ours.status == OPTIMAL and ref.status == 0
    assert float(ours.value) == pytest.approx(-ref.fun, abs=1e-7)


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0


SQUARE = [(0, 0), (2, 0), (0, 2), (2, 2)]


@pytest.mark.parametrize("p,expected", [
    ((1, 1), HullPosition.INTERIOR),
    ((0, 1), HullPosition.BOUNDARY),
    ((2, 2), HullPosition.BOUNDARY),
    ((3, 1), HullPosition.OUTSIDE),
    ((F(1, 3), F(5, 3)), HullPosition.INTERIOR),
])
def test_hull_examples(p, expected):
    assert hull_membership(p, SQUARE) == expected


def test_lower_rank_set_has_no_interior():
    seg = [(0, 0), (2, 2)]
    assert hull_membership((1, 1), seg) == HullPosition.INTERIOR
    assert hull_membership((1, 1), seg, ambient=SQUARE) == HullPosition.BOUNDARY


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        hull_membership((1, 1), [(0, 0, 0)])
    with pytest.raises(ValueError):
        hull_membership((1, 1), [])


points2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=7, unique=True)


@settings(max_examples=100, deadline=None)
@given(points2, st.integers(-3, 3), st.integers(-3, 3))
def test_hull_vs_shapely(pts, x, y):
    from shapely.geometry import MultiPoint, Point

    hull = MultiPoint(pts).convex_hull
    assume(hull.geom_type == "Polygon")
    pos = hull_membership((x, y), pts)
    q = Point(x, y)
    if hull.contains(q):
        assert pos == HullPosition.INTERIOR
    elif hull.touches(q) or hull.boundary.distance(q) == 0:
        assert pos == HullPosition.BOUNDARY
    else:
        assert pos == HullPosition.OUTSIDE


def test_members_of_set(p112):
    S = [weight_point(m) for m in list(enumerate_monomials(p112))[:10]]
    for s in S:
        assert hull_membership(s, S) != HullPosition.OUTSIDE


def test_centroid(p112):
    c = centroid_point(p112)
    assert c == (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(2, 3), F(2, 3), F(2, 3))


def test_full_support_is_stable(p112):
    assert torus_verdict(enumerate_monomials(p112), p112).stability == Stability.STABLE


def test_unstable_has_witness(p112):
    f = parse_poly("x0*y0*z0^2 + x0*y1*z0*z1", p112)
    v = torus_verdict(f.support, p112)
    assert v.stability == Stability.UNSTABLE
    assert all(pairing(v.witness, m) > 0 for m in f.support)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_cross_validation(data):
    # Outside exactly when some subgroup is positive on the whole support
    prof = parse_profile("p1:1,p1:1,p2:2")
    mons = enumerate_monomials(prof)
    support = data.draw(st.lists(st.sampled_from(mons), min_size=1, max_size=8, unique=True))
    v = torus_verdict(support, prof)
    wit = separating_subgroup(support, prof)
    assert (v.stability == Stability.UNSTABLE) == (wit is not None)
