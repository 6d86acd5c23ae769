from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gitstab.poly import (
    DegreeMismatchError,
    DegreeProfile,
    Monomial,
    MultiPoly,
    PolySyntaxError,
    ProfileError,
    UnknownVariableError,
    enumerate_monomials,
    evaluate_gradient,
    format_poly,
    parse_poly,
    parse_profile,
)


def count_oracle(weights, degree):
    # number of weighted compositions, by recursion on the first variable
    if not weights:
        return 1 if degree == 0 else 0
    w, rest = weights[0], weights[1:]
    return sum(count_oracle(rest, degree - w * k) for k in range(degree // w + 1))


@pytest.mark.parametrize("spec,count", [
    ("p1:1,p1:1,p2:2", 24),
    ("p1:2,p2:2", 18),
    ("p(1,1,2):2,p2:2", 24),
    ("p1:1", 2),
])
def test_monomial_counts(spec, count):
    assert len(enumerate_monomials(parse_profile(spec))) == count


def test_weighted_factor_monomials():
    prof = parse_profile("p(1,1,2):2")
    mons = [m.exponents[0] for m in enumerate_monomials(prof)]
    assert mons == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)]


def test_canonical_order_within_factor():
    prof = parse_profile("p1:2")
    assert [m.exponents[0] for m in enumerate_monomials(prof)] == [(2, 0), (1, 1), (0, 2)]


profiles = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=3)


@settings(max_examples=50, deadline=None)
@given(profiles)
def test_count_matches_recursive_oracle(spec):
    prof = DegreeProfile.of(*[(n + 1, d) for n, d in spec])
    expected = 1
    for n, d in spec:
        expected *= count_oracle((1,) * (n + 1), d)
        assert count_oracle((1,) * (n + 1), d) == comb(n + d, d)
    mons = enumerate_monomials(prof)
    assert len(mons) == expected
    assert len(set(mons)) == len(mons)
    assert mons == sorted(mons)


def test_parse_basic(p112):
    f = parse_poly("x0*y0*z1^2 + x0*y0*z0*z2", p112)
    assert len(f.terms) == 2
    assert format_poly(f) == "x0*y0*z0*z2 + x0*y0*z1^2"


def test_parse_cancellation(p112):
    assert parse_poly("x0*y0*z1^2 - x0*y0*z1^2", p112).is_zero()
    assert format_poly(parse_poly("x0*y0*z1^2 - x0*y0*z1^2", p112)) == "0"


def test_parse_rational_coefficients(p112):
    f = parse_poly("-3/2*x0*y0*z0^2 + 2 * x1*y1*z2^2", p112)
    assert f.as_dict()[Monomial(((1, 0), (1, 0), (2, 0, 0)))] == Fraction(-3, 2)


def test_degree_mismatch_names_monomial(p112):
    with pytest.raises(DegreeMismatchError, match="x0\\*y0\\*z0"):
        parse_poly("x0*y0*z0", p112)


def test_cancelled_terms_still_checked(p112):
    with pytest.raises(DegreeMismatchError):
        parse_poly("x0*z0 - x0*z0 + x0*y0*z0^2", p112)


def test_unknown_variable(p112):
    with pytest.raises(UnknownVariableError):
        parse_poly("x0*y0*w0^2", p112)


@pytest.mark.parametrize("text", ["x0*y0*", "x0 y0 z0^2", "x0*y0*z0^", "+"])
def test_syntax_errors_have_position(p112, text):
    with pytest.raises(PolySyntaxError) as err:
        parse_poly(text, p112)
    assert err.value.line >= 1 and err.value.column >= 1


def test_multiline_syntax_error_line(p112):
    with pytest.raises(PolySyntaxError) as err:
        parse_poly("x0*y0*z0^2 +\n x1*y1*z2^2 ++ x0", p112)
    assert err.value.line == 2


@pytest.mark.parametrize("spec", ["p1:0", "q1:1", "p1:1,,p2:2", "p(1,0):2"])
def test_bad_profiles(spec):
    with pytest.raises(ProfileError):
        parse_profile(spec)


def test_profile_json_round_trip(p112):
    import json
    assert parse_profile(json.dumps(p112.to_json())) == p112


def random_poly(draw, prof):
    mons = enumerate_monomials(prof)
    chosen = draw(st.lists(st.sampled_from(mons), max_size=8))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=len(chosen), max_size=len(chosen)))
    return MultiPoly(prof, list(zip(chosen, coeffs)))


@st.composite
def polys112(draw):
    return random_poly(draw, parse_profile("p1:1,p1:1,p2:2"))


@st.composite
def polys_weighted(draw):
    return random_poly(draw, parse_profile("p(1,1,2):2,p2:2"))


@settings(max_examples=100, deadline=None)
@given(polys112())
def test_print_parse_round_trip(f):
    assert parse_poly(format_poly(f), f.profile) == f


@settings(max_examples=50, deadline=None)
@given(polys_weighted())
def test_print_parse_round_trip_weighted(f):
    assert parse_poly(format_poly(f), f.profile) == f


def test_gradient_examples(p112):
    f = parse_poly("x0*y0*z0*z2 + x0*y0*z1^2", p112)
    assert evaluate_gradient(f, (1, 1, 2), (0, 0, 0, 0)) == (0, (0, 0, 0, 0))
    g = parse_poly("x0*y0*z0^2", p112)
    assert evaluate_gradient(g, (1, 1, 2), (1, 1, 1, 0))[0] == 1
    zero = parse_poly("0", p112)
    assert evaluate_gradient(zero, (0, 0, 0), (3, 2, 1, 5)) == (0, (0, 0, 0, 0))


def test_gradient_chart_mismatch(p112):
    f = parse_poly("x0*y0*z0^2", p112)
    with pytest.raises(ValueError):
        evaluate_gradient(f, (1, 1), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        evaluate_gradient(f, (1, 1, 2), (0, 0, 0))


@settings(max_examples=60, deadline=None)
@given(polys112(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=4, max_size=4),
       st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2)))
def test_gradient_matches_sympy_expansion(f, point, chart):
    import sympy as sp

    names = [n for ns in f.profile.names for n in ns]
    syms = {n: sp.Symbol(n) for n in names}
    expr = sp.sympify(format_poly(f).replace("^", "**"), locals=syms) if not f.is_zero() else sp.Integer(0)
    free = []
    subs = {}
    for (k, ns) in zip(chart, f.profile.names):
        subs[syms[ns[k]]] = 1
        free += [syms[n] for j, n in enumerate(ns) if j != k]
    local = sp.expand(expr.subs(subs))
    at = dict(zip(free, [sp.Rational(p.numerator, p.denominator) for p in point]))
    value, grad = evaluate_gradient(f, chart, point)
    assert sp.Rational(value.numerator, value.denominator) == local.subs(at)
    for v, g in zip(free, grad):
        assert sp.Rational(g.numerator, g.denominator) == sp.diff(local, v).subs(at)
