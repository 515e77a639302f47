from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from selfshuffle.exact_arith import (
    CirclePoint,
    QuadExt,
    RadicandMismatch,
    frac,
    parse_quad,
    quad_cmp,
    quad_make,
    rotate,
)

RADICANDS = [2, 3, 5, 7, 13]
ints = st.integers(-10**6, 10**6)


@st.composite
def quads(draw, d=None):
    d = d if d is not None else draw(st.sampled_from(RADICANDS))
    c = draw(st.integers(1, 10**4)) * draw(st.sampled_from([1, -1]))
    return quad_make(draw(ints), draw(ints), c, d)


def sym(q: QuadExt):
    return (sympy.Integer(q.a) + sympy.Integer(q.b) * sympy.sqrt(q.d)) / q.c


def test_canonical_reduction():
    q = quad_make(2, 2, 4, 5)
    assert (q.a, q.b, q.c, q.d) == (1, 1, 2, 5)
    assert quad_make(3, 0, 6, 5) == QuadExt.rational(1, 2)
    assert quad_make(1, 1, -2, 5) == quad_make(-1, -1, 2, 5)


def test_compare_examples():
    golden_conj = parse_quad("(-1+sqrt(5))/2")
    assert quad_cmp(golden_conj, QuadExt.rational(3, 5)) == 1
    assert quad_cmp(QuadExt.rational(0), parse_quad("(3-sqrt(5))/2")) == -1


def test_frac_and_rotate_examples():
    assert frac(parse_quad("sqrt(5)")) == parse_quad("-2+sqrt(5)")
    a = parse_quad("(-1+sqrt(5))/2")
    assert rotate(CirclePoint(a), a) == parse_quad("sqrt(5)-2")


def test_rejects_mixed_radicands():
    with pytest.raises(RadicandMismatch):
        parse_quad("sqrt(2)") + parse_quad("sqrt(3)")


def test_rejects_non_squarefree():
    with pytest.raises(ValueError):
        quad_make(0, 1, 1, 8)


@pytest.mark.parametrize("bad", ["", "sqrt(5", "(1+sqrt(5)/2", "1/0", "abc", "2*sqrt(4)"])
def test_parse_errors(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_quad(bad)


@given(quads())
def test_canonical_form_invariant(q):
    from math import gcd

    assert q.c > 0
    assert gcd(gcd(q.a, q.b), q.c) == 1
    assert (q.b == 0) == (q.d == 0)


@given(quads())
def test_str_parse_roundtrip(q):
    assert parse_quad(str(q)) == q


@given(st.data())
def test_field_ops_match_sympy(data):
    d = data.draw(st.sampled_from(RADICANDS))
    x, y = data.draw(quads(d)), data.draw(quads(d))
    assert sympy.simplify(sym(x + y) - (sym(x) + sym(y))) == 0
    assert sympy.simplify(sym(x * y) - sym(x) * sym(y)) == 0
    assert sympy.simplify(sym(x - y) - (sym(x) - sym(y))) == 0
    if y != 0:
        assert sympy.simplify(sym(x / y) - sym(x) / sym(y)) == 0


@given(st.data())
def test_comparison_matches_sympy(data):
    d = data.draw(st.sampled_from(RADICANDS))
    x, y = data.draw(quads(d)), data.draw(quads(d))
    diff = sympy.nsimplify(sym(x) - sym(y))
    expected = 0 if diff == 0 else (1 if diff.is_positive else -1)
    assert quad_cmp(x, y) == expected


@given(quads())
def test_floor_matches_sympy(q):
    assert q.floor() == int(sympy.floor(sym(q)))


@given(quads())
def test_frac_in_unit_interval(q):
    f = q.frac()
    assert 0 <= f < 1
    assert (q - f).is_rational and (q - f).as_fraction().denominator == 1


@given(st.fractions(), st.fractions())
def test_rational_arithmetic_agrees_with_fraction(p, q):
    x, y = QuadExt.rational(p.numerator, p.denominator), QuadExt.rational(q.numerator, q.denominator)
    assert (x + y).as_fraction() == p + q
    assert (x * y).as_fraction() == p * q
    assert (x < y) == (p < q)


def test_ordering_near_tie():
    # 99/70 approximates sqrt(2) to 7e-5; the order must still be exact
    r2 = parse_quad("sqrt(2)")
    assert QuadExt.rational(99, 70) > r2
    assert QuadExt.rational(140, 99) < r2
    assert Fraction(99, 70) > 0


def test_decimal_is_labeled_approximate():
    js = parse_quad("(1+sqrt(5))/2").to_json()
    assert js["approx"] is True
    assert js["decimal"].startswith("1.618033988749")
    assert (js["a"], js["b"], js["c"], js["d"]) == (1, 1, 2, 5)
