import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from selfshuffle.exact_arith import QuadExt, parse_quad
from selfshuffle.sturmian import (
    CharacteristicWord,
    DirectiveSequence,
    SturmianSpec,
    characteristic_from_directive,
    directive_blocks,
    longest_palindromic_suffix,
    mechanical,
    pal_closure,
    rotation_word,
)
from selfshuffle.words import format_word, named_word

mpmath.mp.dps = 60
G = parse_quad("(3-sqrt(5))/2")


def mp(q: QuadExt):
    return (mpmath.mpf(q.a) + q.b * mpmath.sqrt(q.d)) / q.c


def mechanical_oracle(alpha: QuadExt, rho: QuadExt, n: int) -> list[int]:
    a, r = mp(alpha), mp(rho)
    fl = [int(mpmath.floor(k * a + r)) for k in range(n + 1)]
    return [fl[k + 1] - fl[k] for k in range(n)]


@pytest.mark.parametrize(
    "alpha, rho",
    [("(3-sqrt(5))/2", "1/3"), ("(-1+sqrt(5))/2", "(3-sqrt(5))/2"), ("sqrt(2)/4", "1/2"), ("(-1+sqrt(2))", "sqrt(2)-1")],
)
def test_mechanical_against_high_precision(alpha, rho):
    a, r = parse_quad(alpha), parse_quad(rho)
    assert list(mechanical(SturmianSpec(a, r)).prefix(1500)) == mechanical_oracle(a, r, 1500)


def test_golden_mechanical_is_fibonacci():
    assert format_word(mechanical(SturmianSpec(G, G)).prefix(22)) == "0100101001001010010100"
    assert mechanical(SturmianSpec(G, G)).prefix(3000) == named_word("fibonacci").prefix(3000)


def test_rho_zero_and_one():
    c = characteristic_from_directive(DirectiveSequence((), (0, 1)))
    z0 = mechanical(SturmianSpec(G, 0)).prefix(500)
    z1 = mechanical(SturmianSpec(G, 1)).prefix(500)
    assert z0 == (0,) + c.prefix(499)
    assert z1 == (1,) + c.prefix(499)
    assert rotation_word(G, 0, upper=True).prefix(500) == z1


def test_spec_validation():
    with pytest.raises(ValueError):
        SturmianSpec(QuadExt.rational(1, 3), 0)
    with pytest.raises(ValueError):
        SturmianSpec(G, 2)
    with pytest.raises(ValueError):
        SturmianSpec(G, parse_quad("sqrt(2)/2"))


def test_one_counts_are_floors():
    a, r = parse_quad("(-1+sqrt(5))/2"), QuadExt.rational(2, 7)
    z = mechanical(SturmianSpec(a, r)).prefix(10**4)
    ones = 0
    for n in range(10**4 + 1):
        assert ones == (a * n + r).floor()
        if n < 10**4:
            ones += z[n]


def test_balance_and_complexity():
    z = mechanical(SturmianSpec(parse_quad("sqrt(2)/4"), QuadExt.rational(1, 5))).prefix(500)
    for n in range(1, 40):
        counts = {sum(z[i : i + n]) for i in range(500 - n)}
        assert max(counts) - min(counts) <= 1
        assert len({z[i : i + n] for i in range(500 - n)}) == n + 1


def brute_pal_closure(u):
    # shortest palindrome with prefix u: u followed by the reverse of some prefix of u
    u = tuple(u)
    for t in range(len(u) + 1):
        cand = u + tuple(reversed(u[:t]))
        if cand == cand[::-1]:
            return cand
    raise AssertionError


@given(st.lists(st.integers(0, 1), max_size=25))
def test_pal_closure_against_brute_force(u):
    p = pal_closure(u)
    assert p == brute_pal_closure(u)
    assert p == p[::-1] and p[: len(u)] == tuple(u)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=25))
def test_longest_palindromic_suffix(u):
    best = max(k for k in range(1, len(u) + 1) if u[-k:] == u[-k:][::-1])
    assert longest_palindromic_suffix(u) == best


def test_pal_closure_examples():
    assert pal_closure((0, 1)) == (0, 1, 0)
    assert pal_closure((0, 0, 1)) == (0, 0, 1, 0, 0)


def test_characteristic_prefix_and_blocks():
    d = DirectiveSequence.parse("0,0,1,0,1,1,0,1,[0,1]")
    expected = "001000100100010010001000100100010010001001000"
    assert format_word(CharacteristicWord(d).prefix(len(expected))) == expected
    assert [format_word(directive_blocks(d, k)) for k in (1, 2, 3, 4)] == ["0", "0", "100", "0100"]


def test_all_zero_directive_is_finite():
    c = CharacteristicWord(DirectiveSequence((0, 0, 0)))
    assert c.phi(3) == (0, 0, 0)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=12), st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_phi_is_iterated_closure(prefix, period):
    d = DirectiveSequence(prefix, period)
    cw = CharacteristicWord(d)
    phi = ()
    for k in range(1, 16):
        phi = pal_closure(phi + (d[k],))
        assert cw.phi(k) == phi
        assert cw.length(k) == cw.length(k - 1) + len(cw.block(k))


def test_directive_parse():
    d = DirectiveSequence.parse("0,0,[1,0]")
    assert [d[k] for k in range(1, 8)] == [0, 0, 1, 0, 1, 0, 1]
    assert str(d) == "0,0,[1,0]"
    for bad in ("0,2", "x", ""):
        with pytest.raises(ValueError):
            DirectiveSequence.parse(bad)
