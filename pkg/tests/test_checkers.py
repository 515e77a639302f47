import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selfshuffle.checkers import (
    DelayReport,
    abelian_borders,
    borderfree_prefixes,
    longest_ab_borderfree_prefix,
    longest_abelian_border,
    lyndon_status,
    shuffling_delay_sturmian,
)
from selfshuffle.exact_arith import QuadExt, parse_quad
from selfshuffle.words import drop, named_word, parse_word, periodic, prepend

G = parse_quad("(3-sqrt(5))/2")


def naive_abelian_borders(u):
    return [l for l in range(1, len(u) // 2 + 1) if Counter(u[:l]) == Counter(u[-l:])]


@given(st.lists(st.integers(0, 2), max_size=40))
def test_abelian_borders_against_counter(u):
    assert abelian_borders(u).borders == naive_abelian_borders(u)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=40))
def test_borderfree_prefixes_against_naive(u):
    naive = [n for n in range(1, len(u) + 1) if not any(u[:l] == u[n - l : n] for l in range(1, n))]
    assert borderfree_prefixes(u) == naive


def test_border_examples():
    assert abelian_borders(parse_word("01")).border_free
    assert abelian_borders(parse_word("0110")).borders == [1, 2]
    assert abelian_borders(parse_word("0010011")).border_free


def test_paper_folding_prefixes_are_border_free():
    x = named_word("paper-folding")
    for j in range(1, 12):
        assert abelian_borders(x.prefix(2**j - 1)).border_free


def test_paper_folding_saturates():
    scan = longest_ab_borderfree_prefix(named_word("paper-folding"), 2**12)
    assert scan.saturated and scan.length == 2**12 - 1


def test_fibonacci_scan_is_finite():
    scan = longest_ab_borderfree_prefix(named_word("fibonacci"), 10**4)
    assert not scan.saturated and scan.length == 2


def test_zero_fibonacci_scan_saturates():
    scan = longest_ab_borderfree_prefix(prepend((0,), named_word("fibonacci")), 4000)
    assert scan.saturated


def test_three_shuffle_prefix_borders():
    x = named_word("three-shuffle-example")
    for j in range(2, 8):
        assert longest_abelian_border(x.prefix(4**j - 2)) == 2
    # length 2 only allows borders of length 1, and 01 has none
    assert longest_abelian_border(x.prefix(2)) == 0


def test_lyndon_examples():
    assert lyndon_status(prepend((0,), periodic((1,))), depth=300).lyndon_consistent
    assert lyndon_status(prepend((1,), periodic((0,))), order=(1, 0), depth=300).lyndon_consistent
    t = drop(named_word("thue-morse"), 1)
    assert lyndon_status(t, order=(1, 0), depth=500).lyndon_consistent
    assert not lyndon_status(t, order=(0, 1), depth=500).lyndon_consistent
    for order in ((0, 1), (1, 0)):
        rep = lyndon_status(periodic((0, 1)), order=order, depth=50)
        assert rep.status == "not-lyndon"


def test_lyndon_periodic_equality_is_exact():
    rep = lyndon_status(periodic((0, 1)), order=(0, 1), depth=50)
    assert rep.exact and rep.witness_shift == 2


def test_lyndon_letter_outside_order():
    with pytest.raises(ValueError):
        lyndon_status(periodic((0, 2)), order=(0, 1), depth=10)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=8), st.lists(st.integers(0, 1), min_size=1, max_size=5))
def test_lyndon_agrees_with_suffix_comparison(pre, per):
    x = prepend(pre, periodic(per))
    n = 200
    u = x.prefix(2 * n)
    naive_bad = any(u[i : i + n] <= u[:n] for i in range(1, n // 2))
    rep = lyndon_status(x, depth=n // 2, window=n)
    assert rep.lyndon_consistent == (not naive_bad)


def _pairs(count, seed=11):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.choice([5, 2])
        c = rng.randint(2, 30)
        alpha = parse_quad(f"({rng.randint(-30, 30)}+{rng.randint(1, 6)}*sqrt({d}))/{c}").frac()
        if rng.random() < 0.5:
            rho = QuadExt.rational(rng.randint(1, 19), 20)
        else:
            rho = parse_quad(f"({rng.randint(-30, 30)}+{rng.randint(1, 6)}*sqrt({d}))/{rng.randint(2, 30)}").frac()
        if rho == 0:
            continue
        out.append((alpha, rho, rng.random() < 0.2))
    return out


def test_delay_three_ways_on_fifty_pairs():
    for alpha, rho, upper in _pairs(50):
        rep = shuffling_delay_sturmian(alpha, rho, horizon=3000, upper=upper)
        assert isinstance(rep, DelayReport)
        assert rep.ab_borderfree == rep.borderfree == rep.lex_shift == rep.machine


def test_delay_golden_characteristic():
    rep = shuffling_delay_sturmian(G, G)
    assert rep.delay == 2


def test_delay_rejects_rho_zero():
    with pytest.raises(ValueError, match="rho"):
        shuffling_delay_sturmian(G, 0)
    with pytest.raises(ValueError):
        shuffling_delay_sturmian(G, 1)
