import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfshuffle.constructions import (
    ROTATION_EDGES,
    TM_BLOCK_FACTORS,
    _characteristic_plan,
    characteristic_shuffle,
    fibonacci_shuffle,
    full_complexity_shuffle,
    kappa_from_word,
    pal_shuffle,
    period_doubling_shuffle,
    shift_transport,
    shuffle_dp,
    sturmian_shuffle,
    three_shuffle_blocks,
    three_shuffle_example,
    tm_local_pattern,
    tm_shuffle,
)
from selfshuffle.exact_arith import QuadExt, parse_quad
from selfshuffle.shuffle import interleave_finite, verify_witness
from selfshuffle.sturmian import DirectiveSequence, SturmianSpec, characteristic_from_directive, mechanical, rotation_word
from selfshuffle.words import (
    FIBONACCI,
    THREE_SHUFFLE,
    drop,
    format_word,
    full_complexity_block,
    named_word,
    parse_word,
    prepend,
)

G = parse_quad("(3-sqrt(5))/2")
G1 = parse_quad("(-1+sqrt(5))/2")
MIXED_DIR = DirectiveSequence.parse("0,0,1,0,1,1,0,1,[0,1]")


# --- Thue-Morse ----------------------------------------------------------------


def test_tm_block_factor_example():
    # the factors of 1100110100110010 alternate between 11010010 and 10010110
    g = parse_word("11010010")
    h = parse_word("10010110")
    steer = tm_local_pattern(2)
    assert format_word(interleave_finite([g, h], steer)) == "1100110100110010"
    assert TM_BLOCK_FACTORS[2].replace(".", "") == "1100110100110010"


def test_tm_shuffle_depth_2_15():
    t0 = time.perf_counter()
    w = tm_shuffle(2**15)
    rep = verify_witness(named_word("thue-morse"), w)
    assert rep.ok and not rep.starved
    assert time.perf_counter() - t0 < 5


# --- block constructions -------------------------------------------------------


@pytest.mark.parametrize(
    "name, build",
    [("fibonacci", fibonacci_shuffle), ("period-doubling", period_doubling_shuffle)],
)
def test_fixed_point_block_shuffles(name, build):
    rep = verify_witness(named_word(name), build(10**4))
    assert rep.ok and min(rep.consumed) > 1000


def test_three_shuffle_first_blocks():
    blocks = three_shuffle_blocks(2)
    assert [format_word(b) for b in blocks[0]] == ["0100", "0100", "01"]
    assert format_word(blocks[1][2]) == "00010001"


def test_three_shuffle_k3_depth_10_4():
    w = three_shuffle_example(10**4)
    rep = verify_witness(named_word("three-shuffle-example"), w)
    assert w.k == 3 and rep.ok and not rep.starved


def test_full_complexity_blocks():
    for i in range(1, 9):
        steer = shuffle_dp(full_complexity_block(i + 1), full_complexity_block(i), full_complexity_block(i))
        assert steer is not None
        assert interleave_finite([full_complexity_block(i)] * 2, steer) == full_complexity_block(i + 1)
    assert verify_witness(named_word("full-complexity"), full_complexity_shuffle(3000)).ok


@given(st.lists(st.integers(0, 1), max_size=7), st.lists(st.integers(0, 1), max_size=7), st.randoms())
def test_shuffle_dp_against_brute_force(a, b, rnd):
    from itertools import combinations

    z = list(a + b)
    rnd.shuffle(z)
    n = len(z)
    truth = False
    for first in combinations(range(n), len(a)):
        chosen = set(first)
        steer = tuple(1 if i in chosen else 2 for i in range(n))
        if interleave_finite([a, b], steer) == tuple(z):
            truth = True
            break
    got = shuffle_dp(z, a, b)
    assert (got is not None) == truth
    if got is not None:
        assert interleave_finite([a, b], got) == tuple(z)


def test_shift_transport_gives_shifted_witness():
    x = named_word("fibonacci")
    w = fibonacci_shuffle(2000)
    for p in (1, 2, 3):
        common = FIBONACCI.power(p, (1,))  # prefix shared by both images
        t = shift_transport(FIBONACCI, p, w)
        assert verify_witness(drop(x, len(common)), t).ok


# --- rotation machine ----------------------------------------------------------


@pytest.mark.parametrize("rho", [G, QuadExt.rational(1, 3), parse_quad("(-1+sqrt(5))/4")])
def test_rotation_machine_golden(rho):
    res = sturmian_shuffle(G, rho, rho, rho, 10**4)
    assert verify_witness(mechanical(SturmianSpec(G, rho)), res.witness).ok
    for a, b in res.transitions:
        assert b in ROTATION_EDGES[a]


def test_rotation_machine_rejects_rho_zero():
    with pytest.raises(ValueError, match="rho"):
        sturmian_shuffle(G, 0, 0, 0, 100)
    with pytest.raises(ValueError, match="rho"):
        sturmian_shuffle(G, 1, 1, 1, 100)


def test_rotation_machine_requires_order():
    with pytest.raises(ValueError):
        sturmian_shuffle(G, QuadExt.rational(1, 2), QuadExt.rational(1, 3), QuadExt.rational(1, 4), 50)


def test_01C_starts_in_case_1_2_and_matches_pal():
    res = sturmian_shuffle(G, (1 - G, True), (1 - G, True), (1 - G, True), 3000)
    assert res.trace[0][0] == "1.2"
    assert res.delay == 2
    pal = pal_shuffle(DirectiveSequence((), (0, 1)), "01C", 3000)
    # same interleaving with the copy labels exchanged
    assert res.witness.steering == tuple(3 - s for s in pal.witness.steering)


def steers_into(sources, steering, target) -> bool:
    """Letter-by-letter check that steering draws target from (long enough) source prefixes."""
    pos = [0] * len(sources)
    for i, j in enumerate(steering):
        if sources[j - 1][pos[j - 1]] != target[i]:
            return False
        pos[j - 1] += 1
    return True


def _random_point(rng, d):
    while True:
        c = rng.randint(2, 40)
        q = QuadExt.rational(rng.randint(1, c - 1), c) if rng.random() < 0.4 else (
            parse_quad(f"({rng.randint(-40, 40)}+{rng.randint(1, 9)}*sqrt({d}))/{c}")
        )
        q = q.frac()
        if q != 0:
            return q


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_rotation_machine_random_triples(seed, d):
    rng = random.Random(seed)
    alpha = _random_point(rng, d)
    while alpha.is_rational:
        alpha = _random_point(rng, d)
    pts = sorted(_random_point(rng, d) for _ in range(3))
    res = sturmian_shuffle(alpha, *pts, 600)
    s, m, l = (mechanical(SturmianSpec(alpha, p)).prefix(600) for p in pts)
    assert steers_into([s, l], res.witness.steering, m)
    assert all(b in ROTATION_EDGES[a] for a, b in res.transitions)


def test_upper_and_lower_codings_mix():
    # S = 0C (lower coding of 0), L = 1C (upper coding of 0), M strictly between
    r = QuadExt.rational(0)
    mid = QuadExt.rational(2, 5)
    res = sturmian_shuffle(G1, (r, False), mid, (r, True), 2000)
    s = rotation_word(G1, 0).prefix(2000)
    l = rotation_word(G1, 0, upper=True).prefix(2000)
    m = rotation_word(G1, mid).prefix(2000)
    assert steers_into([s, l], res.witness.steering, m)


def test_equal_points_need_nonzero_partner():
    r = QuadExt.rational(0)
    with pytest.raises(ValueError, match="rho"):
        sturmian_shuffle(G1, (r, False), (r, False), (r, True), 100)


# --- characteristic and palindromic shuffles -----------------------------------


@pytest.mark.parametrize("directive", ["[0,1]", "[0,0,1,0,1,1,0,1]", "0,1,1,0,[0,1,1]"])
def test_characteristic_shuffle_inequalities_and_verification(directive):
    cw = characteristic_from_directive(DirectiveSequence.parse(directive))
    kappa = kappa_from_word(cw, 2001, horizon=200000)
    plan = _characteristic_plan(kappa, 1000)
    assert plan.negatives() == []
    w, _ = characteristic_shuffle(kappa, 1000)
    assert verify_witness(cw, w).ok


def test_characteristic_plan_examples():
    kappa = kappa_from_word(named_word("fibonacci"), 9)
    assert kappa[:5] == [1, 2, 1, 2, 2]
    plan = _characteristic_plan(kappa, 3)
    assert plan.u1[0] == plan.u1[1] == kappa[0]
    assert plan.u2[0] == kappa[0]
    assert plan.v1[0] == kappa[1] - kappa[0] == 1


def test_characteristic_negative_rejected():
    with pytest.raises(ValueError):
        characteristic_shuffle([3, 0, 0, 0, 0, 0, 0, 0, 0], 10)


def test_pal_shuffle_block_structure():
    p = pal_shuffle(MIXED_DIR, "01C", 1000)
    assert p.marked_groups()[:5] == ["01", "^0", "^0", "^100", "^0100"]
    assert p.k0[:4] == [1, 2, 4, 7]
    assert p.k1[:4] == [3, 5, 6, 8]
    q = pal_shuffle(MIXED_DIR, "10C", 1000)
    assert q.marked_groups()[:3] == ["10^0^0", "^100^0100", "^1000100^1000100"]


@pytest.mark.parametrize("variant, head", [("01C", (0, 1)), ("10C", (1, 0))])
def test_pal_shuffles_verify(variant, head):
    x = prepend(head, characteristic_from_directive(MIXED_DIR))
    p = pal_shuffle(MIXED_DIR, variant, 1000)
    assert verify_witness(x, p.witness).ok
    assert p.word[:1000] == x.prefix(1000)


def test_pal_shuffle_rejects_leading_one():
    with pytest.raises(ValueError):
        pal_shuffle(DirectiveSequence.parse("1,[0,1]"), "01C", 10)
