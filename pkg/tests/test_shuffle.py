import json
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selfshuffle.shuffle import (
    ShuffleWitness,
    brute_force_steering_prefixes,
    consistent_steering_prefixes,
    frontier_step,
    initial_frontier,
    interleave,
    interleave_finite,
    search_self_shuffle,
    steering_to_word,
    transport_witness,
    verify_witness,
)
from selfshuffle.sturmian import SturmianSpec, mechanical
from selfshuffle.words import Morphism, format_word, named_word, parse_word, periodic, prepend


def test_interleave_finite_example():
    from itertools import permutations

    srcs = [parse_word("0010"), parse_word("101"), parse_word("11")]
    steerings = set(permutations((1,) * 4 + (2,) * 3 + (3,) * 2))
    outs = {format_word(interleave_finite(srcs, s)) for s in steerings}
    assert "011100110" in outs
    assert all(len(o) == 9 for o in outs)


def test_interleave_finite_starves():
    assert interleave_finite([(0,), (1,)], (1, 1)) is None


def test_interleave_infinite():
    z = interleave([periodic((0,)), periodic((1,))], (1, 2) * 10)
    assert format_word(z.prefix(6)) == "010101"


def test_steering_example():
    c = steering_to_word("1111231223123", 13)
    assert c.text() == "abcdaaabcbadc"
    assert c.ell == [0, 1, 2, 3, 0, 0, 4, 1, 2, 1, 5, 3, 2]


def test_steering_two_symbols_self_certifies():
    s = (1, 1, 2) * 200
    c = steering_to_word(s, 600)
    assert c.rank == 2
    assert verify_witness(c.word, ShuffleWitness(2, s)).ok


def test_steering_constant_prefix_rejected():
    with pytest.raises(ValueError):
        steering_to_word((1,) * 10, 10)


@given(st.lists(st.integers(1, 3), min_size=2, max_size=60).filter(lambda s: len(set(s)) > 1))
def test_steering_word_is_steered_by_s(s):
    c = steering_to_word(s, len(s))
    r = next(i for i, v in enumerate(s) if v != s[0])
    assert c.rank == r
    assert verify_witness(c.word, ShuffleWitness(max(s), tuple(s))).ok


def test_frontier_hand_examples():
    x = prepend((0,), periodic((1,)))
    f1 = frontier_step(x, initial_frontier(2))
    assert f1.vertices == {(1, 0), (0, 1)}
    assert frontier_step(x, f1).vertices == {(2, 0), (0, 2)}
    y = periodic((0, 1))
    f2 = frontier_step(y, frontier_step(y, initial_frontier(2)))
    assert (1, 1) not in f2.vertices


@given(st.lists(st.integers(0, 1), min_size=6, max_size=10), st.sampled_from([2, 3]))
def test_graph_paths_match_brute_force(x, k):
    n = min(len(x), 8 if k == 2 else 6)
    assert consistent_steering_prefixes(x, k, n) == brute_force_steering_prefixes(x, k, n)


def naive_search_status(x, k, depth, thr, engage):
    """Plain reachability over letter-matching steps, no feasibility pruning."""
    level = {(0,) * k}
    for n in range(1, depth + 1):
        nxt = set()
        for t in level:
            for j in range(k):
                if x[t[j]] == x[n - 1]:
                    u = t[:j] + (t[j] + 1,) + t[j + 1 :]
                    if n < engage or min(u) > 0:
                        nxt.add(u)
        level = nxt
        if not level:
            return "dead"
    return "witness" if any(min(t) >= thr for t in level) else "dead"


@given(st.lists(st.integers(0, 2), min_size=24, max_size=24), st.sampled_from([2, 3]), st.integers(1, 5))
def test_pruned_search_agrees_with_naive(x, k, thr):
    depth = 24
    res = search_self_shuffle(x, k=k, depth=depth, threshold=thr, delay=thr)
    assert res.status == naive_search_status(x, k, depth, thr, thr)
    if res.witness is not None:
        w = res.witness
        assert verify_witness(x, w).ok
        assert min(w.consumed()) >= thr
        assert w.depth == depth


def test_fibonacci_search_and_shifted_steering():
    x = named_word("fibonacci")
    res = search_self_shuffle(x, depth=2000)
    assert res.status == "witness" and verify_witness(x, res.witness).ok
    s = tuple(a + 1 for a in x.prefix(1002)[2:])
    assert verify_witness(x, ShuffleWitness(2, s)).ok


def test_periodic_negative_is_dead():
    res = search_self_shuffle(prepend((0,), periodic((1,))), depth=400)
    assert res.status == "dead"
    assert res.level == 100  # regression constant: threshold 100 unreachable one step past depth/4


def test_memory_bound_reports_alive():
    res = search_self_shuffle(periodic((0,)), depth=200, memory_bound=50)
    assert res.status == "alive"


def test_witness_json_roundtrip():
    w = ShuffleWitness(3, (1, 2, 3, 3, 1))
    data = json.loads(w.dumps())
    assert data["schema"] == 1 and data["steering"] == "12331" and data["consumed"] == [2, 1, 2]
    assert ShuffleWitness.from_json(data) == w
    with pytest.raises(ValueError):
        ShuffleWitness.from_json({"k": 2, "steering": "123"})


def test_verify_reports_mismatch_and_starved():
    x = named_word("thue-morse")
    rep = verify_witness(x, ShuffleWitness(2, (1,) * 10))
    assert rep.ok and rep.starved == [2]
    bad = verify_witness(x, ShuffleWitness(2, (1, 2, 1, 2)))
    assert not bad.ok and bad.mismatch is not None


@given(
    st.lists(st.integers(0, 1), min_size=1, max_size=4),
    st.lists(st.integers(0, 1), min_size=1, max_size=4),
)
def test_transport_through_morphisms(img0, img1):
    mu = Morphism({0: img0, 1: img1})
    x = named_word("fibonacci")
    w = search_self_shuffle(x, depth=300).witness
    t = transport_witness(mu, x, w)
    assert verify_witness(mu(x), t).ok


def test_search_speed_fibonacci_depth_4000():
    t0 = time.perf_counter()
    res = search_self_shuffle(named_word("fibonacci"), depth=4000)
    assert res.status == "witness"
    assert time.perf_counter() - t0 < 30


def test_search_checks_arguments():
    with pytest.raises(ValueError):
        search_self_shuffle(named_word("fibonacci"), k=1)
