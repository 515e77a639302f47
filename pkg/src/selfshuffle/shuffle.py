"""Steering words, interleavings, witness verification and shuffle-graph search."""

from __future__ import annotations

import json
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from itertools import count, product
from typing import Optional, Union

import numpy as np

from .words import InfiniteWord, Morphism, Word, format_word

__all__ = [
    "ShuffleWitness",
    "WitnessReport",
    "Frontier",
    "SearchOutcome",
    "interleave",
    "interleave_finite",
    "verify_witness",
    "steering_to_word",
    "SteeringConstruction",
    "frontier_step",
    "initial_frontier",
    "search_self_shuffle",
    "run_frontier_search",
    "transport_witness",
    "consistent_steering_prefixes",
    "brute_force_steering_prefixes",
    "DEFAULT_MEMORY_BOUND",
]

DEFAULT_MEMORY_BOUND = 10**7

Steering = Union[Sequence[int], InfiniteWord]


def _steer_prefix(s: Steering, n: int) -> Sequence[int]:
    if isinstance(s, InfiniteWord):
        return s.prefix(n)
    if len(s) < n:
        raise ValueError(f"steering prefix has {len(s)} symbols, need {n}")
    return s[:n]


@dataclass(frozen=True)
class ShuffleWitness:
    """A finite certificate that k copies of a word interleave into it.

    ``steering[n]`` is the copy (1..k) supplying letter n.
    """

    k: int
    steering: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.steering)

    def consumed(self, depth: Optional[int] = None) -> list[int]:
        n = self.depth if depth is None else depth
        out = [0] * self.k
        for j in self.steering[:n]:
            out[j - 1] += 1
        return out

    def positions(self, j: int) -> list[int]:
        """The index set of copy j within the verified depth."""
        return [n for n, s in enumerate(self.steering) if s == j]

    def truncate(self, depth: int) -> ShuffleWitness:
        return ShuffleWitness(self.k, self.steering[:depth])

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "depth": self.depth,
            "steering": "".join(str(j) for j in self.steering),
            "consumed": self.consumed(),
        }

    def dumps(self) -> str:
        return json.dumps({"schema": 1, **self.to_json()}, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> ShuffleWitness:
        k = int(data["k"])
        if k > 9:
            raise ValueError("steering strings support at most 9 copies")
        steering = tuple(int(ch) for ch in data["steering"])
        if any(not 1 <= j <= k for j in steering):
            raise ValueError("steering symbol out of range")
        if "depth" in data and int(data["depth"]) != len(steering):
            raise ValueError("depth does not match steering length")
        return cls(k, steering)


def interleave(sources: Sequence[InfiniteWord], steering: Steering) -> InfiniteWord:
    """The word whose n-th letter is the next unread letter of source steering[n]."""
    k = len(sources)
    if k < 2:
        raise ValueError("need at least two sources")

    def gen() -> Iterator[int]:
        pos = [0] * k
        for n in count():
            j = steering[n] - 1
            yield sources[j][pos[j]]
            pos[j] += 1

    return InfiniteWord(gen, name="interleave")


def interleave_finite(sources: Sequence[Sequence[int]], steering: Sequence[int]) -> Optional[Word]:
    """Interleave finite words; None if the steering overruns or underuses a source."""
    pos = [0] * len(sources)
    out: list[int] = []
    for j in steering:
        src = sources[j - 1]
        if pos[j - 1] >= len(src):
            return None
        out.append(src[pos[j - 1]])
        pos[j - 1] += 1
    if any(p != len(s) for p, s in zip(pos, sources)):
        return None
    return tuple(out)


@dataclass
class WitnessReport:
    ok: bool
    depth: int
    mismatch: Optional[int]
    consumed: list[int]
    starved: list[int] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return bool(self.starved)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "depth": self.depth,
            "mismatch": self.mismatch,
            "consumed": self.consumed,
            "starved": self.starved,
        }


def verify_witness(x: Union[InfiniteWord, Sequence[int]], w: ShuffleWitness, depth: Optional[int] = None) -> WitnessReport:
    """Check that the steering word interleaves k copies of x into x up to depth.

    Copies that consumed nothing are listed in ``starved``; such a witness
    cannot extend to a partition into infinite sets.
    """
    n = w.depth if depth is None else depth
    if n > w.depth:
        raise ValueError(f"witness has depth {w.depth}, asked for {n}")
    xs = x.prefix_list(n) if isinstance(x, InfiniteWord) else list(x[:n])
    if len(xs) < n:
        raise ValueError("word prefix shorter than depth")
    pos = [0] * w.k
    mismatch = None
    steer = w.steering
    for i in range(n):
        j = steer[i] - 1
        if xs[pos[j]] != xs[i]:
            mismatch = i
            break
        pos[j] += 1
    starved = [j + 1 for j in range(w.k) if pos[j] == 0]
    return WitnessReport(mismatch is None, n, mismatch, pos, starved)


@dataclass
class SteeringConstruction:
    """The word x(s) built from a steering prefix, with its index data."""

    word: Word
    ell: list[int]
    classes: list[list[int]]
    rank: int

    @property
    def names(self) -> tuple[str, ...]:
        return tuple("abcdefghijklmnopqrstuvwxyz"[: self.rank]) if self.rank <= 26 else tuple(str(i) for i in range(self.rank))

    def text(self) -> str:
        return format_word(self.word, self.names)


def steering_to_word(s: Steering, depth: int) -> SteeringConstruction:
    """Build the word steered by s: position n is identified with position ell(n).

    ell(n) is the number of earlier occurrences of s[n]. Union-find over
    these identifications yields one class per letter.
    """
    steer = list(_steer_prefix(s, depth))
    if not steer:
        raise ValueError("empty steering prefix")
    first = steer[0]
    r = next((i for i, sym in enumerate(steer) if sym != first), None)
    if r is None:
        raise ValueError("steering prefix is constant; no second symbol within depth")
    seen: dict[int, int] = {}
    ell = []
    for sym in steer:
        seen[sym] = seen.get(sym, 0) + 1
        ell.append(seen[sym] - 1)

    parent = list(range(depth))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for n, e in enumerate(ell):
        a, b = find(n), find(e)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots: dict[int, int] = {}
    word = []
    classes: list[list[int]] = []
    for n in range(depth):
        root = find(n)
        if root not in roots:
            roots[root] = len(roots)
            classes.append([])
        word.append(roots[root])
        classes[roots[root]].append(n)
    if len(roots) != r:
        raise AssertionError(f"expected {r} classes, found {len(roots)}")
    return SteeringConstruction(tuple(word), ell, classes, r)


# --- shuffle graph -----------------------------------------------------------


@dataclass(frozen=True)
class Frontier:
    """Live vertices of the shuffle graph at one anti-diagonal level."""

    level: int
    vertices: frozenset[tuple[int, ...]]


class _PrefixCounts:
    """Cumulative letter counts of a word prefix, grown on demand."""

    def __init__(self, x: Union[InfiniteWord, Sequence[int]]) -> None:
        self.x = x
        self.rows: list[tuple[int, ...]] = [()]
        self.size = 0
        self.array: Optional[np.ndarray] = None

    def ensure(self, n: int) -> None:
        if len(self.rows) > n:
            return
        xs = self.x.prefix(n) if isinstance(self.x, InfiniteWord) else tuple(self.x[:n])
        if len(xs) < n:
            raise ValueError("word prefix too short")
        size = max(max(xs, default=0) + 1, self.size, 1)
        if size != self.size:
            self.size = size
            counts = [0] * size
            self.rows = [tuple(counts)]
            start = 0
        else:
            counts = list(self.rows[-1])
            start = len(self.rows) - 1
        for a in xs[start:]:
            counts[a] += 1
            self.rows.append(tuple(counts))
        self.array = None

    def vertex(self, t: Sequence[int]) -> bool:
        n = sum(t)
        self.ensure(n)
        rows = self.rows
        total = [0] * self.size
        for i in t:
            r = rows[i]
            for a in range(self.size):
                total[a] += r[a]
        return tuple(total) == rows[n]

    def np_counts(self, n: int) -> np.ndarray:
        self.ensure(n)
        if self.array is None or len(self.array) <= n:
            self.array = np.asarray(self.rows, dtype=np.int64)
        return self.array


def initial_frontier(k: int) -> Frontier:
    return Frontier(0, frozenset({(0,) * k}))


def frontier_step(x: Union[InfiniteWord, Sequence[int]], f: Frontier, _counts: Optional[_PrefixCounts] = None) -> Frontier:
    """Advance one level: increment one coordinate, keep tuples passing the Parikh test."""
    pc = _counts or _PrefixCounts(x)
    pc.ensure(f.level + 1)
    nxt = set()
    for t in f.vertices:
        for j in range(len(t)):
            u = t[:j] + (t[j] + 1,) + t[j + 1 :]
            if u not in nxt and pc.vertex(u):
                nxt.add(u)
    return Frontier(f.level + 1, frozenset(nxt))


class _Pair:
    """k = 2 frontier kept as a sorted array of first coordinates."""

    def __init__(self, pc: _PrefixCounts) -> None:
        self.pc = pc

    def start(self) -> np.ndarray:
        return np.zeros(1, dtype=np.int64)

    def step(self, level: int, s: np.ndarray) -> np.ndarray:
        m = level + 1
        c = self.pc.np_counts(m)
        cand = np.union1d(s, s + 1)
        ok = np.all(c[cand] + c[m - cand] == c[m], axis=1)
        return cand[ok]

    def size(self, s: np.ndarray) -> int:
        return int(s.size)

    def tuples(self, level: int, s: np.ndarray) -> list[tuple[int, int]]:
        return [(int(i), level - int(i)) for i in s]

    def contains(self, level: int, s: np.ndarray, t: tuple[int, ...]) -> bool:
        i = t[0]
        p = int(np.searchsorted(s, i))
        return p < s.size and int(s[p]) == i


class _General:
    def __init__(self, pc: _PrefixCounts, k: int) -> None:
        self.pc = pc
        self.k = k

    def start(self) -> frozenset:
        return frozenset({(0,) * self.k})

    def step(self, level: int, s: frozenset) -> frozenset:
        return frontier_step(self.pc.x, Frontier(level, s), self.pc).vertices

    def size(self, s: frozenset) -> int:
        return len(s)

    def tuples(self, level: int, s: frozenset) -> list[tuple[int, ...]]:
        return sorted(s)

    def contains(self, level: int, s: frozenset, t: tuple[int, ...]) -> bool:
        return t in s


@dataclass
class SearchOutcome:
    """Result of a bounded search of the shuffle graph.

    status is one of ``witness``, ``dead``, ``alive``. ``dead`` certifies
    that no path meets the witness conditions at this depth; ``alive``
    means the memory bound stopped the search.
    """

    status: str
    k: int
    depth: int
    level: Optional[int] = None
    witness: Optional[ShuffleWitness] = None
    frontier_size: int = 0
    best_min_coordinate: int = 0
    stall_level: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "k": self.k,
            "depth": self.depth,
            "level": self.level,
            "frontier_size": self.frontier_size,
            "best_min_coordinate": self.best_min_coordinate,
            "stall_level": self.stall_level,
            "note": self.note,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def search_self_shuffle(
    x: Union[InfiniteWord, Sequence[int]],
    k: int = 2,
    depth: int = 1000,
    memory_bound: int = DEFAULT_MEMORY_BOUND,
    threshold: Optional[int] = None,
    delay: Optional[int] = None,
    checkpoint: Optional[int] = None,
) -> SearchOutcome:
    """Breadth-first search of the shuffle graph over anti-diagonal levels.

    A depth witness is a path to level ``depth`` on which every copy has
    been used by level ``delay`` and has supplied at least ``threshold``
    letters at the end (both default to depth/(2k)). Vertices that can no
    longer satisfy these are pruned, so ``dead`` at level n certifies that
    no such path exists.

    Levels are kept only at checkpoints; the witness path is recovered by
    recomputing one segment at a time while walking backwards. Ties among
    predecessors go to the smallest copy index.
    """
    if k < 2 or depth < 1:
        raise ValueError("need k >= 2 and depth >= 1")
    pc = _PrefixCounts(x)
    pc.ensure(depth)
    base_eng = _Pair(pc) if k == 2 else _General(pc, k)
    return run_frontier_search(base_eng, k, depth, memory_bound, threshold, delay, checkpoint)


def run_frontier_search(
    base_eng,
    k: int,
    depth: int,
    memory_bound: int = DEFAULT_MEMORY_BOUND,
    threshold: Optional[int] = None,
    delay: Optional[int] = None,
    checkpoint: Optional[int] = None,
) -> SearchOutcome:
    """Pruned level-by-level search over any frontier engine.

    For k = 2 the engine holds sorted numpy arrays of first coordinates and
    must provide ``start``, ``step``, ``size``, ``tuples`` and ``contains``.
    """
    thr = threshold if threshold is not None else -(-depth // (2 * k))
    engage = delay if delay is not None else thr
    eng = _Pruned(base_eng, k, depth, thr, engage)
    block = checkpoint or max(16, int(depth**0.5))

    checkpoints = {0: eng.start()}
    cur = checkpoints[0]
    best = 0
    stall = 0
    for level in range(depth):
        cur = eng.step(level, cur)
        n = level + 1
        size = eng.size(cur)
        if size == 0:
            reason = "no live vertex uses every copy" if n >= engage and eng.last_engaged_drop else "threshold unreachable"
            return SearchOutcome("dead", k, depth, level=n, best_min_coordinate=best, stall_level=stall, note=reason)
        stored = sum(eng.size(v) for v in checkpoints.values())
        if size + stored > memory_bound:
            return SearchOutcome(
                "alive", k, depth, level=n, frontier_size=size, best_min_coordinate=best,
                stall_level=stall, note="memory bound exceeded; frontier truncated",
            )
        m = _max_min(eng, n, cur, k)
        if m > best:
            best, stall = m, n
        if n % block == 0:
            checkpoints[n] = cur

    final = eng.tuples(depth, cur)
    good = [t for t in final if min(t) >= thr]
    if not good:  # unreachable: pruning keeps only vertices that can meet the threshold
        raise AssertionError("pruned frontier survived without meeting the threshold")
    end = max(good, key=lambda t: (min(t), tuple(-v for v in t)))
    steering = _backtrack(eng, checkpoints, block, depth, end, k)
    w = ShuffleWitness(k, tuple(steering))
    return SearchOutcome("witness", k, depth, level=depth, witness=w, frontier_size=len(final),
                         best_min_coordinate=best, stall_level=stall)


class _Pruned:
    """Wraps a frontier engine, dropping vertices that cannot end a depth witness."""

    def __init__(self, inner, k: int, depth: int, threshold: int, engage: int) -> None:
        self.inner = inner
        self.k = k
        self.depth = depth
        self.threshold = threshold
        self.engage = engage
        self.last_engaged_drop = False

    def start(self):
        return self.inner.start()

    def step(self, level: int, s):
        nxt = self.inner.step(level, s)
        n = level + 1
        room = self.depth - n
        thr = self.threshold
        if self.k == 2:
            i = nxt
            j = n - nxt
            keep = np.maximum(0, thr - i) + np.maximum(0, thr - j) <= room
            before = int(np.count_nonzero(keep))
            if n >= self.engage:
                keep &= (i > 0) & (j > 0)
            self.last_engaged_drop = before > 0 and not keep.any()
            return nxt[keep]
        kept = set()
        feasible = 0
        for t in nxt:
            if sum(max(0, thr - v) for v in t) > room:
                continue
            feasible += 1
            if n >= self.engage and min(t) == 0:
                continue
            kept.add(t)
        self.last_engaged_drop = feasible > 0 and not kept
        return frozenset(kept)

    def size(self, s) -> int:
        return self.inner.size(s)

    def tuples(self, level: int, s):
        return self.inner.tuples(level, s)

    def contains(self, level: int, s, t) -> bool:
        return self.inner.contains(level, s, t)


def _max_min(eng, level: int, s, k: int) -> int:
    if k == 2:
        return int(np.max(np.minimum(s, level - s)))
    return max(min(t) for t in s)


def _backtrack(eng, checkpoints: dict, block: int, depth: int, end: tuple[int, ...], k: int) -> list[int]:
    steering = [0] * depth
    v = end
    top = depth
    while top > 0:
        base = ((top - 1) // block) * block
        levels = {base: checkpoints[base]}
        s = checkpoints[base]
        for lv in range(base, top - 1):
            s = eng.step(lv, s)
            levels[lv + 1] = s
        for n in range(top, base, -1):
            prev = levels[n - 1]
            for j in range(k):
                if v[j] == 0:
                    continue
                u = v[:j] + (v[j] - 1,) + v[j + 1 :]
                if eng.contains(n - 1, prev, u):
                    steering[n - 1] = j + 1
                    v = u
                    break
            else:
                raise AssertionError(f"no predecessor for {v} at level {n}")
        top = base
    return steering


# --- transport and oracles ---------------------------------------------------


def transport_witness(mu: Morphism, x: Union[InfiniteWord, Sequence[int]], w: ShuffleWitness) -> ShuffleWitness:
    """Steering word for mu(x): each letter's image comes from the same copy."""
    xs = x.prefix(w.depth) if isinstance(x, InfiniteWord) else tuple(x[: w.depth])
    out: list[int] = []
    for a, j in zip(xs, w.steering):
        out.extend([j] * len(mu.image(a)))
    return ShuffleWitness(w.k, tuple(out))


def consistent_steering_prefixes(x: Sequence[int], k: int, n: int) -> set[tuple[int, ...]]:
    """All steering prefixes of length n that stay inside the shuffle graph."""
    pc = _PrefixCounts(x)
    paths: dict[tuple[int, ...], set[tuple[int, ...]]] = {(0,) * k: {()}}
    for _ in range(n):
        nxt: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for t, ps in paths.items():
            for j in range(k):
                u = t[:j] + (t[j] + 1,) + t[j + 1 :]
                if pc.vertex(u):
                    nxt.setdefault(u, set()).update(p + (j + 1,) for p in ps)
        paths = nxt
    return set().union(*paths.values()) if paths else set()


def brute_force_steering_prefixes(x: Sequence[int], k: int, n: int) -> set[tuple[int, ...]]:
    """Oracle: every s in {1..k}^n whose interleaving of k copies of x reproduces x[:n]."""
    out = set()
    for s in product(range(1, k + 1), repeat=n):
        pos = [0] * k
        ok = True
        for i, j in enumerate(s):
            if x[pos[j - 1]] != x[i]:
                ok = False
                break
            pos[j - 1] += 1
        if ok:
            out.add(s)
    return out
