"""Necessary conditions for self-shuffling: Abelian borders, Lyndon tests and
the shuffling delay of Sturmian words."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .constructions import sturmian_shuffle
from .exact_arith import Number, QuadExt, as_quad
from .sturmian import rotation_word
from .words import InfiniteWord, Word

__all__ = [
    "BorderReport",
    "abelian_borders",
    "longest_abelian_border",
    "longest_ab_borderfree_prefix",
    "borderfree_prefixes",
    "LyndonReport",
    "lyndon_status",
    "DelayReport",
    "shuffling_delay_sturmian",
    "DelayDisagreement",
]


def _prefix_counts(u: Sequence[int]) -> np.ndarray:
    """Row t holds the Parikh vector of u[:t]."""
    arr = np.asarray(u, dtype=np.int64)
    size = int(arr.max()) + 1 if len(arr) else 1
    out = np.zeros((len(arr) + 1, size), dtype=np.int64)
    if len(arr):
        out[1:] = np.cumsum(np.eye(size, dtype=np.int64)[arr], axis=0)
    return out


@dataclass
class BorderReport:
    length: int
    borders: list[int]

    @property
    def border_free(self) -> bool:
        return not self.borders

    def to_json(self) -> dict:
        return {"length": self.length, "borders": self.borders, "border_free": self.border_free}


def _borders_from_counts(pc: np.ndarray, n: int, first_only: bool = False) -> list[int]:
    half = n // 2
    if half == 0:
        return []
    ells = np.arange(1, half + 1)
    # prefix of length l versus suffix of length l
    suffix = pc[n] - pc[n - ells]
    hits = np.nonzero((pc[1 : half + 1] == suffix).all(axis=1))[0]
    if first_only:
        return [int(hits[0]) + 1] if len(hits) else []
    return [int(h) + 1 for h in hits]


def abelian_borders(u: Sequence[int]) -> BorderReport:
    """All l with 1 <= l <= |u|/2 whose length-l prefix and suffix have equal letter counts."""
    u = tuple(u)
    return BorderReport(len(u), _borders_from_counts(_prefix_counts(u), len(u)))


def longest_abelian_border(u: Sequence[int]) -> int:
    """Longest Abelian border of length at most |u|/2 (0 if none)."""
    b = abelian_borders(u).borders
    return b[-1] if b else 0


@dataclass
class BorderFreeScan:
    length: int
    saturated: bool
    horizon: int
    lengths: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "saturated": self.saturated,
            "horizon": self.horizon,
            "borderfree_lengths": self.lengths,
        }


def longest_ab_borderfree_prefix(x: Union[InfiniteWord, Sequence[int]], horizon: int) -> BorderFreeScan:
    """Longest Abelian border-free prefix of length at most ``horizon``.

    ``saturated`` is set when that length exceeds half the horizon: no
    border-free prefix that long can be told apart from an unbounded family
    with the data scanned, so the answer is inconclusive.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    u = x.prefix(horizon) if isinstance(x, InfiniteWord) else tuple(x[:horizon])
    pc = _prefix_counts(u)
    found = [n for n in range(1, len(u) + 1) if not _borders_from_counts(pc, n, first_only=True)]
    best = found[-1] if found else 0
    return BorderFreeScan(best, 2 * best > horizon, horizon, found)


def borderfree_prefixes(u: Sequence[int]) -> list[int]:
    """Lengths n such that u[:n] has no (ordinary) border, in one pass."""
    out = []
    n = len(u)
    pi = [0] * n
    for i in range(n):
        if i:
            k = pi[i - 1]
            while k and u[i] != u[k]:
                k = pi[k - 1]
            if u[i] == u[k]:
                k += 1
            pi[i] = k
        if pi[i] == 0:
            out.append(i + 1)
    return out


@dataclass
class LyndonReport:
    order: tuple[int, ...]
    depth: int
    lyndon_consistent: bool
    witness_shift: Optional[int] = None
    exact: bool = False

    @property
    def status(self) -> str:
        return "consistent-to-depth" if self.lyndon_consistent else "not-lyndon"

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "depth": self.depth,
            "status": self.status,
            "witness_shift": self.witness_shift,
            "exact": self.exact,
        }


def lyndon_status(
    x: InfiniteWord,
    order: Sequence[int] = (0, 1),
    depth: int = 1000,
    window: Optional[int] = None,
) -> LyndonReport:
    """Compare x with each shift T^i x, 0 < i < depth, over ``window`` letters.

    ``order`` lists the alphabet from smallest to largest. A shift that is
    smaller than x, or provably equal to it, refutes the Lyndon property. A
    comparison that stays equal over the whole window counts as consistent
    unless the word carries exact periodicity data, in which case equality on
    preperiod + period letters is genuine equality.
    """
    rank = {a: r for r, a in enumerate(order)}
    window = window or depth
    exact_len = None
    if x.eventual_period is not None:
        p, q = x.eventual_period
        exact_len = p + q
        window = max(window, exact_len)
    u = x.prefix(depth + window)
    try:
        key = [rank[a] for a in u]
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]} missing from the order") from None
    base = key[:window]
    for i in range(1, depth):
        shifted = key[i : i + window]
        if shifted < base:
            return LyndonReport(tuple(order), depth, False, i)
        if shifted == base and exact_len is not None:
            return LyndonReport(tuple(order), depth, False, i, exact=True)
    return LyndonReport(tuple(order), depth, True)


class DelayDisagreement(AssertionError):
    """The border-free, Abelian border-free and lexicographic delays differ."""


@dataclass
class DelayReport:
    delay: int
    ab_borderfree: int
    borderfree: int
    lex_shift: int
    machine: Optional[int]
    horizon: int

    def to_json(self) -> dict:
        return {
            "delay": self.delay,
            "ab_borderfree": self.ab_borderfree,
            "borderfree": self.borderfree,
            "lex_shift": self.lex_shift,
            "machine": self.machine,
            "horizon": self.horizon,
        }


def _lex_shift(alpha: QuadExt, rho: QuadExt, upper: bool, first: int, limit: int) -> int:
    """Least n >= 1 with T^n x below x (x starting with 0) or above x (starting with 1).

    Codings with one convention are monotone in the rotation point, so the
    test is an exact comparison of points; the upper coding of 0 acts as 1.
    """

    def key(p: QuadExt) -> QuadExt:
        return QuadExt.rational(1) if upper and p == 0 else p

    k0 = key(rho)
    p = rho
    for n in range(1, limit + 1):
        p = (p + alpha).frac()
        kn = key(p)
        if (first == 0 and kn < k0) or (first == 1 and kn > k0):
            return n
    raise ValueError(f"no lexicographic descent within {limit} shifts")


def shuffling_delay_sturmian(
    alpha: Number,
    rho: Number,
    horizon: int = 2000,
    upper: bool = False,
    with_machine: bool = True,
) -> DelayReport:
    """Shuffling delay of the Sturmian word coding rho under rotation by alpha.

    Computes the longest Abelian border-free prefix, the longest
    border-free prefix and the first lexicographic descent (ascent when the
    word starts with 1) independently, and fails loudly if they differ.
    """
    a, r = as_quad(alpha), as_quad(rho)
    if r == 1:
        r, upper = as_quad(0), True
    if r == 0:
        raise ValueError("rho = 0 codes 0C or 1C, which are not self-shuffling")
    x = rotation_word(a, r, upper=upper)
    u = x.prefix(horizon)
    ab = longest_ab_borderfree_prefix(u, horizon)
    if ab.saturated:
        raise ValueError(f"horizon {horizon} too small: border-free prefix of length {ab.length}")
    bf = borderfree_prefixes(u)
    bf_len = bf[-1] if bf else 0
    lex = _lex_shift(a, r, upper, u[0], horizon)
    machine = None
    if with_machine:
        machine = sturmian_shuffle(a, (r, upper), (r, upper), (r, upper), max(4 * lex, 64)).delay
    values = {"ab_borderfree": ab.length, "borderfree": bf_len, "lex_shift": lex}
    if machine is not None:
        values["machine"] = machine
    if len(set(values.values())) != 1:
        raise DelayDisagreement(f"delay quantities disagree for alpha={a}, rho={r}: {values}")
    return DelayReport(lex, ab.length, bf_len, lex, machine, horizon)
