"""Sturmian words from slope/intercept and from directive sequences."""

from __future__ import annotations

import re
import threading
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import count
from math import isqrt

from .exact_arith import Number, QuadExt, as_quad, parse_quad
from .words import InfiniteWord, Word

__all__ = [
    "SturmianSpec",
    "DirectiveSequence",
    "mechanical",
    "rotation_word",
    "floor_line",
    "pal_closure",
    "longest_palindromic_suffix",
    "CharacteristicWord",
    "characteristic_from_directive",
    "directive_blocks",
]


@dataclass(frozen=True)
class SturmianSpec:
    alpha: QuadExt
    rho: QuadExt

    def __init__(self, alpha: Number, rho: Number) -> None:
        a, r = as_quad(alpha), as_quad(rho)
        if a.is_rational:
            raise ValueError("slope must be irrational")
        if not (0 < a < 1):
            raise ValueError("slope must lie in (0, 1)")
        if not (0 <= r <= 1):
            raise ValueError("intercept must lie in [0, 1]")
        if not r.is_rational and r.d != a.d:
            raise ValueError("slope and intercept must share a quadratic field")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "rho", r)

    @classmethod
    def parse(cls, alpha: str, rho: str) -> SturmianSpec:
        return cls(parse_quad(alpha), parse_quad(rho))


def floor_line(alpha: QuadExt, rho: QuadExt) -> Iterator[int]:
    """Yield floor(n*alpha + rho) for n = 0, 1, 2, ... using integers only."""
    d = alpha.d if alpha.b else rho.d
    c = alpha.c * rho.c
    da = alpha.a * rho.c
    db = alpha.b * rho.c
    a0 = rho.a * alpha.c
    b0 = rho.b * alpha.c
    for n in count():
        a = a0 + n * da
        b = b0 + n * db
        if b == 0:
            yield a // c
        else:
            r = isqrt(b * b * d)
            t = r if b > 0 else -r - 1
            yield (a + t) // c


def mechanical(spec: SturmianSpec) -> InfiniteWord:
    """The mechanical word z(alpha, rho); rho = 1 gives the word starting with 1."""
    alpha, rho = spec.alpha, spec.rho
    top = rho == 1

    def gen() -> Iterator[int]:
        floors = floor_line(alpha, QuadExt.rational(0) if top else rho)
        prev = next(floors)
        first = True
        for f in floors:
            z = f - prev
            prev = f
            if first and top:
                z = 1
            first = False
            yield z

    return InfiniteWord(gen, name=f"z({alpha},{rho})")


def rotation_word(alpha: Number, rho: Number, upper: bool = False) -> InfiniteWord:
    """Coding of the orbit of rho under rotation by alpha.

    The lower coding puts the boundary points 0 and 1-alpha into the cells
    [0, 1-alpha) -> 0 and [1-alpha, 1) -> 1; the upper coding uses
    (0, 1-alpha] -> 0 and (1-alpha, 1] -> 1 instead.
    """
    a, r = as_quad(alpha), as_quad(rho)
    if not (0 <= r < 1):
        raise ValueError("rotation point must lie in [0, 1)")
    if not upper:
        return mechanical(SturmianSpec(a, r))

    def gen() -> Iterator[int]:
        # ceil(y) = -floor(-y)
        floors = floor_line(-a, -r)
        prev = -next(floors)
        for f in floors:
            yield -f - prev
            prev = -f

    return InfiniteWord(gen, name=f"z'({a},{r})")


def longest_palindromic_suffix(u: Sequence[int]) -> int:
    """Length of the longest palindromic suffix of u, via the prefix function."""
    n = len(u)
    if n == 0:
        return 0
    # prefix function of reverse(u) + sentinel + u
    s = list(reversed(u)) + [-1] + list(u)
    pi = [0] * len(s)
    for i in range(1, len(s)):
        k = pi[i - 1]
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    return pi[-1]


def pal_closure(u: Sequence[int]) -> Word:
    """The shortest palindrome having u as a prefix."""
    u = tuple(u)
    p = longest_palindromic_suffix(u)
    head = u[: len(u) - p]
    return u + tuple(reversed(head))


class DirectiveSequence:
    """A binary sequence a_1 a_2 ..., finite or ultimately periodic."""

    def __init__(self, prefix: Sequence[int], period: Sequence[int] = ()) -> None:
        if any(b not in (0, 1) for b in (*prefix, *period)):
            raise ValueError("directive bits must be 0 or 1")
        self.prefix = tuple(prefix)
        self.period = tuple(period)

    @property
    def infinite(self) -> bool:
        return bool(self.period)

    @classmethod
    def parse(cls, text: str) -> DirectiveSequence:
        """Parse ``0,0,1,0`` (finite) or ``0,0,[1,0]`` (bracketed tail repeats)."""
        s = "".join(text.split())
        m = re.fullmatch(r"([01](?:,[01])*)?,?(?:\[([01](?:,[01])*)\])?", s)
        if not s or m is None:
            raise ValueError(f"bad directive sequence {text!r}")
        head = [int(b) for b in m.group(1).split(",")] if m.group(1) else []
        tail = [int(b) for b in m.group(2).split(",")] if m.group(2) else []
        return cls(head, tail)

    def __getitem__(self, k: int) -> int:
        """The bit a_k, 1-indexed."""
        if k < 1:
            raise IndexError("directive sequences are 1-indexed")
        i = k - 1
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.period:
            raise IndexError(f"finite directive sequence has no bit {k}")
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def __len__(self) -> int:
        if self.period:
            raise TypeError("infinite directive sequence")
        return len(self.prefix)

    def positions(self, a: int, upto: int) -> list[int]:
        """Indices k <= upto with a_k = a, in increasing order."""
        return [k for k in range(1, upto + 1) if self[k] == a]

    def __str__(self) -> str:
        head = ",".join(map(str, self.prefix))
        if not self.period:
            return head
        tail = "[" + ",".join(map(str, self.period)) + "]"
        return f"{head},{tail}" if head else tail


class CharacteristicWord:
    """Iterated palindromic closures Phi(k) of a directive sequence and their limit."""

    def __init__(self, directive: DirectiveSequence) -> None:
        self.directive = directive
        self._phi: list[int] = []
        self._ends: list[int] = [0]  # _ends[k] = |Phi(k)|
        self._last: dict[int, int] = {}
        self._lock = threading.Lock()

    def _grow(self, k: int) -> None:
        with self._lock:
            while len(self._ends) <= k:
                j = len(self._ends)  # computing Phi(j)
                a = self.directive[j]
                prev = self._ends[j - 1]
                if a in self._last:
                    # Phi(j) = Phi(j-1) . Phi(i-1)^{-1} Phi(j-1), i the previous index with a_i = a
                    cut = self._ends[self._last[a] - 1]
                    block = self._phi[cut:prev]
                else:
                    block = [a] + self._phi[:prev]
                self._phi.extend(block)
                self._ends.append(len(self._phi))
                self._last[a] = j

    def phi(self, k: int) -> Word:
        self._grow(k)
        return tuple(self._phi[: self._ends[k]])

    def block(self, k: int) -> Word:
        """The word w_k with Phi(k) = Phi(k-1) w_k."""
        if k < 1:
            raise ValueError("blocks are indexed from 1")
        self._grow(k)
        return tuple(self._phi[self._ends[k - 1] : self._ends[k]])

    def length(self, k: int) -> int:
        self._grow(k)
        return self._ends[k]

    def prefix(self, n: int) -> Word:
        k = 0
        while self.length(k) < n:
            k += 1
            if k > 64 * (n + 2):
                raise RuntimeError("directive sequence does not produce an infinite word")
        return tuple(self._phi[:n])

    def word(self) -> InfiniteWord:
        def gen() -> Iterator[int]:
            k = 0
            produced = 0
            while True:
                k += 1
                n = self.length(k)
                if n > produced:
                    yield from self._phi[produced:n]
                    produced = n

        return InfiniteWord(gen, name=f"C[{self.directive}]")


def characteristic_from_directive(directive: DirectiveSequence) -> InfiniteWord:
    if not directive.infinite:
        raise ValueError("the limit word needs an infinite directive sequence")
    return CharacteristicWord(directive).word()


def directive_blocks(directive: DirectiveSequence, k: int) -> Word:
    return CharacteristicWord(directive).block(k)
