"""Finite and lazy infinite words, morphisms, fixed points and example words.

Letters are small nonnegative integers. A word keeps its display alphabet
separately so relabelings are cheap and exact.
"""

from __future__ import annotations

import threading
from collections.abc import Callable, Iterable, Iterator, Sequence
from itertools import count, product
from typing import Optional

__all__ = [
    "Word",
    "InfiniteWord",
    "Morphism",
    "parikh",
    "parse_word",
    "format_word",
    "fixed_point",
    "periodic",
    "drop",
    "prepend",
    "named_word",
    "NAMED_WORDS",
    "full_complexity_block",
    "lex_concat",
]

Word = tuple[int, ...]

DEFAULT_NAMES = tuple("0123456789") + tuple("abcdefghijklmnopqrstuvwxyz")


def parse_word(text: str, names: Sequence[str] = DEFAULT_NAMES) -> Word:
    index = {ch: i for i, ch in enumerate(names)}
    try:
        return tuple(index[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]!r} not in alphabet") from None


def format_word(w: Iterable[int], names: Sequence[str] = DEFAULT_NAMES) -> str:
    return "".join(names[a] for a in w)


def parikh(u: Iterable[int], size: int = 2) -> tuple[int, ...]:
    counts = [0] * size
    for a in u:
        if a >= len(counts):
            counts.extend([0] * (a + 1 - len(counts)))
        counts[a] += 1
    return tuple(counts)


class InfiniteWord:
    """A lazily produced infinite word with a thread-safe prefix cache.

    ``source`` is an iterator factory; it is called once and must never
    run dry.
    """

    def __init__(
        self,
        source: Callable[[], Iterator[int]],
        name: str = "word",
        names: Sequence[str] = DEFAULT_NAMES,
    ) -> None:
        self._it = source()
        self._cache: list[int] = []
        self._lock = threading.Lock()
        self.name = name
        self.names = tuple(names)
        # (preperiod, period) when the word is known to be ultimately periodic
        self.eventual_period: Optional[tuple[int, int]] = None

    @classmethod
    def from_function(cls, f: Callable[[int], int], name: str = "word") -> InfiniteWord:
        return cls(lambda: map(f, count()), name=name)

    def _extend(self, n: int) -> None:
        if len(self._cache) >= n:
            return
        with self._lock:
            need = n - len(self._cache)
            if need <= 0:
                return
            chunk = []
            it = self._it
            for _ in range(need):
                try:
                    chunk.append(next(it))
                except StopIteration:
                    raise RuntimeError(f"generator for {self.name} ran dry at {len(self._cache) + len(chunk)}") from None
            self._cache.extend(chunk)

    def prefix(self, n: int) -> Word:
        if n < 0:
            raise ValueError("negative length")
        self._extend(n)
        return tuple(self._cache[:n])

    def prefix_list(self, n: int) -> list[int]:
        """Like :meth:`prefix` but returns a fresh list (cheaper for hot loops)."""
        self._extend(n)
        return self._cache[:n]

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("infinite words have no negative indices")
        self._extend(i + 1)
        return self._cache[i]

    def __iter__(self) -> Iterator[int]:
        for i in count():
            yield self[i]

    def text(self, n: int) -> str:
        return format_word(self.prefix(n), self.names)

    def __repr__(self) -> str:
        return f"InfiniteWord({self.name!r})"


class Morphism:
    """A letter-to-word substitution."""

    def __init__(self, images: dict[int, Sequence[int]], allow_erasing: bool = False) -> None:
        self.images: dict[int, Word] = {a: tuple(w) for a, w in images.items()}
        self.erasing = any(len(w) == 0 for w in self.images.values())
        if self.erasing and not allow_erasing:
            raise ValueError("erasing morphism; pass allow_erasing=True")

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = DEFAULT_NAMES, allow_erasing: bool = False) -> Morphism:
        """Parse ``0:01,1:0`` style definitions."""
        images: dict[int, Word] = {}
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            src, sep, img = part.partition(":")
            if not sep or len(src) != 1:
                raise ValueError(f"bad morphism clause {part!r}")
            (a,) = parse_word(src, names)
            images[a] = parse_word(img, names)
        if not images:
            raise ValueError("empty morphism")
        return cls(images, allow_erasing=allow_erasing)

    def image(self, a: int) -> Word:
        try:
            return self.images[a]
        except KeyError:
            raise ValueError(f"letter {a} outside morphism domain") from None

    def apply(self, u: Iterable[int]) -> Word:
        out: list[int] = []
        for a in u:
            out.extend(self.image(a))
        return tuple(out)

    def __call__(self, u):
        if isinstance(u, InfiniteWord):
            return self.apply_infinite(u)
        return self.apply(u)

    def apply_infinite(self, w: InfiniteWord) -> InfiniteWord:
        def gen() -> Iterator[int]:
            for a in w:
                yield from self.image(a)

        return InfiniteWord(gen, name=f"mu({w.name})", names=w.names)

    def power(self, n: int, u: Sequence[int]) -> Word:
        out = tuple(u)
        for _ in range(n):
            out = self.apply(out)
        return out

    def __str__(self) -> str:
        return ",".join(f"{a}:{format_word(w)}" for a, w in sorted(self.images.items()))

    def __repr__(self) -> str:
        return f"Morphism({self})"


def fixed_point(mu: Morphism, a: int, name: Optional[str] = None) -> InfiniteWord:
    """The fixed point of a morphism prolongable on ``a``."""
    img = mu.image(a)
    if len(img) < 2 or img[0] != a:
        raise ValueError(f"morphism is not prolongable on {a}")

    def gen() -> Iterator[int]:
        # the word so far is mu(buf[:pos]) followed by pending letters; it reads itself
        buf: list[int] = list(img)
        yield from buf
        pos = 1
        while True:
            if pos >= len(buf):
                raise RuntimeError("fixed point is finite")
            new = mu.image(buf[pos])
            buf.extend(new)
            yield from new
            pos += 1

    return InfiniteWord(gen, name=name or f"fix({mu},{a})")


def periodic(period: Sequence[int], preperiod: Sequence[int] = (), name: Optional[str] = None) -> InfiniteWord:
    """The ultimately periodic word preperiod * period^omega."""
    if not period:
        raise ValueError("empty period")
    pre = tuple(preperiod)
    per = tuple(period)

    def gen() -> Iterator[int]:
        yield from pre
        while True:
            yield from per

    label = name or f"{format_word(pre)}({format_word(per)})^w"
    w = InfiniteWord(gen, name=label)
    w.eventual_period = (len(pre), len(per))
    return w


def drop(w: InfiniteWord, k: int) -> InfiniteWord:
    """The suffix of ``w`` obtained by deleting its first ``k`` letters."""

    def gen() -> Iterator[int]:
        for i in count(k):
            yield w[i]

    out = InfiniteWord(gen, name=f"T^{k}({w.name})", names=w.names)
    if w.eventual_period:
        p, q = w.eventual_period
        out.eventual_period = (max(p - k, 0), q)
    return out


def prepend(u: Sequence[int], w: InfiniteWord) -> InfiniteWord:
    pre = tuple(u)

    def gen() -> Iterator[int]:
        yield from pre
        yield from w

    out = InfiniteWord(gen, name=f"{format_word(pre)}.{w.name}", names=w.names)
    if w.eventual_period:
        p, q = w.eventual_period
        out.eventual_period = (p + len(pre), q)
    return out


def lex_concat(n: int) -> Word:
    """All binary words of length n in increasing lexicographic order, concatenated."""
    out: list[int] = []
    for t in product((0, 1), repeat=n):
        out.extend(t)
    return tuple(out)


def _v_block(i: int) -> Word:
    # i = n * 2^(n-1) selects the de Bruijn-like block z_n, else 0^i 1^i
    n = 1
    while n * 2 ** (n - 1) < i:
        n += 1
    if n * 2 ** (n - 1) == i:
        return lex_concat(n)
    return (0,) * i + (1,) * i


_y_cache: list[Word] = [()]
_y_lock = threading.Lock()


def _y_block(j: int) -> Word:
    with _y_lock:
        while len(_y_cache) <= j:
            m = len(_y_cache)
            prev = _y_cache[m - 1]
            _y_cache.append(prev + _v_block(m) + prev)
        return _y_cache[j]


def full_complexity_block(i: int) -> Word:
    """The i-th block of the full-complexity word; each block is a shuffle of two copies of the previous."""
    if i in (0, 1):
        return (0, 1)
    if i == 2:
        return (0, 0, 1, 1)
    return (0,) * i + _y_block(i - 2) + (1,) * i


def _full_complexity() -> InfiniteWord:
    def gen() -> Iterator[int]:
        for i in count():
            yield from full_complexity_block(i)

    return InfiniteWord(gen, name="full-complexity")


def _paper_folding() -> InfiniteWord:
    # Toeplitz pattern 0?1?: even positions are fixed, holes refill with the word itself
    def letter(n: int) -> int:
        while n % 2 == 1:
            n = (n - 1) // 2
        return 0 if n % 4 == 0 else 1

    return InfiniteWord.from_function(letter, name="paper-folding")


THUE_MORSE = Morphism.parse("0:01,1:10")
FIBONACCI = Morphism.parse("0:01,1:0")
PERIOD_DOUBLING = Morphism.parse("0:01,1:00")
THREE_SHUFFLE = Morphism.parse("0:0001,1:0101")


def _named(name: str) -> InfiniteWord:
    if name == "thue-morse":
        return fixed_point(THUE_MORSE, 0, name)
    if name == "fibonacci":
        return fixed_point(FIBONACCI, 0, name)
    if name == "period-doubling":
        return fixed_point(PERIOD_DOUBLING, 0, name)
    if name == "paper-folding":
        return _paper_folding()
    if name == "full-complexity":
        return _full_complexity()
    if name == "three-shuffle-example":
        w = drop(fixed_point(THREE_SHUFFLE, 0), 2)
        w.name = name
        return w
    raise KeyError(name)


NAMED_WORDS = (
    "thue-morse",
    "fibonacci",
    "period-doubling",
    "paper-folding",
    "full-complexity",
    "three-shuffle-example",
)


def named_word(name: str) -> InfiniteWord:
    """A fresh lazy instance of one of the built-in example words."""
    try:
        return _named(name)
    except KeyError:
        raise ValueError(f"unknown word {name!r}; choose from {', '.join(NAMED_WORDS)}") from None
