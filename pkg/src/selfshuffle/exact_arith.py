"""Exact arithmetic in real quadratic fields and on the unit circle.

Values have the form ``(a + b*sqrt(d)) / c`` with integer coefficients.
Every comparison and floor is decided with integer arithmetic only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Union

__all__ = [
    "QuadExt",
    "CirclePoint",
    "RadicandMismatch",
    "quad_make",
    "quad_cmp",
    "frac",
    "rotate",
    "parse_quad",
    "as_quad",
]

RATIONAL_SENTINEL = 0


class RadicandMismatch(ValueError):
    """Two irrational values live in different quadratic fields."""


def _squarefree(d: int) -> bool:
    if d < 2:
        return d == 1
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _sign_of(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d), exact."""
    if b == 0 or d == 0:
        return (a > 0) - (a < 0)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: the larger magnitude wins; a*a == b*b*d is impossible
    return sa if a * a > b * b * d else sb


@total_ordering
@dataclass(frozen=True)
class QuadExt:
    """The number (a + b*sqrt(d)) / c in canonical form.

    Use :func:`quad_make` (or the arithmetic operators) rather than the
    raw constructor, which does not canonicalize.
    """

    a: int
    b: int
    c: int
    d: int

    # construction helpers

    @staticmethod
    def rational(num: int, den: int = 1) -> QuadExt:
        return quad_make(num, 0, den, RATIONAL_SENTINEL)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def _common_d(self, other: QuadExt) -> int:
        if self.is_rational:
            return other.d
        if other.is_rational or other.d == self.d:
            return self.d
        raise RadicandMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # arithmetic

    def __add__(self, other: object) -> QuadExt:
        o = as_quad(other)  # type: ignore[arg-type]
        d = self._common_d(o)
        return quad_make(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return quad_make(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other: object) -> QuadExt:
        return self + (-as_quad(other))  # type: ignore[arg-type]

    def __rsub__(self, other: object) -> QuadExt:
        return as_quad(other) - self  # type: ignore[arg-type]

    def __mul__(self, other: object) -> QuadExt:
        o = as_quad(other)  # type: ignore[arg-type]
        d = self._common_d(o)
        a = self.a * o.a + self.b * o.b * d
        b = self.a * o.b + self.b * o.a
        return quad_make(a, b, self.c * o.c, d)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadExt:
        o = as_quad(other)  # type: ignore[arg-type]
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero")
        d = self._common_d(o)
        # multiply by the conjugate of the denominator
        norm = o.a * o.a - o.b * o.b * d
        conj = quad_make(o.a * o.c, -o.b * o.c, norm, d)
        return self * conj

    def __rtruediv__(self, other: object) -> QuadExt:
        return as_quad(other) / self  # type: ignore[arg-type]

    # ordering

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = as_quad(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other: object) -> bool:
        return quad_cmp(self, as_quad(other)) < 0  # type: ignore[arg-type]

    # rounding

    def floor(self) -> int:
        if self.is_rational:
            return self.a // self.c
        m = self.b * self.b * self.d
        r = isqrt(m)
        # b*sqrt(d) lies strictly between two consecutive integers
        t = r if self.b > 0 else -r - 1
        return (self.a + t) // self.c

    def __floor__(self) -> int:
        return self.floor()

    def frac(self) -> QuadExt:
        return self - self.floor()

    # display

    def __float__(self) -> float:
        if self.is_rational:
            return self.a / self.c
        return (self.a + self.b * self.d**0.5) / self.c

    def decimal(self, places: int = 12) -> str:
        """Truncated decimal expansion, computed exactly."""
        scale = 10**places
        n = (self * scale).floor()
        sign = "-" if n < 0 else ""
        n = abs(n)
        whole, part = divmod(n, scale)
        if places == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{part:0{places}d}"

    def __str__(self) -> str:
        if self.is_rational:
            return f"{self.a}" if self.c == 1 else f"{self.a}/{self.c}"
        op = "+" if self.b >= 0 else "-"
        num = f"({self.a}{op}{abs(self.b)}*sqrt({self.d}))"
        return num if self.c == 1 else f"{num}/{self.c}"

    def __repr__(self) -> str:
        return f"QuadExt({self})"

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "text": str(self),
            "decimal": self.decimal(12),
            "approx": True,
        }


Number = Union[int, Fraction, QuadExt]


def quad_make(a: int, b: int, c: int, d: int) -> QuadExt:
    """Canonical representation of (a + b*sqrt(d)) / c."""
    if c == 0:
        raise ZeroDivisionError("denominator c must be nonzero")
    if b != 0:
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        if d == 0:
            b = 0
        elif not _squarefree(d):
            raise ValueError(f"radicand {d} is not square-free")
        elif d == 1:
            a, b = a + b, 0
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(a, b), c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    if b == 0:
        d = RATIONAL_SENTINEL
    return QuadExt(a, b, c, d)


def as_quad(x: Number) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return QuadExt(x, 0, 1, RATIONAL_SENTINEL)
    if isinstance(x, Fraction):
        return quad_make(x.numerator, 0, x.denominator, RATIONAL_SENTINEL)
    raise TypeError(f"cannot convert {type(x).__name__} to QuadExt")


def quad_cmp(x: QuadExt, y: QuadExt) -> int:
    """-1, 0 or 1 according to x < y, x == y, x > y."""
    if x.b and y.b and x.d != y.d:
        raise RadicandMismatch(f"cannot compare sqrt({x.d}) with sqrt({y.d})")
    d = x.d if x.b else y.d
    # sign of x - y with positive common denominator x.c*y.c
    a = x.a * y.c - y.a * x.c
    b = x.b * y.c - y.b * x.c
    return _sign_of(a, b, d)


def frac(x: Number) -> CirclePoint:
    return CirclePoint(as_quad(x))


def rotate(p: CirclePoint, alpha: Number) -> CirclePoint:
    return CirclePoint(p.value + as_quad(alpha))


@total_ordering
class CirclePoint:
    """A point of [0, 1), reduced mod 1 on construction."""

    __slots__ = ("value",)

    def __init__(self, value: Number) -> None:
        v = as_quad(value)
        object.__setattr__(self, "value", v - v.floor())

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CirclePoint is immutable")

    def rotate(self, alpha: Number) -> CirclePoint:
        return CirclePoint(self.value + as_quad(alpha))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CirclePoint):
            return self.value == other.value
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.value == as_quad(other)
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        o = other.value if isinstance(other, CirclePoint) else as_quad(other)  # type: ignore[arg-type]
        return self.value < o

    def __hash__(self) -> int:
        return hash(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"CirclePoint({self.value})"


_TERM = re.compile(r"([+-]?)(\d*)\*?(sqrt\((\d+)\))?")


def _parse_numerator(text: str) -> tuple[int, int, int]:
    a = b = 0
    d = RATIONAL_SENTINEL
    pos = 0
    if not text:
        raise ValueError("empty number")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse number near {text[pos:]!r}")
        sgn = -1 if m.group(1) == "-" else 1
        coef = m.group(2)
        if m.group(3):
            k = int(coef) if coef else 1
            rad = int(m.group(4))
            if d not in (RATIONAL_SENTINEL, rad):
                raise RadicandMismatch("mixed radicands in one literal")
            d = rad
            b += sgn * k
        else:
            if not coef:
                raise ValueError(f"cannot parse number near {text[pos:]!r}")
            a += sgn * int(coef)
        pos = m.end()
    return a, b, d


def parse_quad(text: str) -> QuadExt:
    """Parse ``(a+b*sqrt(d))/c``, ``a/c``, ``a`` or a decimal like ``0.25``."""
    s = "".join(text.split())
    if re.fullmatch(r"[+-]?\d*\.\d+", s):
        return as_quad(Fraction(s))
    den = 1
    m = re.fullmatch(r"(.*)/([+-]?\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    a, b, d = _parse_numerator(s)
    return quad_make(a, b, den, d)
