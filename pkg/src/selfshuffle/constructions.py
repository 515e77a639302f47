"""Explicit self-shuffles: Thue-Morse, Sturmian rotations, characteristic and
palindromic shuffles, and the block constructions for specific example words.

Every constructor returns a :class:`ShuffleWitness` that
:func:`verify_witness` can check letter by letter.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from math import lcm
from typing import Optional, Union

from .exact_arith import Number, QuadExt, _sign_of, as_quad
from .shuffle import ShuffleWitness
from .sturmian import CharacteristicWord, DirectiveSequence
from .words import (
    PERIOD_DOUBLING,
    THREE_SHUFFLE,
    FIBONACCI,
    InfiniteWord,
    Morphism,
    Word,
    fixed_point,
    format_word,
    full_complexity_block,
    parse_word,
)

__all__ = [
    "TM_BLOCK_FACTORS",
    "tm_local_pattern",
    "tm_shuffle",
    "fibonacci_shuffle",
    "period_doubling_shuffle",
    "RotationMachine",
    "RotationResult",
    "Trajectory",
    "ROTATION_EDGES",
    "sturmian_shuffle",
    "characteristic_shuffle",
    "kappa_from_word",
    "CharacteristicPlan",
    "pal_shuffle",
    "PalShuffle",
    "three_shuffle_blocks",
    "three_shuffle_example",
    "shuffle_dp",
    "full_complexity_shuffle",
    "shift_transport",
]


def _runs_to_steering(runs: Sequence[tuple[int, int]], depth: int) -> tuple[int, ...]:
    out: list[int] = []
    for copy, n in runs:
        out.extend([copy] * n)
        if len(out) >= depth:
            break
    if len(out) < depth:
        raise ValueError("construction ran short of the requested depth")
    return tuple(out[:depth])


# --- Thue-Morse --------------------------------------------------------------

TM_SIGMA = Morphism({1: (1, 2), 2: (3, 1), 3: (3, 4), 4: (1, 3)})
_U = parse_word("01101")
_V = parse_word("001")


def _bar(w: Word) -> Word:
    return tuple(1 - a for a in w)


TM_G = Morphism({1: _V + _bar(_U), 2: _bar(_V) + _bar(_U), 3: _bar(_V) + _U, 4: _V + _U})
TM_H = Morphism({1: _U + _V, 2: _bar(_U) + _bar(_V), 3: _bar(_U) + _bar(_V), 4: _U + _V})

# g(sigma(a)) cut into pieces taken alternately from g(a) and h(a)
TM_BLOCK_FACTORS = {
    1: "0.011.0.010.11.01.0010",
    2: "1.100.1.1.010.0110.010",
}
_TM_COMPLEMENT = {3: 1, 4: 2}


def tm_local_pattern(a: int) -> tuple[int, ...]:
    """Steering of g(sigma(a)) from (g(a), h(a)): copy 1 is g, copy 2 is h."""
    base = _TM_COMPLEMENT.get(a, a)
    pieces = TM_BLOCK_FACTORS[base].split(".")
    out: list[int] = []
    for i, piece in enumerate(pieces):
        out.extend([1 + i % 2] * len(piece))
    return tuple(out)


def tm_shuffle(depth: int) -> ShuffleWitness:
    """Self-shuffle of the Thue-Morse word from the block identity on sigma's fixed point."""
    w = fixed_point(TM_SIGMA, 1)
    patterns = {a: tm_local_pattern(a) for a in (1, 2, 3, 4)}
    out: list[int] = [1] * len(_U)
    i = 0
    while len(out) < depth:
        out.extend(patterns[w[i]])
        i += 1
    return ShuffleWitness(2, tuple(out[:depth]))


# --- fixed-point block shuffles ---------------------------------------------


def fibonacci_shuffle(depth: int) -> ShuffleWitness:
    """x = phi(x_0) x_0 phi(x_1) x_1 ...; the steering word is the second shift of x."""
    x = fixed_point(FIBONACCI, 0)
    return ShuffleWitness(2, tuple(a + 1 for a in x.prefix(depth + 2)[2:]))


def period_doubling_shuffle(depth: int) -> ShuffleWitness:
    """Interleave U_0 V_0 U_1 V_1 ... with U_0 = 0100, V_0 = 01, U_i = s^(i+1)(1), V_i = s^i(1)."""
    runs = [(1, 4), (2, 2)]
    total = 6
    prev = PERIOD_DOUBLING.apply((1,))
    img = PERIOD_DOUBLING.apply(prev)
    while total < depth:
        runs.append((1, len(img)))
        runs.append((2, len(prev)))
        total += len(img) + len(prev)
        prev, img = img, PERIOD_DOUBLING.apply(img)
    return ShuffleWitness(2, _runs_to_steering(runs, depth))


def period_doubling_blocks(count: int) -> list[tuple[Word, Word]]:
    """The factor pairs (U_i, V_i) for i < count."""
    out = [(parse_word("0100"), parse_word("01"))]
    prev = PERIOD_DOUBLING.apply((1,))
    img = PERIOD_DOUBLING.apply(prev)
    for _ in range(1, count):
        out.append((img, prev))
        prev, img = img, PERIOD_DOUBLING.apply(img)
    return out


def shift_transport(mu: Morphism, power: int, w: ShuffleWitness) -> ShuffleWitness:
    """Witness for u^{-1}x (or ux) from a witness of a fixed point x of mu.

    When every mu^power(a) begins (or ends) with the same word u, each
    block of the shuffle maps to a block of the same length in the shifted
    word, so the steering is the morphic transport through mu^power.
    """
    x_word = None
    for a in sorted(mu.images):
        img = mu.image(a)
        if len(img) >= 2 and img[0] == a:
            x_word = fixed_point(mu, a)
            break
    if x_word is None:
        raise ValueError("morphism has no prolongable letter")
    xs = x_word.prefix(w.depth)
    out: list[int] = []
    for a, j in zip(xs, w.steering):
        out.extend([j] * len(mu.power(power, (a,))))
    return ShuffleWitness(w.k, tuple(out))


# --- rotation machine -------------------------------------------------------

ROTATION_EDGES: dict[str, frozenset[str]] = {
    "1.1": frozenset({"2.1"}),
    "1.2": frozenset({"1.1"}),
    "2.1": frozenset({"3.1", "3.2", "4"}),
    "2.2": frozenset({"6.1"}),
    "3.1": frozenset({"2.1", "2.2", "5"}),
    "3.2": frozenset({"1.1"}),
    "4": frozenset({"1.1", "1.2"}),
    "5": frozenset({"6.1", "6.2"}),
    "6.1": frozenset({"3.1"}),
    "6.2": frozenset({"6.1"}),
}
_INITIAL_ORDER = ("1.1", "1.2", "2.1", "2.2", "3.1", "3.2", "6.1", "6.2")


class _Circle:
    """Points (A + B*sqrt(d))/c of [0, 1) over a fixed common denominator."""

    def __init__(self, alpha: QuadExt, others: Sequence[QuadExt]) -> None:
        self.d = alpha.d
        self.c = lcm(alpha.c, *(q.c for q in others))
        self.alpha = self.lift(alpha)
        self.one = (self.c, 0)
        self.boundary = (self.c - self.alpha[0], -self.alpha[1])  # 1 - alpha

    def lift(self, q: QuadExt) -> tuple[int, int]:
        f = self.c // q.c
        return (q.a * f, q.b * f)

    def drop(self, p: tuple[int, int]) -> QuadExt:
        from .exact_arith import quad_make

        return quad_make(p[0], p[1], self.c, self.d if p[1] else 0)

    def cmp(self, p: tuple[int, int], q: tuple[int, int]) -> int:
        return _sign_of(p[0] - q[0], p[1] - q[1], self.d)

    def rotate(self, p: tuple[int, int]) -> tuple[int, int]:
        q = (p[0] + self.alpha[0], p[1] + self.alpha[1])
        if self.cmp(q, self.one) >= 0:
            q = (q[0] - self.c, q[1])
        return q

    def minus(self, p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
        r = (p[0] - q[0], p[1] - q[1])
        if _sign_of(r[0], r[1], self.d) < 0:
            r = (r[0] + self.c, r[1])
        return r

    def hits_boundary(self, p: tuple[int, int]) -> bool:
        """Does p + n*alpha equal 0 or 1 - alpha (mod 1) for some n >= 0?"""
        aA, aB = self.alpha
        A, B = p
        # p = -m*alpha (mod 1) for some m >= 0 covers both targets
        if aB == 0:
            return False
        if B % aB:
            return False
        m = -B // aB
        if m < 0:
            return False
        return (A + m * aA) % self.c == 0


@dataclass
class Trajectory:
    """A tail of one Sturmian word: its rotation point, coding convention and source copy."""

    point: tuple[int, int]
    upper: bool
    copy: int
    consumed: int = 0


@dataclass
class RotationResult:
    witness: ShuffleWitness
    trace: list[tuple[str, int, int, int]]
    transitions: list[tuple[str, str]]
    delay: int
    conjugated: bool

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "trace": [list(t) for t in self.trace],
            "delay": self.delay,
            "conjugated": self.conjugated,
        }


class _Done(Exception):
    pass


class RotationMachine:
    """Ten-state machine producing M as a shuffle of S and L (all of one slope below 1/2).

    Copies are numbered 1 (the S word) and 2 (the L word). The labels s and
    l float between the two copies; m always tracks M.
    """

    def __init__(self, circle: _Circle, s: Trajectory, m: Trajectory, l: Trajectory, max_run: int = 10**7) -> None:
        self.circle = circle
        self.t = {"s": s, "m": m, "l": l}
        self.steering: list[int] = []
        self.trace: list[tuple[str, int, int, int]] = []
        self.transitions: list[tuple[str, str]] = []
        self.max_run = max_run
        self.depth = 0

    # geometry

    def letter(self, t: Trajectory) -> int:
        c = self.circle.cmp(t.point, self.circle.boundary)
        if t.upper:
            return 1 if c > 0 or t.point == (0, 0) else 0
        return 1 if c >= 0 else 0

    def _lex_point(self, t: Trajectory) -> tuple[int, int]:
        # the upper coding of 0 starts with 1 and sits just below 1
        return self.circle.one if t.upper and t.point == (0, 0) else t.point

    def lex(self, a: Trajectory, b: Trajectory) -> int:
        """Lexicographic order of the two tails (codings are monotone in the point)."""
        c = self.circle.cmp(self._lex_point(a), self._lex_point(b))
        if c:
            return c
        if a.upper == b.upper or not self.circle.hits_boundary(a.point):
            return 0
        # the orbit meets 1 - alpha, coded 0 from above and 1 from below
        return -1 if a.upper else 1

    def rho(self, name: str) -> tuple[int, int]:
        return self.t[name].point

    def _pred_c(self) -> bool:
        s, m, l = self.rho("s"), self.rho("m"), self.rho("l")
        zero = (0, 0)
        return (m == s and l == zero) or (m == l and s == zero)

    def _pred_p1(self) -> bool:
        return self.rho("s") == self.circle.alpha and self.rho("m") == (0, 0) and self.rho("l") == self.circle.boundary

    def _pred_p2(self) -> bool:
        diff = self.circle.minus(self.rho("l"), self.rho("m"))
        return (diff == self.circle.alpha and self.rho("s") == self.circle.boundary) or self.rho("m") == (0, 0)

    def holds(self, case: str) -> bool:
        s, m, l = self.t["s"], self.t["m"], self.t["l"]
        cells = (self.letter(s), self.letter(m), self.letter(l))
        sm, ml = self.lex(s, m), self.lex(m, l)
        if case == "1.1":
            return cells == (0, 0, 0) and sm <= 0 and ml < 0 and not self._pred_c()
        if case == "1.2":
            return cells == (0, 0, 0) and sm <= 0 and ml == 0 and not self._pred_c()
        if case == "2.1":
            return cells == (0, 0, 1) and sm < 0 and not self._pred_c()
        if case == "2.2":
            return cells == (0, 0, 1) and sm == 0 and not self._pred_c()
        if case == "3.1":
            return cells == (0, 1, 1) and ml < 0 and not self._pred_c()
        if case == "3.2":
            return cells == (0, 1, 1) and ml == 0 and not self._pred_c()
        if case == "4":
            return (
                cells == (0, 1, 1)
                and ml > 0
                and self.circle.cmp(s.point, self.circle.alpha) >= 0
                and not self._pred_p1()
            )
        if case == "5":
            diff = self.circle.minus(l.point, m.point)
            return (
                cells == (0, 0, 1)
                and sm > 0
                and self.circle.cmp(diff, self.circle.alpha) <= 0
                and not self._pred_p2()
            )
        if case == "6.1":
            return cells == (1, 1, 1) and sm < 0 and ml <= 0 and not self._pred_c()
        if case == "6.2":
            return cells == (1, 1, 1) and sm == 0 and ml <= 0 and not self._pred_c()
        raise KeyError(case)

    # motion

    def _follow_once(self, name: str) -> None:
        f, m = self.t[name], self.t["m"]
        if self.letter(f) != self.letter(m):
            raise AssertionError(f"follower {name} disagrees with m at output {len(self.steering)}")
        self.steering.append(f.copy)
        for t in (f, m):
            t.point = self.circle.rotate(t.point)
            t.consumed += 1
        if len(self.steering) >= self.depth:
            raise _Done

    def _follow_while_same_cell(self, name: str) -> None:
        steps = 0
        while self.letter(self.t[name]) == self.letter(self.t["m"]):
            self._follow_once(name)
            steps += 1
            if steps > self.max_run:
                raise AssertionError("follower never separated from m")

    def _follow_until(self, name: str, cond) -> None:
        steps = 0
        while not cond():
            self._follow_once(name)
            steps += 1
            if steps > self.max_run:
                raise AssertionError("exit condition never reached")

    def _swap(self) -> None:
        self.t["s"], self.t["l"] = self.t["l"], self.t["s"]

    def _between_zero_and_s(self) -> bool:
        m, l, s = self.rho("m"), self.rho("l"), self.rho("s")
        cmp = self.circle.cmp
        return m == l and cmp(m, (0, 0)) > 0 and cmp(m, s) < 0

    def _s_meets_m_above_l(self) -> bool:
        m, s, l = self.rho("m"), self.rho("s"), self.rho("l")
        return m == s and self.circle.cmp(m, l) > 0

    def execute(self, case: str) -> None:
        if case in ("1.1", "3.1"):
            self._follow_while_same_cell("l")
        elif case in ("2.1", "6.1"):
            self._follow_while_same_cell("s")
        elif case in ("1.2", "3.2"):
            self._follow_until("l", self._between_zero_and_s)
            self._swap()
        elif case in ("2.2", "6.2"):
            self._follow_until("s", self._s_meets_m_above_l)
            self._swap()
        elif case == "4":
            self._follow_once("l")
            self._swap()
        elif case == "5":
            self._follow_once("s")
            self._swap()
        else:
            raise KeyError(case)

    def classify(self, candidates) -> str:
        hits = [c for c in candidates if self.holds(c)]
        if len(hits) != 1:
            state = {k: (self.circle.drop(v.point), v.upper, v.copy, v.consumed) for k, v in self.t.items()}
            raise AssertionError(f"expected exactly one case among {sorted(candidates)}, got {hits}; state {state}")
        return hits[0]

    def _snapshot(self, case: str) -> None:
        self.trace.append((case, self.t["s"].consumed, self.t["m"].consumed, self.t["l"].consumed))

    def run(self, depth: int) -> None:
        self.depth = depth
        if depth <= 0:
            return
        case = self.classify(_INITIAL_ORDER)
        last_total = -1
        pending = 0
        try:
            while True:
                self._snapshot(case)
                self.execute(case)
                nxt = self.classify(ROTATION_EDGES[case])
                self.transitions.append((case, nxt))
                total = len(self.steering)
                pending += 1
                if total > last_total:
                    last_total, pending = total, 0
                elif pending >= 2:
                    raise AssertionError(f"no progress across two transitions ending in {nxt}")
                case = nxt
        except _Done:
            pass


def _as_point(value: Union[Number, tuple]) -> tuple[QuadExt, bool]:
    if isinstance(value, tuple):
        rho, upper = value
        return as_quad(rho), bool(upper)
    return as_quad(value), False


def sturmian_shuffle(
    alpha: Number,
    rho_s: Union[Number, tuple],
    rho_m: Union[Number, tuple],
    rho_l: Union[Number, tuple],
    depth: int,
) -> RotationResult:
    """Steering word showing M in sh(S, L) for Sturmian words of slope alpha.

    Each word is given by its rotation point in [0, 1) (rho = 1 means the
    point 0 with the upper coding); pass ``(rho, True)`` for the upper
    coding explicitly. Copy 1 is S and copy 2 is L.
    """
    a = as_quad(alpha)
    if a.is_rational or not (0 < a < 1):
        raise ValueError("slope must be irrational in (0, 1)")
    pts = []
    for v in (rho_s, rho_m, rho_l):
        r, up = _as_point(v)
        if r == 1:
            r, up = as_quad(0), True
        if not (0 <= r < 1):
            raise ValueError("intercepts must lie in [0, 1]")
        if not r.is_rational and r.d != a.d:
            raise ValueError("intercepts must lie in the slope's quadratic field")
        pts.append((r, up))

    conjugated = a > QuadExt.rational(1, 2)
    if conjugated:
        # exchange letters: slope 1 - alpha, points negated, coding flipped, order reversed
        a = 1 - a
        pts = [((-r).frac(), not up) for r, up in pts]
    circle = _Circle(a, [r for r, _ in pts])
    ts, tm, tl = (Trajectory(circle.lift(r), up, copy) for (r, up), copy in zip(pts, (1, 0, 2)))
    if conjugated:
        ts, tl = tl, ts
    machine = RotationMachine(circle, ts, tm, tl)
    if machine.lex(ts, tm) > 0 or machine.lex(tm, tl) > 0:
        raise ValueError("need S <= M <= L in lexicographic order")
    zero = (0, 0)
    if ts.point == tm.point and tl.point == zero:
        raise ValueError("rho(M) = rho(S) requires rho(L) != 0")
    if tm.point == tl.point and ts.point == zero:
        raise ValueError("rho(M) = rho(L) requires rho(S) != 0")
    machine.run(depth)
    steering = tuple(machine.steering)
    first = steering[0] if steering else 1
    delay = next((i for i, j in enumerate(steering) if j != first), len(steering))
    return RotationResult(ShuffleWitness(2, steering), machine.trace, machine.transitions, delay, conjugated)


# --- characteristic shuffle -------------------------------------------------


def kappa_from_word(word: Union[InfiniteWord, Sequence[int]], count: int, horizon: Optional[int] = None) -> list[int]:
    """Exponents k_1, k_2, ... of x = prod 0^{k_i} 1, by run-length scanning."""
    limit = horizon or 64 * (count + 2)
    xs = word.prefix(limit) if isinstance(word, InfiniteWord) else tuple(word[:limit])
    out: list[int] = []
    run = 0
    for a in xs:
        if a == 0:
            run += 1
        elif a == 1:
            out.append(run)
            run = 0
            if len(out) >= count:
                return out
        else:
            raise ValueError("binary word expected")
    raise ValueError(f"found only {len(out)} blocks within horizon {limit}")


@dataclass
class CharacteristicPlan:
    kappa: list[int]
    u1: list[int]
    v1: list[int]
    u2: list[int]
    v2: list[int]

    def negatives(self) -> list[tuple[str, int, int]]:
        out = []
        for name in ("u1", "v1", "u2", "v2"):
            for n, val in enumerate(getattr(self, name), start=1):
                if val < 0:
                    out.append((name, n, val))
        return out


def _characteristic_plan(kappa: Sequence[int], blocks: int) -> CharacteristicPlan:
    if len(kappa) < 2 * blocks + 1:
        raise ValueError("need at least 2*blocks + 1 exponents")
    pre = [0]
    for k in kappa:
        pre.append(pre[-1] + k)

    def ksum(i: int, j: int) -> int:  # sum_{t=i}^{j} k_t, 1-indexed, empty if j < i
        return pre[j] - pre[i - 1] if j >= i else 0

    k1 = kappa[0]
    u1, v1, u2, v2 = [], [], [], []
    for n in range(1, blocks + 1):
        u1.append(k1 if n <= 2 else ksum(1, n - 1) - ksum(n + 1, 2 * n - 2))
        v1.append(ksum(n + 1, 2 * n) - ksum(1, n))
        u2.append(k1 if n == 1 else ksum(1, n) - ksum(n + 1, 2 * n - 1))
        v2.append(ksum(n + 2, 2 * n + 1) - ksum(1, n))
    return CharacteristicPlan(list(kappa), u1, v1, u2, v2)


def characteristic_shuffle(kappa: Sequence[int], depth: int) -> tuple[ShuffleWitness, CharacteristicPlan]:
    """Interleave (0^{u1} 1 0^{v1})(0^{u2} 1 0^{v2}) block pairs of x = prod 0^{k_i} 1.

    Raises ValueError if some u or v is negative within the blocks needed.
    """
    blocks = 1
    while True:
        need = 2 * blocks + 1
        if len(kappa) < need:
            raise ValueError("not enough exponents for the requested depth")
        plan = _characteristic_plan(kappa[:need], blocks)
        length = sum(plan.u1) + sum(plan.v1) + sum(plan.u2) + sum(plan.v2) + 2 * blocks
        if length >= depth:
            break
        blocks *= 2
    bad = plan.negatives()
    if bad:
        raise ValueError(f"negative block exponent {bad[0]}; the word violates the required inequalities")
    runs = []
    for n in range(blocks):
        runs.append((1, plan.u1[n] + 1 + plan.v1[n]))
        runs.append((2, plan.u2[n] + 1 + plan.v2[n]))
    return ShuffleWitness(2, _runs_to_steering(runs, depth)), plan


# --- palindromic shuffles ---------------------------------------------------


@dataclass
class PalShuffle:
    witness: ShuffleWitness
    word: Word
    blocks: list[tuple[int, Word, list[int]]] = field(default_factory=list)
    k0: list[int] = field(default_factory=list)
    k1: list[int] = field(default_factory=list)

    def groups(self) -> list[str]:
        """Maximal runs of consecutive blocks from the same copy."""
        out: list[tuple[int, str]] = []
        for copy, w, _ in self.blocks:
            text = format_word(w)
            if out and out[-1][0] == copy:
                out[-1] = (copy, out[-1][1] + text)
            else:
                out.append((copy, text))
        return [t for _, t in out]

    def marked_groups(self) -> list[str]:
        """Groups with each directive-marked letter prefixed by '^'."""
        out: list[tuple[int, str]] = []
        for copy, w, marks in self.blocks:
            text = "".join(("^" if i in marks else "") + str(a) for i, a in enumerate(w))
            if out and out[-1][0] == copy:
                out[-1] = (copy, out[-1][1] + text)
            else:
                out.append((copy, text))
        return [t for _, t in out]


def pal_shuffle(directive: DirectiveSequence, variant: str, depth: int) -> PalShuffle:
    """Self-shuffle of 01C or 10C from the blocks w_k of the palindromic closure.

    For 01C the copy giving the leading 01 also gives every w_k with
    a_k = 0, k >= 2; the other copy gives w_1 and every w_k with a_k = 1.
    For 10C the copy giving the leading 1 0^{k_1(1)} continues with the
    blocks for a_k = 1 past k_1(1); the other copy gives the rest.
    """
    if variant not in ("01C", "10C"):
        raise ValueError("variant must be 01C or 10C")
    if directive[1] != 0:
        raise ValueError("the directive sequence must begin with 0")
    cw = CharacteristicWord(directive)
    blocks: list[tuple[int, Word, list[int]]] = []
    total = 0
    k1_first = None
    k = 0
    while k1_first is None:
        k += 1
        if k > 10**6:
            raise ValueError("directive sequence never contains 1")
        if directive[k] == 1:
            k1_first = k
    if variant == "01C":
        blocks.append((1, (0, 1), []))
        blocks.append((2, cw.block(1), [0]))
        total = 3
        k = 2
    else:
        blocks.append((1, (1, 0) + (0,) * (k1_first - 1), list(range(2, k1_first + 1))))
        blocks.append((2, cw.block(k1_first), [0]))
        total = 1 + k1_first + len(cw.block(k1_first))
        k = k1_first + 1
    while total < depth:
        w = cw.block(k)
        a = directive[k]
        copy = (1 if a == 0 else 2) if variant == "01C" else (1 if a == 1 else 2)
        blocks.append((copy, w, [0]))
        total += len(w)
        k += 1
    runs = [(copy, len(w)) for copy, w, _ in blocks]
    word = tuple(a for _, w, _ in blocks for a in w)
    k0 = [i for i in range(1, k) if directive[i] == 0]
    k1 = [i for i in range(1, k) if directive[i] == 1]
    return PalShuffle(ShuffleWitness(2, _runs_to_steering(runs, depth)), word, blocks, k0, k1)


# --- the three-copy example -------------------------------------------------


def _sigma_pow(i: int, w: Sequence[int]) -> Word:
    return THREE_SHUFFLE.power(i, w)


def _strip(prefix: Word, w: Word) -> Word:
    if w[: len(prefix)] != prefix:
        raise AssertionError(f"{format_word(prefix)} is not a prefix of {format_word(w)}")
    return w[len(prefix) :]


def three_shuffle_blocks(rounds: int) -> list[tuple[Word, Word, Word]]:
    """Blocks (U_n, V_n, W_n) for n < rounds; indices 0 and 1 are special, then period 4."""
    s0 = THREE_SHUFFLE.apply((0,))
    out = [
        (parse_word("0100"), parse_word("0100"), parse_word("01")),
        (parse_word("01"), parse_word("01"), s0 + s0),
    ]
    n = 2
    while len(out) < rounds:
        i, r = divmod(n - 2, 4)
        r += 2
        if r == 2:
            blk = ((), _strip(s0, _sigma_pow(i + 1, (0,))), ())
        elif r == 3:
            blk = (_sigma_pow(i + 1, parse_word("0100")), s0, _strip(s0, _sigma_pow(i + 1, (0, 1))))
        elif r == 4:
            blk = (s0, _strip(s0, _sigma_pow(i + 1, (0, 1))) + s0, ())
        else:
            blk = (_strip(s0, _sigma_pow(i + 1, (0, 1))), (), _sigma_pow(i + 2, (0,)) + s0)
        out.append(blk)
        n += 1
    return out


def three_shuffle_example(depth: int) -> ShuffleWitness:
    """A 3-copy self-shuffle of the word obtained by deleting 00 from the fixed point of 0->0001, 1->0101."""
    rounds = 8
    while True:
        blocks = three_shuffle_blocks(rounds)
        if sum(len(u) + len(v) + len(w) for u, v, w in blocks) >= depth:
            break
        rounds *= 2
    runs = []
    for u, v, w in blocks:
        runs.extend([(1, len(u)), (2, len(v)), (3, len(w))])
    return ShuffleWitness(3, _runs_to_steering(runs, depth))


# --- full-complexity word ---------------------------------------------------


def shuffle_dp(z: Sequence[int], a: Sequence[int], b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Exhaustive test of z in sh(a, b); returns a steering over {1, 2} preferring copy 1, or None."""
    if len(z) != len(a) + len(b):
        return None
    n, m = len(a), len(b)
    # ok[i][j]: a[i:], b[j:] can produce z[i+j:]
    ok = [[False] * (m + 1) for _ in range(n + 1)]
    ok[n][m] = True
    for i in range(n, -1, -1):
        row = ok[i]
        nxt = ok[i + 1] if i < n else None
        for j in range(m, -1, -1):
            if i == n and j == m:
                continue
            t = z[i + j]
            row[j] = (i < n and a[i] == t and nxt[j]) or (j < m and b[j] == t and row[j + 1])
    if not ok[0][0]:
        return None
    i = j = 0
    out = []
    while i + j < len(z):
        t = z[i + j]
        if i < n and a[i] == t and ok[i + 1][j]:
            out.append(1)
            i += 1
        else:
            out.append(2)
            j += 1
    return tuple(out)


def full_complexity_shuffle(depth: int) -> ShuffleWitness:
    """Self-shuffle built blockwise: X_0 X_1 from two copies of X_0, then X_{i+1} from two copies of X_i."""
    out: list[int] = [1, 1, 2, 2]
    i = 1
    while len(out) < depth:
        local = shuffle_dp(full_complexity_block(i + 1), full_complexity_block(i), full_complexity_block(i))
        if local is None:
            raise AssertionError(f"block {i + 1} is not a shuffle of two copies of block {i}")
        out.extend(local)
        i += 1
    return ShuffleWitness(2, tuple(out[:depth]))
