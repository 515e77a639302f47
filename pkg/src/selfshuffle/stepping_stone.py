"""Rotation embedding of the two-copy shuffle graph of a Sturmian word.

A pair (i, j) of consumed lengths is a vertex of the shuffle graph of
z(alpha, rho) exactly when ({i alpha}, {j alpha}) lies in the planar set K.
On top of that this module classifies points as dead, forced or free in
one parameter regime, follows the induced maps on the free set, extracts
lattice paths and draws them.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import lcm
from typing import Optional, TextIO, Union

import numpy as np

from .exact_arith import CirclePoint, Number, QuadExt, as_quad
from .shuffle import SearchOutcome, ShuffleWitness, run_frontier_search
from .sturmian import SturmianSpec, mechanical

__all__ = [
    "EmbeddingParams",
    "in_K",
    "EmbeddingReport",
    "graph_vs_embedding_check",
    "region_classify",
    "region_by_definition",
    "RegimeError",
    "tilde_map",
    "TildeResult",
    "StonePath",
    "PathResult",
    "path_extract",
    "path_from_witness",
    "write_csv",
    "render_svg",
]

REGIONS = ("D", "T1", "T2", "F")


class RegimeError(ValueError):
    """Parameters outside the regime where the closed-form regions are known."""


@dataclass(frozen=True)
class EmbeddingParams:
    alpha: QuadExt
    rho: QuadExt

    def __init__(self, alpha: Number, rho: Number) -> None:
        spec = SturmianSpec(alpha, rho)  # same validation as the word itself
        object.__setattr__(self, "alpha", spec.alpha)
        object.__setattr__(self, "rho", spec.rho)

    def in_regime(self) -> bool:
        """(1 - rho)/2 < alpha < min(rho, 1 - rho), all strict."""
        a, r = self.alpha, self.rho
        return (1 - r) / 2 < a and a < r and a < 1 - r

    def require_regime(self) -> None:
        if not self.in_regime():
            raise RegimeError(
                f"alpha={self.alpha}, rho={self.rho} outside (1-rho)/2 < alpha < min(rho, 1-rho); "
                "the dead set is only known in closed form there"
            )

    def spec(self) -> SturmianSpec:
        return SturmianSpec(self.alpha, self.rho)


def _q(v: Union[Number, CirclePoint]) -> QuadExt:
    return v.value if isinstance(v, CirclePoint) else as_quad(v)


def in_K(x: Union[Number, CirclePoint], y: Union[Number, CirclePoint], rho: Number) -> bool:
    """1_{x >= 1-rho} + 1_{y >= 1-rho} == floor(x + y + rho), decided exactly."""
    x, y, r = _q(x), _q(y), as_quad(rho)
    t = 1 - r
    lhs = (x >= t) + (y >= t)
    return lhs == (x + y + r).floor()


# --- vectorized exact orbit ---------------------------------------------------


def _sign_vec(a: np.ndarray, b: np.ndarray, d: int) -> np.ndarray:
    """Elementwise sign of a + b*sqrt(d)."""
    sa = np.sign(a)
    sb = np.sign(b)
    if d == 0:
        return sa
    mixed = np.sign(a * a - b * b * d)  # magnitude comparison when signs differ
    out = np.where(sb == 0, sa, np.where(sa == 0, sb, np.where(sa == sb, sa, np.where(mixed > 0, sa, sb))))
    return out


class _Orbit:
    """Points {i alpha} for i <= n as integer pairs over one denominator."""

    def __init__(self, params: EmbeddingParams, n: int) -> None:
        a, r = params.alpha, params.rho
        self.d = a.d if a.b else r.d
        self.c = lcm(a.c, r.c)
        self.rho = self._lift(r)
        self.t = self._lift(1 - r)
        pts = []
        p = as_quad(0)
        for _ in range(n + 1):
            pts.append(self._lift(p))
            p = (p + a).frac()
        big = max(abs(v) for pair in pts + [self.rho, (3 * self.c, 0)] for v in pair)
        dtype = np.int64 if big < 2**28 else object
        self.A = np.array([u for u, _ in pts], dtype=dtype)
        self.B = np.array([v for _, v in pts], dtype=dtype)
        self.high = _sign_vec(self.A - self.t[0], self.B - self.t[1], self.d) >= 0  # {i alpha} >= 1 - rho

    def _lift(self, q: QuadExt) -> tuple[int, int]:
        f = self.c // q.c
        return (q.a * f, q.b * f)

    def in_K(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        sa = self.A[i] + self.A[j] + self.rho[0]
        sb = self.B[i] + self.B[j] + self.rho[1]
        fl = (_sign_vec(sa - self.c, sb, self.d) >= 0).astype(int) + (_sign_vec(sa - 2 * self.c, sb, self.d) >= 0).astype(int)
        return self.high[i].astype(int) + self.high[j].astype(int) == fl

    def vertex(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        # the axes are vertices for every word; for rho < 1 they already lie in K
        return (i == 0) | (j == 0) | self.in_K(i, j)


# --- graph versus embedding ---------------------------------------------------


@dataclass
class EmbeddingReport:
    alpha: QuadExt
    rho: QuadExt
    n_max: int
    checked: int
    counterexamples: list[tuple[int, int, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "rho": self.rho.to_json(),
            "n_max": self.n_max,
            "checked": self.checked,
            "ok": self.ok,
            "counterexamples": [list(c) for c in self.counterexamples[:20]],
        }


def graph_vs_embedding_check(params: EmbeddingParams, n_max: int) -> EmbeddingReport:
    """Compare the letter-count vertex test on z(alpha, rho) with membership in K, for i + j <= n_max."""
    z = mechanical(params.spec()).prefix(n_max)
    ones = np.concatenate([[0], np.cumsum(z)]).astype(np.int64)
    orbit = _Orbit(params, n_max)
    ii, jj = np.meshgrid(np.arange(n_max + 1), np.arange(n_max + 1), indexing="ij")
    mask = ii + jj <= n_max
    i, j = ii[mask], jj[mask]
    graph = ones[i] + ones[j] == ones[i + j]
    emb = orbit.in_K(i, j)
    bad = np.nonzero(graph != emb)[0]
    cex = [(int(i[b]), int(j[b]), bool(graph[b]), bool(emb[b])) for b in bad]
    return EmbeddingReport(params.alpha, params.rho, n_max, int(mask.sum()), cex)


# --- dead, forced and free regions -------------------------------------------


def _rot(x: QuadExt, a: QuadExt) -> QuadExt:
    return (x + a).frac()


def region_classify(x: Number, y: Number, params: EmbeddingParams, literal: bool = False) -> str:
    """D, T1, T2 or F from closed-form regions.

    T1 collects points where advancing the second copy is fatal (so the
    first copy must move), T2 the mirror image. With ``literal=True`` the
    third T1 piece is taken as {x < 1-rho <= y, x + y >= 2 - 2*alpha - rho},
    which misclassifies part of the square; the default uses the pieces
    recomputed from the definition of T1.
    """
    params.require_regime()
    x, y = _q(x), _q(y)
    a, r = params.alpha, params.rho
    if not in_K(x, y, r):
        return "D"
    e = 1 - a - r
    if x < e and y < e and x + y >= e:
        return "D"
    t1 = _t1_literal if literal else _t1
    if t1(x, y, a, r):
        return "T1"
    if t1(y, x, a, r):
        return "T2"
    return "F"


def _t1(x: QuadExt, y: QuadExt, a: QuadExt, r: QuadExt) -> bool:
    t = 1 - r
    e = t - a
    if e <= x < t and y < e and x + y < t:
        return True
    if x >= t and e <= y < t and x + y < 2 - r - a:
        return True
    # x low, y high: the move wraps y into the low half
    if x < t and y >= 1 - a:
        if x + y >= 2 - r - a:
            return True  # leaves K
        if x < e and y < 1 - a + e and x + y >= 2 - 2 * a - r:
            return True  # lands in the dead triangle
    return False


def _t1_literal(x: QuadExt, y: QuadExt, a: QuadExt, r: QuadExt) -> bool:
    t = 1 - r
    e = t - a
    if e < x <= t and 0 <= y < e and x + y < t:
        return True
    if x >= t and e <= y < t and x + y < 2 - r - a:
        return True
    return x < t and y >= t and x + y >= 2 - 2 * a - r


def region_by_definition(x: Number, y: Number, params: EmbeddingParams) -> str:
    """Independent classification from one-step images only.

    Uses D = (K-complement) plus the points of K whose two images both
    leave K; a point with both images in D would contradict that D is the
    dead set and raises.
    """
    params.require_regime()
    x, y = _q(x), _q(y)
    a, r = params.alpha, params.rho

    def dead(u: QuadExt, v: QuadExt) -> bool:
        if not in_K(u, v, r):
            return True
        return not in_K(_rot(u, a), v, r) and not in_K(u, _rot(v, a), r)

    if dead(x, y):
        return "D"
    second_dead = dead(x, _rot(y, a))
    first_dead = dead(_rot(x, a), y)
    if first_dead and second_dead:
        raise AssertionError(f"({x}, {y}) has both successors dead but is not in D")
    if second_dead:
        return "T1"
    if first_dead:
        return "T2"
    return "F"


@dataclass
class TildeResult:
    start: tuple[QuadExt, QuadExt]
    end: tuple[QuadExt, QuadExt]
    moves: list[int]
    regions: list[str]

    @property
    def consumed(self) -> tuple[int, int]:
        return (self.moves.count(1), self.moves.count(2))


def tilde_map(point: tuple[Number, Number], branch: int, params: EmbeddingParams, max_steps: int = 10**6) -> TildeResult:
    """Move copy ``branch`` once, then take forced moves until the point is free again."""
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    x, y = (_q(v) for v in point)
    if region_classify(x, y, params) != "F":
        raise ValueError(f"({x}, {y}) is not in the free set")
    a = params.alpha
    moves: list[int] = []
    regions: list[str] = []
    cur = (x, y)
    step = branch
    for _ in range(max_steps):
        cur = (_rot(cur[0], a), cur[1]) if step == 1 else (cur[0], _rot(cur[1], a))
        moves.append(step)
        reg = region_classify(cur[0], cur[1], params)
        regions.append(reg)
        if reg == "F":
            return TildeResult((x, y), cur, moves, regions)
        if reg == "D":
            raise AssertionError(f"forced moves from ({x}, {y}) reached the dead set: moves {moves}")
        step = 1 if reg == "T1" else 2
    raise AssertionError("forced moves did not return to the free set")


# --- stepping stone paths -----------------------------------------------------


@dataclass
class StonePath:
    points: list[tuple[int, int]]

    def validate(self) -> None:
        for n, (i, j) in enumerate(self.points):
            if i + j != n:
                raise ValueError(f"point {n} = ({i}, {j}) is off the anti-diagonal")
            if n and (i < self.points[n - 1][0] or j < self.points[n - 1][1]):
                raise ValueError(f"step {n} is not monotone")

    @property
    def steering(self) -> tuple[int, ...]:
        return tuple(1 if b[0] > a[0] else 2 for a, b in zip(self.points, self.points[1:]))

    @classmethod
    def from_steering(cls, steering: Iterable[int]) -> StonePath:
        pts = [(0, 0)]
        for s in steering:
            i, j = pts[-1]
            pts.append((i + 1, j) if s == 1 else (i, j + 1))
        return cls(pts)


def path_from_witness(w: ShuffleWitness) -> StonePath:
    if w.k != 2:
        raise ValueError("stepping stone paths use two copies")
    return StonePath.from_steering(w.steering)


def path_in_K(path: StonePath, params: EmbeddingParams) -> bool:
    orbit = _Orbit(params, max(max(p) for p in path.points))
    i = np.array([p[0] for p in path.points])
    j = np.array([p[1] for p in path.points])
    return bool(orbit.vertex(i, j).all())


class _EmbeddingPair:
    """k = 2 frontier engine whose vertex test is membership in K."""

    def __init__(self, orbit: _Orbit) -> None:
        self.orbit = orbit

    def start(self) -> np.ndarray:
        return np.zeros(1, dtype=np.int64)

    def step(self, level: int, s: np.ndarray) -> np.ndarray:
        m = level + 1
        cand = np.union1d(s, s + 1)
        return cand[self.orbit.vertex(cand, m - cand)]

    def size(self, s: np.ndarray) -> int:
        return int(s.size)

    def tuples(self, level: int, s: np.ndarray) -> list[tuple[int, int]]:
        return [(int(i), level - int(i)) for i in s]

    def contains(self, level: int, s: np.ndarray, t: tuple[int, ...]) -> bool:
        p = int(np.searchsorted(s, t[0]))
        return p < s.size and int(s[p]) == t[0]


@dataclass
class PathResult:
    params: EmbeddingParams
    outcome: SearchOutcome
    path: Optional[StonePath] = None

    @property
    def status(self) -> str:
        return self.outcome.status

    def to_json(self) -> dict:
        out = {
            "alpha": self.params.alpha.to_json(),
            "rho": self.params.rho.to_json(),
            "search": self.outcome.to_json(),
        }
        if self.path is not None:
            out["path"] = [list(p) for p in self.path.points]
        return out


def path_extract(
    params: EmbeddingParams,
    n_max: int,
    threshold: Optional[int] = None,
    delay: Optional[int] = None,
) -> PathResult:
    """Search for a stepping stone path to level n_max, with the shuffle search's divergence rules."""
    orbit = _Orbit(params, n_max)
    outcome = run_frontier_search(_EmbeddingPair(orbit), 2, n_max, threshold=threshold, delay=delay)
    path = path_from_witness(outcome.witness) if outcome.witness is not None else None
    return PathResult(params, outcome, path)


# --- output -------------------------------------------------------------------


def write_csv(path: StonePath, params: EmbeddingParams, out: Optional[TextIO] = None) -> str:
    """Rows n, i_n, j_n, {i_n alpha}, {j_n alpha}; decimals are truncated to 12 places."""
    buf = out or io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "i", "j", "x", "y", "approx"])
    a = params.alpha
    for n, (i, j) in enumerate(path.points):
        x = (a * i).frac()
        y = (a * j).frac()
        w.writerow([n, i, j, x.decimal(12), y.decimal(12), "true"])
    return buf.getvalue() if out is None else ""


def _k_polygons(rho: float) -> list[list[tuple[float, float]]]:
    t = 1 - rho
    return [
        [(0, 0), (t, 0), (0, t)],
        [(t, 0), (1, 0), (1, t), (t, t)],
        [(0, t), (t, t), (t, 1), (0, 1)],
        [(1, t), (1, 1), (t, 1)],
    ]


def render_svg(path: Optional[StonePath], params: EmbeddingParams, scale: float = 60.0) -> str:
    """K + Z^2 over the cells the path visits, with the path drawn through (i alpha, j alpha)."""
    a = float(params.alpha)
    pts = [(i * a, j * a) for i, j in (path.points if path else [(0, 0)])]
    cols = int(max(p[0] for p in pts)) + 1
    rows = int(max(p[1] for p in pts)) + 1
    width, height = cols * scale, rows * scale
    polys = _k_polygons(float(params.rho))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        '<g fill="#c8d8ec" stroke="#5577aa" stroke-width="0.5">',
    ]
    for cx in range(cols):
        for cy in range(rows):
            for poly in polys:
                coords = " ".join(f"{(cx + u) * scale:.2f},{height - (cy + v) * scale:.2f}" for u, v in poly)
                out.append(f'<polygon points="{coords}"/>')
    out.append("</g>")
    if path is not None:
        line = " ".join(f"{u * scale:.2f},{height - v * scale:.2f}" for u, v in pts)
        out.append(f'<polyline points="{line}" fill="none" stroke="#aa2222" stroke-width="1.2"/>')
        for u, v in pts:
            out.append(f'<circle cx="{u * scale:.2f}" cy="{height - v * scale:.2f}" r="1.6" fill="#aa2222"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
