"""Command line front end.

Exit status: 0 on success, 1 when the inputs violate a mathematical
precondition, 2 on usage errors (argparse's own convention).

Word specs accepted by ``word`` and ``--word``:

* a built-in name such as ``thue-morse`` or ``fibonacci``;
* ``u(v)`` for the ultimately periodic word u v v v ..., e.g. ``0(1)``;
* ``sturmian`` (with ``--alpha``, ``--rho``, optionally ``--upper``);
* ``characteristic`` (with ``--directive``);
* ``morphic`` (with ``--morphism`` and ``--start``);
* any of these behind ``u.`` to put the finite word u in front, e.g. ``0.fibonacci``.

``--drop K`` deletes the first K letters of the result.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import checkers, constructions, shuffle, stepping_stone
from .exact_arith import QuadExt, parse_quad
from .sturmian import DirectiveSequence, SturmianSpec, characteristic_from_directive, mechanical, rotation_word
from .words import (
    NAMED_WORDS,
    InfiniteWord,
    Morphism,
    drop,
    fixed_point,
    named_word,
    parse_word,
    periodic,
    prepend,
)

SCHEMA = 1

_PERIODIC = re.compile(r"([0-9a-z]*)\(([0-9a-z]+)\)")
_PREPEND = re.compile(r"([0-9a-z]+)\.(.+)")
_FAMILIES = ("sturmian", "characteristic", "morphic")


class DomainError(Exception):
    """Inputs are well formed but break a precondition of the requested operation."""


# --- argument types ------------------------------------------------------------


def quad_arg(text: str) -> QuadExt:
    try:
        return parse_quad(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad number {text!r}: {exc}") from None


def word_spec_arg(text: str) -> str:
    """Syntax check only; family parameters are read later."""
    base = text
    while True:
        m = _PREPEND.fullmatch(base)
        if not m or _PERIODIC.fullmatch(base):
            break
        base = m.group(2)
    if base in NAMED_WORDS or base in _FAMILIES or _PERIODIC.fullmatch(base):
        return text
    raise argparse.ArgumentTypeError(
        f"unknown word {text!r}; use one of {', '.join(NAMED_WORDS + _FAMILIES)}, u(v) or u.<spec>"
    )


def directive_arg(text: str) -> DirectiveSequence:
    try:
        return DirectiveSequence.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def morphism_arg(text: str) -> Morphism:
    try:
        return Morphism.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def order_arg(text: str) -> tuple[int, ...]:
    try:
        out = tuple(parse_word(text.replace(",", "")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if len(set(out)) != len(out) or not out:
        raise argparse.ArgumentTypeError("order must list distinct letters")
    return out


def positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# --- word construction ---------------------------------------------------------


def word_options(args: argparse.Namespace) -> dict:
    """The family parameters in a JSON-friendly form (stored in witness files)."""
    out: dict = {}
    if getattr(args, "alpha", None) is not None:
        out["alpha"] = str(args.alpha)
    if getattr(args, "rho", None) is not None:
        out["rho"] = str(args.rho)
    if getattr(args, "upper", False):
        out["upper"] = True
    if getattr(args, "directive", None) is not None:
        out["directive"] = str(args.directive)
    if getattr(args, "morphism", None) is not None:
        out["morphism"] = str(args.morphism)
        out["start"] = getattr(args, "start", 0)
    if getattr(args, "drop", 0):
        out["drop"] = args.drop
    return out


def build_word(spec: str, opts: dict) -> InfiniteWord:
    m = _PERIODIC.fullmatch(spec)
    if m:
        pre, per = m.groups()
        w = periodic(parse_word(per), parse_word(pre), name=spec)
    elif _PREPEND.fullmatch(spec):
        head, rest = _PREPEND.fullmatch(spec).groups()
        w = prepend(parse_word(head), build_word(rest, {k: v for k, v in opts.items() if k != "drop"}))
    elif spec == "sturmian":
        if "alpha" not in opts or "rho" not in opts:
            raise DomainError("sturmian words need --alpha and --rho")
        alpha, rho = parse_quad(opts["alpha"]), parse_quad(opts["rho"])
        if opts.get("upper"):
            w = rotation_word(alpha, 0 if rho == 1 else rho, upper=True)
        else:
            w = mechanical(SturmianSpec(alpha, rho))
    elif spec == "characteristic":
        if "directive" not in opts:
            raise DomainError("characteristic words need --directive")
        d = DirectiveSequence.parse(opts["directive"])
        if not d.infinite:
            raise DomainError("the directive sequence must be infinite; mark a repeating tail with [...]")
        w = characteristic_from_directive(d)
    elif spec == "morphic":
        if "morphism" not in opts:
            raise DomainError("morphic words need --morphism")
        w = fixed_point(Morphism.parse(opts["morphism"]), int(opts.get("start", 0)))
    else:
        w = named_word(spec)
    k = int(opts.get("drop", 0))
    return drop(w, k) if k else w


def add_word_family_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("word parameters")
    g.add_argument("--alpha", type=quad_arg, help="slope, e.g. '(3-1*sqrt(5))/2'")
    g.add_argument("--rho", type=quad_arg, help="intercept in [0, 1]")
    g.add_argument("--upper", action="store_true", help="upper mechanical coding")
    g.add_argument("--directive", type=directive_arg, help="directive sequence, e.g. '0,0,[1,0]'")
    g.add_argument("--morphism", type=morphism_arg, help="morphism such as '0:01,1:0'")
    g.add_argument("--start", type=nonneg, default=0, help="letter the fixed point starts with")
    g.add_argument("--drop", type=nonneg, default=0, help="delete this many leading letters")


# --- output helpers ------------------------------------------------------------


class Output:
    def __init__(self, fmt: str, stream=None) -> None:
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, payload: dict, text: str) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def write_witness(path: str, w: shuffle.ShuffleWitness, word: Optional[dict]) -> None:
    data = {"schema": SCHEMA, **w.to_json()}
    if word is not None:
        data["word"] = word
    Path(path).write_text(json.dumps(data, sort_keys=True) + "\n")


def _steering_text(w: shuffle.ShuffleWitness, limit: int = 80) -> str:
    s = "".join(map(str, w.steering[:limit]))
    return s + ("..." if w.depth > limit else "")


# --- subcommands ---------------------------------------------------------------


def cmd_word(args, out: Output) -> int:
    w = build_word(args.spec, word_options(args))
    text = w.text(args.length)
    out.emit({"word": args.spec, "length": args.length, "prefix": text}, text)
    return 0


def cmd_search(args, out: Output) -> int:
    w = build_word(args.word, word_options(args))
    res = shuffle.search_self_shuffle(
        w, k=args.k, depth=args.depth, memory_bound=args.memory_bound,
        threshold=args.threshold, delay=args.delay,
    )
    if res.witness is not None and args.emit_witness:
        write_witness(args.emit_witness, res.witness, {"spec": args.word, **word_options(args)})
    lines = [f"status: {res.status}", f"level: {res.level}"]
    if res.note:
        lines.append(f"note: {res.note}")
    if res.witness is not None:
        lines.append(f"consumed: {res.witness.consumed()}")
        lines.append(f"steering: {_steering_text(res.witness)}")
    out.emit({"word": args.word, "search": res.to_json()}, "\n".join(lines))
    return 0


def _sturmian_word_record(alpha: QuadExt, rho: QuadExt, upper: bool) -> dict:
    rec = {"spec": "sturmian", "alpha": str(alpha), "rho": str(rho)}
    if upper:
        rec["upper"] = True
    return rec


def cmd_shuffle(args, out: Output) -> int:
    kind, depth = args.kind, args.depth
    extra: dict = {}
    lines: list[str] = []
    if kind == "tm":
        w, word = constructions.tm_shuffle(depth), {"spec": "thue-morse"}
    elif kind == "fibonacci":
        w, word = constructions.fibonacci_shuffle(depth), {"spec": "fibonacci"}
    elif kind == "period-doubling":
        w, word = constructions.period_doubling_shuffle(depth), {"spec": "period-doubling"}
    elif kind == "three":
        w, word = constructions.three_shuffle_example(depth), {"spec": "three-shuffle-example"}
    elif kind == "full-complexity":
        w, word = constructions.full_complexity_shuffle(depth), {"spec": "full-complexity"}
    elif kind == "sturmian":
        if args.alpha is None or args.rho is None:
            raise DomainError("shuffle sturmian needs --alpha and --rho")
        rho = args.rho
        if rho == 0 or rho == 1:
            raise DomainError(
                "rho = 0 (or 1) gives 0C or 1C; a Sturmian word is self-shuffling only if rho != 0"
            )
        point = (rho, args.upper)
        res = constructions.sturmian_shuffle(args.alpha, point, point, point, depth)
        w, word = res.witness, _sturmian_word_record(args.alpha, rho, args.upper)
        extra = {"delay": res.delay, "conjugated": res.conjugated, "transitions": len(res.transitions)}
        if args.trace:
            extra["trace"] = [list(t) for t in res.trace]
            lines.extend(" ".join(map(str, t)) for t in res.trace)
        lines.append(f"delay: {res.delay}")
    elif kind == "characteristic":
        if args.directive is None:
            raise DomainError("shuffle characteristic needs --directive")
        cw = characteristic_from_directive(args.directive)
        count = 3
        while True:
            kappa = constructions.kappa_from_word(cw, count, horizon=max(64 * count, 4 * depth + 64))
            try:
                w, plan = constructions.characteristic_shuffle(kappa, depth)
                break
            except ValueError as exc:
                if "not enough exponents" not in str(exc):
                    raise
                count = 2 * count + 1
        word = {"spec": "characteristic", "directive": str(args.directive)}
        extra = {"kappa": plan.kappa[:20]}
    elif kind == "pal":
        if args.directive is None:
            raise DomainError("shuffle pal needs --directive")
        res = constructions.pal_shuffle(args.directive, args.variant, depth)
        w = res.witness
        word = {"spec": ("01." if args.variant == "01C" else "10.") + "characteristic", "directive": str(args.directive)}
        extra = {"groups": res.marked_groups()[:12], "k0": res.k0[:20], "k1": res.k1[:20]}
        lines.append("groups: " + " | ".join(res.marked_groups()[:8]))
    else:  # pragma: no cover - argparse restricts the choices
        raise AssertionError(kind)

    if args.emit_witness:
        write_witness(args.emit_witness, w, word)
    check = shuffle.verify_witness(build_word(word["spec"], word), w)
    lines = [f"k: {w.k}", f"depth: {w.depth}", f"verified: {check.ok}", f"steering: {_steering_text(w)}"] + lines
    out.emit({"kind": kind, "witness": w.to_json(), "word": word, "verified": check.ok, **extra}, "\n".join(lines))
    return 0 if check.ok else 1


def cmd_check(args, out: Output) -> int:
    if args.what == "delay":
        alpha, rho = args.alpha, args.rho
        if alpha is None or rho is None:
            raise DomainError("check delay needs --alpha and --rho")
        rep = checkers.shuffling_delay_sturmian(alpha, rho, horizon=args.horizon, upper=args.upper)
        out.emit({"check": "delay", **rep.to_json()}, f"delay: {rep.delay}")
        return 0
    if args.word is None:
        raise DomainError(f"check {args.what} needs --word")
    w = build_word(args.word, word_options(args))
    if args.what == "borders":
        scan = checkers.longest_ab_borderfree_prefix(w, args.horizon)
        payload = scan.to_json()
        payload["borderfree_lengths"] = payload["borderfree_lengths"][:50]
        text = f"longest abelian border-free prefix: {scan.length}" + (" (saturated)" if scan.saturated else "")
        out.emit({"check": "borders", "word": args.word, **payload}, text)
        return 0
    rep = checkers.lyndon_status(w, order=args.order, depth=args.horizon)
    text = f"lyndon: {rep.status}" + (f" (shift {rep.witness_shift})" if rep.witness_shift else "")
    out.emit({"check": "lyndon", "word": args.word, **rep.to_json()}, text)
    return 0


def _orbit_pairs(count: int) -> list[tuple[int, int]]:
    """The first ``count`` lattice points (i, j), by anti-diagonal."""
    pts = []
    n = 0
    while len(pts) < count:
        for i in range(n + 1):
            pts.append((i, n - i))
            if len(pts) == count:
                break
        n += 1
    return pts


def cmd_stones(args, out: Output) -> int:
    if args.alpha is None or args.rho is None:
        raise DomainError("stones needs --alpha and --rho")
    params = stepping_stone.EmbeddingParams(args.alpha, args.rho)
    if args.what == "check":
        rep = stepping_stone.graph_vs_embedding_check(params, args.n)
        out.emit({"stones": "check", **rep.to_json()}, f"embedding ok: {rep.ok} ({rep.checked} pairs)")
        return 0 if rep.ok else 1
    if args.what == "classify":
        params.require_regime()
        counts = {r: 0 for r in stepping_stone.REGIONS}
        a = params.alpha
        for i, j in _orbit_pairs(args.n):
            counts[stepping_stone.region_classify((a * i).frac(), (a * j).frac(), params)] += 1
        text = " ".join(f"{r}={counts[r]}" for r in stepping_stone.REGIONS)
        out.emit({"stones": "classify", "points": args.n, "counts": counts}, text)
        return 0
    res = stepping_stone.path_extract(params, args.n)
    if args.csv and res.path is not None:
        with open(args.csv, "w", newline="") as fh:
            stepping_stone.write_csv(res.path, params, fh)
    if args.svg:
        Path(args.svg).write_text(stepping_stone.render_svg(res.path, params))
    text = f"status: {res.status}" + (f" at level {res.outcome.level}" if res.status != "witness" else "")
    out.emit({"stones": "path", **res.to_json()}, text)
    return 0


def cmd_verify(args, out: Output) -> int:
    try:
        data = json.loads(Path(args.witness).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read witness file: {exc}") from None
    w = shuffle.ShuffleWitness.from_json(data)
    if args.word is not None:
        spec, opts = args.word, word_options(args)
    elif "word" in data:
        spec, opts = data["word"]["spec"], data["word"]
    else:
        raise DomainError("witness file names no word; pass --word")
    rep = shuffle.verify_witness(build_word(spec, opts), w, args.depth)
    text = f"ok: {rep.ok}" + (f" (mismatch at {rep.mismatch})" if rep.mismatch is not None else "")
    if rep.starved:
        text += f"; copies never used: {rep.starved}"
    out.emit({"verify": rep.to_json(), "word": spec}, text)
    return 0 if rep.ok else 1


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="selfshuffle", description="Self-shuffling words: constructions, search and checks.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("word", parents=[common], help="print a prefix of a word")
    sp.add_argument("spec", type=word_spec_arg)
    sp.add_argument("--length", type=positive, default=40)
    add_word_family_flags(sp)
    sp.set_defaults(func=cmd_word)

    sp = sub.add_parser("search", parents=[common], help="search the shuffle graph")
    sp.add_argument("--word", type=word_spec_arg, required=True)
    sp.add_argument("--k", type=int, choices=range(2, 10), default=2, metavar="K")
    sp.add_argument("--depth", type=positive, default=1000)
    sp.add_argument("--memory-bound", type=positive, default=shuffle.DEFAULT_MEMORY_BOUND)
    sp.add_argument("--threshold", type=nonneg)
    sp.add_argument("--delay", type=nonneg)
    sp.add_argument("--emit-witness", metavar="PATH")
    add_word_family_flags(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("shuffle", parents=[common], help="build an explicit self-shuffle")
    sp.add_argument("kind", choices=("tm", "sturmian", "characteristic", "pal", "three", "fibonacci",
                                     "period-doubling", "full-complexity"))
    sp.add_argument("--depth", type=positive, default=1000)
    sp.add_argument("--variant", choices=("01C", "10C"), default="01C")
    sp.add_argument("--emit-witness", metavar="PATH")
    sp.add_argument("--trace", action="store_true", help="print rotation machine transitions")
    sp.add_argument("--alpha", type=quad_arg)
    sp.add_argument("--rho", type=quad_arg)
    sp.add_argument("--upper", action="store_true")
    sp.add_argument("--directive", type=directive_arg)
    sp.set_defaults(func=cmd_shuffle)

    sp = sub.add_parser("check", parents=[common], help="necessary conditions")
    sp.add_argument("what", choices=("borders", "lyndon", "delay"))
    sp.add_argument("--word", type=word_spec_arg)
    sp.add_argument("--horizon", type=positive, default=1000)
    sp.add_argument("--order", type=order_arg, default=(0, 1), help="alphabet order, smallest first, e.g. 1,0")
    add_word_family_flags(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("stones", parents=[common], help="stepping stone embedding")
    sp.add_argument("what", choices=("path", "classify", "check"))
    sp.add_argument("--alpha", type=quad_arg)
    sp.add_argument("--rho", type=quad_arg)
    sp.add_argument("--n", type=positive, default=500)
    sp.add_argument("--svg", metavar="PATH")
    sp.add_argument("--csv", metavar="PATH")
    sp.set_defaults(func=cmd_stones)

    sp = sub.add_parser("verify", parents=[common], help="re-check a witness file")
    sp.add_argument("--witness", required=True, metavar="PATH")
    sp.add_argument("--word", type=word_spec_arg)
    sp.add_argument("--depth", type=positive)
    add_word_family_flags(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except (DomainError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
