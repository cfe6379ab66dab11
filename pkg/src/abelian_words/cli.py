"""Command-line interface.

Exit codes: 0 ok / word avoids, 1 abelian square found, 2 usage or parse
error, 3 inconclusive (depth cap reached or search interrupted).
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import signal
import sys
from typing import Optional, Sequence

from . import construct
from .detector import find_occurrences
from .plot import render_ascii, render_svg
from .search import (
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_SPLIT_DEPTH,
    Checkpoint,
    CheckpointError,
    Search,
    SearchInterrupted,
)
from .words import WordParseError, parse_word, serialize_word

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _read_word(source: Optional[str]):
    if source is None or source == "-":
        text = sys.stdin.read()
    else:
        with open(source) as fh:
            text = fh.read()
    return parse_word(text)


def cmd_generate(args) -> int:
    if args.extend and args.quadratic is None:
        args.parser.error("--extend requires --quadratic")
    if args.quadratic is not None:
        fn = construct.extend_quadratic_word if args.extend else construct.quadratic_word
        w = fn(args.quadratic)
    else:
        w = construct.simple_word(args.simple)
    print(serialize_word(w))
    return EXIT_OK


def cmd_check(args) -> int:
    w = _read_word(args.word)
    found = find_occurrences(w, args.min_order, "all" if args.all else "first")
    for occ in found:
        print(_dump(occ.to_json()))
    return EXIT_FOUND if found else EXIT_OK


def cmd_search(args) -> int:
    stop = {"requested": False}

    def on_sigint(signum, frame):
        stop["requested"] = True

    if args.resume:
        cp = Checkpoint.load(args.resume)
        if cp.k != args.k:
            raise CheckpointError(f"checkpoint is for k={cp.k}, not k={args.k}")
        if args.depth_cap is not None and args.depth_cap != cp.depth_cap:
            raise CheckpointError(f"checkpoint has depth_cap={cp.depth_cap}")
        search = Search.from_checkpoint(cp, engine=args.engine, fix_first=args.fix_first)
    else:
        search = Search(args.k, args.depth_cap, engine=args.engine, fix_first=args.fix_first)

    checkpoint_path = args.checkpoint or args.resume
    previous = signal.signal(signal.SIGINT, on_sigint)
    try:
        outcome = search.run(
            workers=args.workers,
            split_depth=args.split_depth,
            checkpoint_path=checkpoint_path,
            checkpoint_every=args.checkpoint_every,
            should_stop=lambda: stop["requested"],
        )
    except SearchInterrupted as exc:
        cp = exc.checkpoint
        where = f"; checkpoint saved to {checkpoint_path}" if checkpoint_path else ""
        print(f"interrupted after {cp.nodes_visited} nodes{where}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    finally:
        signal.signal(signal.SIGINT, previous)
    print(_dump(outcome.to_json()))
    return EXIT_OK if outcome.exhausted else EXIT_INCONCLUSIVE


_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def cmd_bounds(args) -> int:
    if (args.k is None) == (args.range is None):
        args.parser.error("give exactly one of K or --range A..B")
    if args.k is not None:
        ks = [args.k]
    else:
        m = _RANGE.match(args.range)
        if not m or int(m.group(1)) < 1 or int(m.group(1)) > int(m.group(2)):
            args.parser.error(f"--range must look like A..B with 1 <= A <= B, got {args.range!r}")
        ks = range(int(m.group(1)), int(m.group(2)) + 1)
    print("# k 8k-6 best_q q(q+1) extended k^2+6k l(k)")
    for k in ks:
        row = construct.bound_report(k).row()
        print(" ".join("-" if v is None else str(v) for v in row))
    return EXIT_OK


def cmd_plot(args) -> int:
    w = _read_word(args.word)
    mark = None
    if args.mark_first_order is not None:
        found = find_occurrences(w, args.mark_first_order, "first")
        mark = found[0] if found else None
    if args.format == "svg":
        sys.stdout.write(render_svg(w, mark, args.unit))
    else:
        try:
            sys.stdout.write(render_ascii(w, mark))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelian-words",
        description="Construct, check, search and plot binary words avoiding abelian squares.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print an explicit avoiding word")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--quadratic", type=_positive, metavar="Q", help="word of length Q(Q+1)")
    which.add_argument("--simple", type=_positive, metavar="K", help="word of length 8K-6")
    p.add_argument("--extend", action="store_true", help="extend the quadratic word until the formula breaks")
    p.set_defaults(func=cmd_generate, parser=p)

    p = sub.add_parser("check", help="look for abelian squares of order >= K")
    p.add_argument("word", nargs="?", help="file holding the word (default: stdin)")
    p.add_argument("--min-order", type=_positive, required=True, metavar="K")
    p.add_argument("--all", action="store_true", help="print every occurrence, not just the first")
    p.set_defaults(func=cmd_check, parser=p)

    p = sub.add_parser("search", help="exhaustive search for l(K)")
    p.add_argument("k", type=_positive, metavar="K")
    p.add_argument("--depth-cap", type=_positive, help="default K^2+6K")
    p.add_argument("--checkpoint", metavar="FILE", help="write checkpoints here")
    p.add_argument("--resume", metavar="FILE", help="resume from this checkpoint (and keep updating it)")
    p.add_argument("--checkpoint-every", type=_positive, default=DEFAULT_CHECKPOINT_EVERY, metavar="N")
    p.add_argument("--workers", type=_positive, default=1, metavar="N")
    p.add_argument("--split-depth", type=_positive, default=DEFAULT_SPLIT_DEPTH, metavar="D")
    p.add_argument("--fix-first", action="store_true", help="only explore words starting with 0")
    p.add_argument("--engine", choices=("numba", "python"), default="numba")
    p.set_defaults(func=cmd_search, parser=p)

    p = sub.add_parser("bounds", help="tabulate lower and upper bounds on l(k)")
    p.add_argument("k", nargs="?", type=_positive, metavar="K")
    p.add_argument("--range", metavar="A..B")
    p.set_defaults(func=cmd_bounds, parser=p)

    p = sub.add_parser("plot", help="draw the lattice path of a word")
    p.add_argument("word", nargs="?", help="file holding the word (default: stdin)")
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")
    p.add_argument("--mark-first-order", type=_positive, metavar="R",
                   help="circle the first abelian square of order >= R")
    p.add_argument("--unit", type=_positive, default=24, help="pixels per lattice step")
    p.set_defaults(func=cmd_plot, parser=p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (WordParseError, CheckpointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
