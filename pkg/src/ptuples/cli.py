"""Command-line front end. Every command prints JSON lines that echo its inputs.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import corpus, hunter, progressions
from .constructor import (
    DEFAULT_MEMBER_LIMIT,
    TupleError,
    enumerate_walks,
    extend_left,
    greedy_construct,
    verify_tuple,
)
from .patterns import PatternError

THREADS_ENV = "PTUPLES_THREADS"


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _emit(kind: str, obj: dict) -> None:
    print(json.dumps({"kind": kind, **obj}))


def _cmd_construct(args) -> int:
    tup = greedy_construct(args.p, args.d1, args.limit)
    if args.extend_left:
        tup = extend_left(tup, args.limit)
    _emit("tuple", {"command": "construct", "p": args.p, "d1": args.d1, **tup.to_dict()})
    return 0


def _cmd_verify(args) -> int:
    inputs = {"command": "verify", "p": args.p, "members": args.members}
    try:
        tup = verify_tuple(args.members, args.p)
    except TupleError as exc:
        _emit("verification", {**inputs, "ok": False, "error": type(exc).__name__, "detail": str(exc)})
        return 1
    _emit("verification", {**inputs, "ok": True, **tup.to_dict()})
    return 0


def _cmd_walks(args) -> int:
    count = 0
    for tup in enumerate_walks(args.p, args.d1, args.gap_bound, args.value_bound):
        _emit("walk", {"command": "walks", "p": args.p, "d1": args.d1, **tup.to_dict()})
        count += 1
    _emit("summary", {"command": "walks", "p": args.p, "d1": args.d1, "gap_bound": args.gap_bound,
           "value_bound": args.value_bound, "count": count})
    return 0


def _cmd_repeat(args) -> int:
    spec = hunter.RepeatSpec(args.p, tuple(args.offsets), args.residue)
    t0 = time.perf_counter()
    occs = hunter.search_occurrences(
        spec, args.lo, args.hi, max_results=args.max, threads=args.threads,
        checkpoint=args.checkpoint,
    )
    echo = {"command": "repeat", "p": args.p, "offsets": list(args.offsets),
            "residue": args.residue, "from": args.lo, "to": args.hi}
    for occ in occs:
        _emit("occurrence", {**echo, **occ.to_dict()})
    summary = {**echo, "count": len(occs)}
    if args.timing:
        summary["seconds"] = round(time.perf_counter() - t0, 3)
        summary["threads"] = args.threads
    _emit("summary", summary)
    return 0


def _cmd_classify(args) -> int:
    rep = progressions.classify(args.a, args.step)
    _emit("classification", {"command": "classify", **rep.to_dict()})
    if args.scan:
        spec = progressions.ProgressionSpec(args.a, args.step)
        runs = progressions.enumerate_runs(spec, 0, args.scan)
        longest = max((len(r.members) for r in runs), default=0)
        for r in runs:
            if len(r.members) == longest:
                _emit("run", {"command": "classify", "a": args.a, "s": args.step, **r.to_dict()})
        _emit("summary", {"command": "classify", "a": args.a, "s": args.step, "scan": args.scan,
               "longest_run": longest})
    return 0


def _cmd_corpus(args) -> int:
    if args.export:
        for rec in corpus.load_corpus():
            print(rec.export_line())
        return 0
    report = corpus.verify_all()
    for r in report.results:
        _emit("record", {"command": "corpus", "id": r.id, "ok": r.ok, "erratum": r.erratum,
               "detail": r.detail})
    _emit("summary", {"command": "corpus", "records": len(report.results),
           "failures": len(report.failures), "errata": sum(r.erratum for r in report.results)})
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptuples", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="greedy exceptional p-tuple from p and d1")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--d1", type=int, required=True)
    c.add_argument("--limit", type=int, default=DEFAULT_MEMBER_LIMIT)
    c.add_argument("--extend-left", action="store_true")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="check a member list")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--members", type=_ints, required=True)
    v.set_defaults(func=_cmd_verify)

    w = sub.add_parser("walks", help="all bounded p-member walks with signed gaps")
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--d1", type=int, required=True)
    w.add_argument("--gap-bound", type=int, required=True)
    w.add_argument("--value-bound", type=int, required=True)
    w.set_defaults(func=_cmd_walks)

    r = sub.add_parser("repeat", help="hunt repeating (p-1)-tuples")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--offsets", type=_ints, required=True)
    r.add_argument("--residue", type=int, required=True)
    r.add_argument("--from", dest="lo", type=int, required=True)
    r.add_argument("--to", dest="hi", type=int, required=True)
    r.add_argument("--max", type=int, default=None)
    r.add_argument("--checkpoint", default=None)
    r.add_argument("--threads", type=int, default=_default_threads())
    r.add_argument("--timing", action="store_true", help="append wall time to the summary")
    r.set_defaults(func=_cmd_repeat)

    k = sub.add_parser("classify", help="run-length bounds for a + step*n")
    k.add_argument("--a", type=int, required=True)
    k.add_argument("--step", type=int, required=True)
    k.add_argument("--scan", type=int, default=0, help="also scan indices [0, N)")
    k.set_defaults(func=_cmd_classify)

    e = sub.add_parser("corpus", help="verify or export the embedded examples")
    e.add_argument("--export", action="store_true")
    e.set_defaults(func=_cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, PatternError) as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__,
                          "detail": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
