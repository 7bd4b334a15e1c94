"""Command line front end: ``query``, ``table``, ``verify`` and ``simulate``.

Exit codes: 0 success, 1 bad arguments or unwritable output, 2 non-admissible
d, 3 verification mismatches, 4 failed consistency check in ``simulate``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .arith import Characteristic
from .bounds import NonAdmissibleError, lambda_p, lemma_lower_bound
from .delta_chain import ChainError, ExampleParams, dumps, example_family, non_rationality_witness
from .sweep import render_csv, render_jsonl, table_row, verify, worker_count

EXIT_USAGE = 1
EXIT_NON_ADMISSIBLE = 2
EXIT_MISMATCH = 3
EXIT_ASSERTION = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _prime(text: str) -> int:
    try:
        return Characteristic(int(text)).p
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc) if "prime" in str(exc) else f"invalid int: {text!r}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _prime_list(text: str) -> list[int]:
    return [_prime(part) for part in text.split(",") if part.strip()]


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like LO:HI, got {text!r}")
    lo, hi = _positive(lo), _positive(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frobsharp", description="Sharp Frobenius-pullback bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("query", help="bounds for a single (p, d)")
    q.add_argument("--p", type=_prime, required=True)
    q.add_argument("--d", type=_positive, required=True)
    q.add_argument("--json", action="store_true", help="print the report as JSON")

    t = sub.add_parser("table", help="one row per d in a range")
    t.add_argument("--p", type=_prime, required=True)
    t.add_argument("--range", type=_range, required=True, metavar="LO:HI")
    t.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    t.add_argument("--out", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="cross-validate all closed forms against the oracle")
    v.add_argument("--p", type=_prime_list, required=True, metavar="P1,P2,...")
    v.add_argument("--max-d", type=_positive, required=True)
    v.add_argument("--json", action="store_true", help="machine-readable summary")

    s = sub.add_parser("simulate", help="delta chain of an example family")
    s.add_argument("--family", choices=("A", "B"), required=True)
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--j", type=_positive, required=True)
    s.add_argument("--r", type=_non_negative, required=True)
    s.add_argument("--rprime", type=_non_negative, default=0)
    s.add_argument("--ell", type=_non_negative, default=0)
    s.add_argument("--out", help="output file (default: stdout)")
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_query(args) -> int:
    try:
        rep = lambda_p(args.p, args.d)
    except NonAdmissibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_ADMISSIBLE
    lb = lemma_lower_bound(args.p, args.d)
    if args.json:
        print(json.dumps({**rep.to_dict(), "lemma_lb": lb}))
    else:
        print(
            f"p={rep.p} d={rep.d} admissible=true r={rep.r} tau={rep.tau} "
            f"lambda={rep.lam} {rep.classification} lemma_lb={lb}"
        )
    return 0


def cmd_table(args) -> int:
    lo, hi = args.range
    rows = [table_row(args.p, d) for d in range(lo, hi + 1)]
    text = render_csv(rows) if args.format == "csv" else render_jsonl(rows)
    try:
        _write(text, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def cmd_verify(args) -> int:
    workers = worker_count(os.cpu_count() or 1)
    start = time.perf_counter()
    summary = verify(args.p, args.max_d, workers=workers)
    elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps(summary))
    else:
        for p in args.p:
            print(f"p={p}: {summary['checked'][str(p)]} admissible d <= {args.max_d} checked")
        print(f"{summary['total_checked']} checked, {summary['mismatch_count']} mismatches")
        for m in summary["mismatches"]:
            print(f"  p={m['p']} d={m['d']}: {m['problem']}")
    print(f"elapsed {elapsed:.2f}s with {workers} worker(s)", file=sys.stderr)
    return EXIT_MISMATCH if summary["mismatch_count"] else 0


def cmd_simulate(args) -> int:
    try:
        params = ExampleParams(
            family=args.family, p=args.p, i=args.i, j=args.j,
            r=args.r, r_prime=args.rprime, ell=args.ell,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        chain, d = example_family(params)
        if not non_rationality_witness(chain, params):
            raise ChainError(f"level {params.i} is not a non-rationality witness")
        # d = 0 is a smooth point, where lambda is undefined
        if d > 0 and lambda_p(params.p, d).lam < params.i + 1:
            raise ChainError(f"lambda_{params.p}({d}) < i+1 = {params.i + 1}")
    except (ChainError, NonAdmissibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    try:
        _write(dumps(chain, d, params), args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return 0


COMMANDS = {"query": cmd_query, "table": cmd_table, "verify": cmd_verify, "simulate": cmd_simulate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
