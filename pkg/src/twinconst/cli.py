"""Command-line front end.

Exit codes: 0 success/verified, 1 mismatch/counterexample, 2 argument error,
3 search bound exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import constellations, primes, verify
from .bfile import SequenceRecord, get_fixture
from .hseq import (
    DEFAULT_BOUND,
    DEFAULT_THRESHOLD,
    NotMergedWithin,
    h_sequence,
    merge_position,
    pair_trace,
)
from .sweeps import UNMERGED, scan_twin_range

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ARG = 2
EXIT_BOUND = 3


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("TWINCONST_WORKERS", "1")))
    except ValueError:
        return 1


def _print_record(record: SequenceRecord, fmt: str) -> None:
    if fmt == "bfile":
        sys.stdout.write(record.emit())
    else:
        print(" ".join(str(t) for t in record.terms))


def _cmd_hseq(args) -> int:
    if not primes.is_prime(args.start):
        print(f"error: start {args.start} is not prime", file=sys.stderr)
        return EXIT_ARG
    try:
        trace = h_sequence(args.start, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARG
    _print_record(SequenceRecord("hseq", 2, trace.values), args.format)
    return EXIT_OK


def _cmd_trace(args) -> int:
    try:
        report = pair_trace(args.a, args.b, args.threshold, args.bound)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARG
    if report.merged:
        merge = str(report.merge_index)
    else:
        merge = f"none(bound={args.bound})"
    print(
        f"merge={merge} max_diff={report.max_diff}"
        f" max_diff_at={report.max_diff_first_index} m={report.first_excess}"
    )
    return EXIT_OK if report.merged else EXIT_BOUND


def _merge_sequence_terms(count: int, bound: int):
    """Flattened merge positions for pairs (a, b), grouped by a ascending."""
    terms = []
    ps = [3]
    while True:
        a = ps[-1]
        for b in ps[:-1]:
            pos = merge_position(a, b, bound)
            terms.append(None if isinstance(pos, NotMergedWithin) else pos)
            if len(terms) == count:
                return terms
        ps.append(primes.next_prime(a))


def _nth_twin_lesser(count: int) -> int:
    hi = 1 << 12
    while True:
        twins = list(primes.twin_lessers(hi))
        if len(twins) >= count:
            return twins[count - 1]
        hi *= 4


def _maxdiff_terms(count: int, workers: int):
    """Exact max differences for the first count twin pairs (run-to-merge)."""
    hi = _nth_twin_lesser(count)
    result = scan_twin_range(3, hi, stop_on_excess=False, workers=workers)
    terms = tuple(int(d) for d in result.max_diff[:count])
    unmerged = bool((result.merge_n[:count] == UNMERGED).any())
    return terms, unmerged


def _cmd_scan(args) -> int:
    fmt = args.format
    if args.kind == "c":
        if args.limit is None:
            print("error: scan c requires --limit", file=sys.stderr)
            return EXIT_ARG
        terms = constellations.scan_c_sequence(args.limit, workers=args.workers)
        _print_record(SequenceRecord("c-sequence", 1, tuple(terms)), fmt)
        return EXIT_OK
    if args.count is None:
        print(f"error: scan {args.kind} requires --count", file=sys.stderr)
        return EXIT_ARG
    if args.kind == "m":
        terms = constellations.scan_m_sequence(args.count)
        _print_record(SequenceRecord("m-sequence", 1, tuple(terms)), fmt)
        return EXIT_OK
    if args.kind == "maxdiff":
        terms, unmerged = _maxdiff_terms(args.count, args.workers)
        _print_record(SequenceRecord("max-diffs", 1, terms), fmt)
        if unmerged:
            print("warning: some pairs did not merge within bound; "
                  "their terms are lower bounds", file=sys.stderr)
            return EXIT_BOUND
        return EXIT_OK
    # kind == "merge"
    terms = _merge_sequence_terms(args.count, args.bound)
    if any(t is None for t in terms):
        shown = tuple(t for t in terms if t is not None)
        _print_record(SequenceRecord("merge-positions", 1, shown), fmt)
        print(f"warning: some pairs did not merge within bound {args.bound}; "
              "partial output", file=sys.stderr)
        return EXIT_BOUND
    _print_record(SequenceRecord("merge-positions", 1, tuple(terms)), fmt)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.target == "t1":
        report = verify.verify_theorem1(args.limit, args.workers,
                                        checkpoint=args.checkpoint)
    elif args.target == "t2":
        report = verify.verify_theorem2(args.limit, args.workers,
                                        checkpoint=args.checkpoint)
    elif args.target == "cor":
        report = verify.verify_corollaries(args.limit, args.workers,
                                           checkpoint=args.checkpoint)
    else:  # conj1
        report = verify.probe_conjecture1(args.primes, args.bound)
    report_path = args.report or f"twinconst-{args.target}.report"
    report.write(report_path)
    print(report.to_text(), end="")
    print(f"report: {report_path}")
    if report.counterexamples:
        print(f"counterexample replay data in {report_path}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK if not report.aborted else EXIT_MISMATCH


def _recompute_fixture(name: str, workers: int) -> tuple[int, ...]:
    if name == "merge-positions":
        fixture = get_fixture(name)
        terms = _merge_sequence_terms(len(fixture.terms), DEFAULT_BOUND)
        return tuple(-1 if t is None else t for t in terms)
    if name == "max-diffs":
        fixture = get_fixture(name)
        terms, _ = _maxdiff_terms(len(fixture.terms), workers)
        return terms
    if name == "c-sequence":
        fixture = get_fixture(name)
        return tuple(constellations.scan_c_sequence(max(fixture.terms),
                                                    workers=workers))
    # m-sequence
    fixture = get_fixture(name)
    return tuple(constellations.scan_m_sequence(len(fixture.terms)))


def _cmd_compare(args) -> int:
    try:
        fixture = get_fixture(args.fixture)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_ARG
    computed = _recompute_fixture(fixture.name, args.workers)
    if computed == fixture.terms:
        print(f"{fixture.name}: {len(fixture.terms)} terms match")
        return EXIT_OK
    for i, (got, want) in enumerate(zip(computed, fixture.terms)):
        if got != want:
            print(f"{fixture.name}: first divergence at index {fixture.offset + i}: "
                  f"computed {got}, fixture {want}")
            return EXIT_MISMATCH
    print(f"{fixture.name}: length mismatch "
          f"(computed {len(computed)}, fixture {len(fixture.terms)})")
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinconst",
        description="Greedy prime-index-constrained sequences, twin-pair "
                    "statistics, and constellation verification campaigns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hseq", help="print one sequence prefix")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="last index (origin 2)")
    p.add_argument("--format", choices=("terms", "bfile"), default="terms")
    p.set_defaults(func=_cmd_hseq)

    p = sub.add_parser("trace", help="pair statistics: merge, max diff, first excess")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("scan", help="bulk sequence scans")
    p.add_argument("kind", choices=("c", "m", "maxdiff", "merge"))
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--format", choices=("terms", "bfile"), default="terms")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", help="verification campaigns")
    p.add_argument("target", choices=("t1", "t2", "cor", "conj1"))
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--primes", type=int, default=10, help="conj1: pair pool size")
    p.add_argument("--bound", type=int, default=10**5, help="conj1: merge bound")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--report", type=str, default=None)
    p.add_argument("--checkpoint", type=str, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compare", help="recompute and diff an embedded fixture")
    p.add_argument("fixture")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
