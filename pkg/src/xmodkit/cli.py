"""Command line entry point: ``xmodkit check | invariants | print``."""

from __future__ import annotations

import argparse
import sys

from .errors import InputError, SizeLimitExceeded, UnknownSuite
from .instances import load, print_instance
from .suites import SUITES, report_invariants, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xmodkit", description="Verify constructions on finite crossed modules.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run a verification suite")
    check.add_argument("source", help="instance file, or @catalog")
    check.add_argument("--suite", default="all", choices=(*SUITES, "all"))
    check.add_argument("--only", metavar="NAME", help="restrict to one crossed module, pair or action")
    check.add_argument("--witnesses", action="store_true", help="print witnesses of failures")
    inv = sub.add_parser("invariants", help="print pi0, pi1, pi2, the band and stabilizer orders")
    inv.add_argument("source")
    pr = sub.add_parser("print", help="print an instance file in canonical form")
    pr.add_argument("source")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        inst = load(args.source)
        if args.command == "print":
            sys.stdout.write(print_instance(inst))
            return EXIT_OK
        if args.command == "invariants":
            sys.stdout.write("\n".join(report_invariants(inst)) + "\n")
            return EXIT_OK
        report = run_suite(inst, args.suite, only=args.only)
    except (InputError, UnknownSuite, SizeLimitExceeded, OSError) as e:
        print(f"xmodkit: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    lines = report.lines(witnesses=args.witnesses)
    passed, failed = report.counts()
    lines.append(f"SUMMARY {passed} passed, {failed} failed")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
