"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit status is 2 for usage
errors and unreadable or invalid input, 1 when a ``verify`` suite has a
failing check, 0 otherwise.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Sequence

from .equivalence import components, interval_decomposition
from .errors import StrucprofError
from .families import obstruction_search, parse_family
from .golden import SUITES, run_suite
from .profile import classify_growth, profile_table, structure_table
from .series import RationalSeries, series_expand
from .structures import read_structure


def _coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strucprof", description="Profiles and monomorphic decompositions of relational structures.")
    sub = p.add_subparsers(dest="verb", required=True)

    pr = sub.add_parser("profile", help="profile table of a family or a structure file")
    src = pr.add_mutually_exclusive_group(required=True)
    src.add_argument("--family")
    src.add_argument("--file")
    pr.add_argument("--max-n", type=_nonneg, required=True)
    pr.add_argument("--prefix-cap", type=_nonneg)
    pr.add_argument("--format", choices=("csv", "json"), default="csv")

    for verb, text in (("components", "monomorphic components"), ("intervals", "interval decomposition of an ordered structure")):
        q = sub.add_parser(verb, help=text)
        q.add_argument("--file", required=True)

    cl = sub.add_parser("classify", help="growth verdict from a stabilized family table")
    cl.add_argument("--family", required=True)
    cl.add_argument("--max-n", type=_nonneg, required=True)

    ob = sub.add_parser("obstruct", help="ten graphs whose prefix embeds in a family prefix")
    ob.add_argument("--family", required=True)
    ob.add_argument("--prefix", type=_nonneg, required=True)
    ob.add_argument("--target", type=_nonneg, required=True)

    ve = sub.add_parser("verify", help="run a golden suite")
    ve.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])

    se = sub.add_parser("series", help="coefficients of a rational generating series")
    se.add_argument("--num", type=_coeffs, required=True)
    se.add_argument("--den", type=_coeffs, required=True)
    se.add_argument("--max-n", type=_nonneg, required=True)
    return p


def _run(args, out) -> int:
    if args.verb == "profile":
        if args.family:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                T = profile_table(parse_family(args.family), args.max_n, args.prefix_cap)
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
        else:
            T = structure_table(read_structure(args.file), args.max_n, args.file)
        out.write(T.to_csv() if args.format == "csv" else T.to_json())
    elif args.verb == "components":
        out.write(components(read_structure(args.file)).to_text())
    elif args.verb == "intervals":
        out.write(interval_decomposition(read_structure(args.file)).to_text())
    elif args.verb == "classify":
        T = profile_table(parse_family(args.family), args.max_n)
        out.write(f"{classify_growth(T)}\n")
    elif args.verb == "obstruct":
        F = parse_family(args.family)
        for i in obstruction_search(F, args.prefix, args.target):
            out.write(f"G{i}\n")
    elif args.verb == "series":
        coeffs = series_expand(RationalSeries(args.num, args.den), args.max_n)
        out.write(",".join(map(str, coeffs)) + "\n")
    elif args.verb == "verify":
        checks = run_suite(args.suite)
        for c in checks:
            out.write(c.line() + "\n")
        failed = sum(not c.passed for c in checks)
        print(f"{len(checks) - failed}/{len(checks)} checks passed", file=sys.stderr)
        return 1 if failed else 0
    return 0


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (StrucprofError, OSError) as exc:
        print(f"strucprof {args.verb}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
