"""Command-line interface: ``terracini {formula,eval,table,verify,oracle}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction

from .chow import Context
from .oracle import OracleError, count_terracini_pairs, random_curve
from .porteous import terracini_formula
from .verify import run_verification

DEFAULT_N_LIMIT = 8

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _fraction_text(x: Fraction) -> str:
    return str(x)


def _check_n(n: int, limit: int):
    if n < 2:
        raise UsageError(f"n must be >= 2, got {n}")
    if n > limit:
        raise UsageError(f"n={n} exceeds the configured limit {limit}; raise it with --n-limit")


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B or a single integer") from None


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed number {text!r}") from None


# documents ---------------------------------------------------------------


def formula_document(n: int, fmt: str = "text") -> str:
    t = terracini_formula(Context(n)).t
    if fmt == "text":
        return t.to_text()
    if fmt == "latex":
        return t.to_latex()
    if fmt == "json":
        data = t.to_json()
        return json.dumps({"n": n, "variables": data["variables"], "t": data["terms"], "text": t.to_text()})
    raise UsageError(f"unknown format {fmt!r}")


def eval_document(n: int, d: Fraction, g: Fraction) -> dict:
    result = terracini_formula(Context(n, d, g))
    value = result.t.constant_value()
    return {
        "n": n,
        "d": _fraction_text(d),
        "g": _fraction_text(g),
        "t": _fraction_text(value),
        "warnings": result.warnings,
    }


def table_rows(n: int, d_range: range, g_range: range) -> list:
    if not len(d_range) or not len(g_range):
        return []
    t = terracini_formula(Context(n)).t
    return [(d, g, t.substitute({"d": d, "g": g})) for d in d_range for g in g_range]


def oracle_report(d: int, seed: int, coeff_range: int, tol: float, expected: Fraction) -> dict:
    curve = random_curve(d, seed, coeff_range)
    start = time.perf_counter()
    result = count_terracini_pairs(curve, tol=tol)
    return {
        "d": d,
        "seed": seed,
        "range": coeff_range,
        "expected": int(expected),
        "count": result.count,
        "seconds": round(time.perf_counter() - start, 3),
        "solutions": [s.to_json() for s in result.solutions],
    }


# commands ------------------------------------------------------------------


def cmd_formula(args) -> int:
    _check_n(args.n, args.n_limit)
    print(formula_document(args.n, args.format))
    return EXIT_OK


def cmd_eval(args) -> int:
    _check_n(args.n, args.n_limit)
    doc = eval_document(args.n, _parse_rational(args.d), _parse_rational(args.g))
    if args.format == "json":
        print(json.dumps(doc))
    else:
        print(doc["t"])
        for w in doc["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_table(args) -> int:
    _check_n(args.n, args.n_limit)
    rows = table_rows(args.n, _parse_range(args.d), _parse_range(args.g))
    if args.format == "json":
        print(json.dumps({"n": args.n, "rows": [{"d": d, "g": g, "t": str(t)} for d, g, t in rows]}))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["d", "g", "t"])
        writer.writerows((d, g, str(t)) for d, g, t in rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    if not 2 <= args.max_n <= args.n_limit:
        raise UsageError(f"--max-n must lie in 2..{args.n_limit}")
    results = run_verification(args.max_n)
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"max_n": args.max_n, "passed": ok, "checks": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle(args) -> int:
    if args.d < 4:
        raise UsageError("oracle needs d >= 4")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    expected = terracini_formula(Context(2, args.d, 0)).t.constant_value()
    print(f"# seeds {args.seed}..{args.seed + args.trials - 1}", file=sys.stderr)
    try:
        runs = [oracle_report(args.d, args.seed + k, args.range, args.tol, expected)
                for k in range(args.trials)]
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    matches = sum(r["count"] == r["expected"] for r in runs)
    if args.trials == 1:
        print(json.dumps(runs[0]))
        return EXIT_OK if matches == 1 else EXIT_FAILED
    print(json.dumps({"d": args.d, "expected": int(expected), "trials": args.trials,
                      "matches": matches, "runs": runs}))
    return EXIT_OK if 10 * matches >= 9 * args.trials else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terracini",
        description="Expected length of the Terracini scheme of a curve of degree d and genus g in P^(3n-2).",
    )
    parser.add_argument("--n-limit", type=int, default=DEFAULT_N_LIMIT,
                        help=f"largest n accepted (default {DEFAULT_N_LIMIT})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="closed formula t(d, g) for a given n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("eval", help="exact value at one (d, g)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="grid of exact values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", required=True, help="A..B")
    p.add_argument("--g", required=True, help="A..B")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run every internal cross-check")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force count on random rational curves in P^4")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=10, help="coefficient range [-R, R]")
    p.add_argument("--tol", type=float, default=1e-8, help="relative residual tolerance")
    p.add_argument("--trials", type=int, default=1, help="number of consecutive seeds")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"terracini: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
