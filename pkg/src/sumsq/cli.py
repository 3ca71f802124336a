"""Command-line interface: compute, qexp, verify, table, bench.

Exit codes: 0 success, 2 usage error, 3 verification failure.  Errors are
written to stderr as a JSON object {"error": ..., "exit_code": ...}.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .arith import FACTOR_LIMIT, Factorization, factorize
from .qseries import FORMS, named_form
from .repnum import ELEMENTARY_N, GuardError, r_value
from .series import fmt_rational
from .verify import (
    VerificationError,
    a3_table,
    elementarity,
    format_table_csv,
    format_table_text,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

METHODS = ("formula", "series", "brute")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like LO..HI, got {text!r}")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be integers, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def _check_even(n: int) -> None:
    if n < 1 or n % 2:
        raise CliError(f"n must be a positive even integer (odd n is half-integral weight); got {n}")


def _resolve_factorization(m: int, text: str | None) -> tuple[Factorization | None, str]:
    if m == 0:
        return None, "none"
    if text is not None:
        try:
            f = Factorization.parse(text)
        except ValueError as exc:
            raise CliError(f"bad --factorization: {exc}") from None
        if f.value != m:
            raise CliError(f"--factorization {f} multiplies to {f.value}, not {m}")
        return f, "supplied"
    if m >= FACTOR_LIMIT:
        raise CliError(
            f"m = {m} is at least 2^64; pass --factorization p1^e1,p2^e2,... "
            "instead of asking for a heavy factorization"
        )
    return factorize(m), "computed"


def _compute(n: int, m: int, method: str, fact_text: str | None) -> dict:
    _check_even(n)
    if m < 0:
        raise CliError("m must be non-negative")
    if method == "formula" and n > 12:
        raise CliError(f"no formula for n={n}; formulas exist for n in {ELEMENTARY_N} and 12")
    f, source = (None, "none")
    if method == "formula":
        f, source = _resolve_factorization(m, fact_text)
    start = time.perf_counter()
    try:
        value = r_value(n, m, method, f)
    except GuardError as exc:
        raise CliError(str(exc)) from None
    elapsed = time.perf_counter() - start
    return {
        "n": n,
        "m": m,
        "value": value,
        "method": method,
        "elapsed_s": elapsed,
        "factorization": str(f) if f is not None else None,
        "factorization_source": source,
    }


def cmd_compute(args, out) -> int:
    res = _compute(args.n, args.m, args.method, args.factorization)
    if args.json:
        out.write(json.dumps(res) + "\n")
    else:
        out.write(f"{res['value']}\n")
    return EXIT_OK


def cmd_qexp(args, out) -> int:
    if args.order < 0:
        raise CliError("--order must be non-negative")
    try:
        s = named_form(args.form, args.param, args.order)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.json:
        data = s.to_json()
        data["form"] = args.form
        data["param"] = args.param
        out.write(json.dumps(data) + "\n")
    else:
        out.write(s.pretty() + "\n")
    return EXIT_OK


def _even_targets(args, err) -> list[int]:
    if args.n is not None:
        _check_even(args.n)
        return [args.n]
    lo, hi = args.range
    targets = []
    for n in range(lo, hi + 1):
        if n % 2 or n < 2:
            if not args.quiet:
                err.write(f"note: skipping n={n} (only even n >= 2 are covered)\n")
            continue
        targets.append(n)
    return targets


def _describe(cert) -> str:
    if cert.witness_kind == "decomposition":
        terms = ", ".join(f"{b}={fmt_rational(v)}" for b, v in zip(cert.basis, cert.values))
        return f"n={cert.n}: {cert.verdict} ({terms}; checked to q^{cert.checked_order})"
    det, a = cert.values
    return f"n={cert.n}: {cert.verdict} (det={fmt_rational(det)}, a3={fmt_rational(a)})"


def cmd_verify(args, out, err) -> int:
    if args.n is None and args.range is None:
        raise CliError("give --n N or --range LO..HI")
    failed = False
    certs = []
    for n in _even_targets(args, err):
        try:
            cert = elementarity(n, args.order)
        except VerificationError as exc:
            failed = True
            err.write(json.dumps({"error": str(exc), "n": n, "exit_code": EXIT_VERIFY}) + "\n")
            continue
        ok = cert.check()
        failed |= not ok
        certs.append((cert, ok))
    if args.json:
        out.write(json.dumps([dict(c.to_json(), self_check=ok) for c, ok in certs]) + "\n")
    else:
        for c, ok in certs:
            out.write(_describe(c) + ("" if ok else "  SELF-CHECK FAILED") + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_table(args, out) -> int:
    lo, hi = args.range
    rows = a3_table(max(lo, 4), hi)
    if args.json:
        out.write(
            json.dumps(
                [
                    {"n": r.n, "c3": fmt_rational(r.c3), "r3": r.r3, "a3": fmt_rational(r.a3)}
                    for r in rows
                ]
            )
            + "\n"
        )
    elif args.format == "csv":
        out.write(format_table_csv(rows))
    else:
        out.write(format_table_text(rows) + "\n")
    return EXIT_OK


def cmd_bench(args, out, err) -> int:
    _check_even(args.n)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise CliError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    rows = []
    mismatch = False
    for m in args.m:
        results = {}
        for method in methods:
            try:
                res = _compute(args.n, m, method, None)
            except CliError as exc:
                results[method] = {"skipped": str(exc)}
                continue
            results[method] = {"value": res["value"], "elapsed_s": res["elapsed_s"]}
        values = {r["value"] for r in results.values() if "value" in r}
        if len(values) > 1:
            mismatch = True
            err.write(
                json.dumps(
                    {
                        "error": f"methods disagree for n={args.n}, m={m}",
                        "values": {k: v.get("value") for k, v in results.items()},
                        "exit_code": EXIT_VERIFY,
                    }
                )
                + "\n"
            )
        rows.append({"m": m, "results": results})
    if args.json:
        out.write(json.dumps({"n": args.n, "rows": rows}) + "\n")
    else:
        header = ["m", "value"] + [f"{meth} (s)" for meth in methods]
        lines = [header]
        for row in rows:
            vals = [r["value"] for r in row["results"].values() if "value" in r]
            cells = [str(row["m"]), str(vals[0]) if vals else "-"]
            for meth in methods:
                r = row["results"][meth]
                cells.append(f"{r['elapsed_s']:.6f}" if "value" in r else "skipped")
            lines.append(cells)
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        for line in lines:
            out.write("  ".join(c.rjust(w) for c, w in zip(line, widths)) + "\n")
    return EXIT_VERIFY if mismatch else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress notes")

    p = argparse.ArgumentParser(prog="sumsq", description="Exact sums-of-squares counts and theta-series checks.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--quiet", action="store_true", help="suppress notes")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="r_n(m)")
    c.add_argument("n", type=int)
    c.add_argument("m", type=int)
    c.add_argument("--factorization", help='prime factorization of m, e.g. "2^2,3^1"')
    c.add_argument("--method", choices=METHODS, default="formula")

    q = sub.add_parser("qexp", parents=[common], help="print a truncated q-expansion")
    q.add_argument("form", choices=FORMS)
    q.add_argument("param", type=int, nargs="?", help="n for theta, weight k otherwise")
    q.add_argument("--order", type=int, default=10)

    v = sub.add_parser("verify", parents=[common], help="elementarity certificates")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--range", type=_parse_range)
    v.add_argument("--order", type=int, default=200, help="q-order to which decompositions are checked")

    t = sub.add_parser("table", parents=[common], help="the a_3 = r_n(3) - c_3 table")
    t.add_argument("--range", type=_parse_range, default=(4, 20))
    t.add_argument("--format", choices=("text", "csv"), default="text")

    b = sub.add_parser("bench", parents=[common], help="time formula vs series vs brute force")
    b.add_argument("n", type=int)
    b.add_argument("m", type=int, nargs="+")
    b.add_argument("--methods", default=",".join(METHODS))
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "compute":
            return cmd_compute(args, out)
        if args.command == "qexp":
            return cmd_qexp(args, out)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        if args.command == "table":
            return cmd_table(args, out)
        return cmd_bench(args, out, err)
    except CliError as exc:
        err.write(json.dumps({"error": str(exc), "exit_code": exc.code}) + "\n")
        return exc.code
    except ValueError as exc:
        err.write(json.dumps({"error": str(exc), "exit_code": EXIT_USAGE}) + "\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
