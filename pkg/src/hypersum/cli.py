"""Command-line interface: ``hypersum {sum,corrections,tables,verify-paper}``.

Exit codes: 0 success, 1 usage or parse error (or a failing identity in
``verify-paper``), 2 a definitive "not summable" verdict from ``sum``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from hypersum.catalog import run_catalog
from hypersum.corrections import (
    BasisFamily,
    Family,
    ParameterError,
    basis_reduction,
    check_params,
    correction_sequence,
    egf_f,
    egf_g,
)
from hypersum.exact import Poly, format_rational, parse_rational
from hypersum.gosper import antidifference, antidifference_expr, definite_sum, normal_form
from hypersum.tables import a121207_table, build_A, build_B, gould_numbers
from hypersum.termlang import TermError, parse_term, pretty_print, term_ratio

EXIT_OK, EXIT_ERROR, EXIT_NOT_SUMMABLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _poly_json(p: Poly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def cmd_sum(args, out) -> int:
    t = parse_term(args.term)
    cert = antidifference(t)
    report: dict = {"term": pretty_print(t), "summable": cert is not None}
    if not t.is_zero():
        nf = normal_form(term_ratio(t))
        report["normal_form"] = {"z": format_rational(nf.z), "a": _poly_json(nf.a),
                                 "b": _poly_json(nf.b), "c": _poly_json(nf.c)}
    if cert is not None:
        report["x"] = _poly_json(cert.x)
        report["multiplier"] = {"num": _poly_json(cert.multiplier.num),
                                "den": _poly_json(cert.multiplier.den)}
        report["antidifference"] = antidifference_expr(t, cert)
        if args.n is not None:
            report["n"] = args.n
            report["value"] = format_rational(definite_sum(t, args.n, cert))
    if args.format == "json":
        print(json.dumps(report, indent=2), file=out)
    else:
        print(f"term: {report['term']}", file=out)
        if "normal_form" in report:
            nf = normal_form(term_ratio(t))
            print(f"normal form: z = {format_rational(nf.z)}, a = {nf.a}, b = {nf.b}, "
                  f"c = {nf.c}", file=out)
        if cert is None:
            print("verdict: not summable", file=out)
        else:
            print("verdict: summable", file=out)
            print(f"x(k) = {cert.x}", file=out)
            print(f"multiplier R(k) = {cert.multiplier}", file=out)
            print(f"antidifference S(k) = {report['antidifference']}", file=out)
            if args.n is not None:
                print(f"sum_{{k=0}}^{{{args.n}}} = {report['value']}", file=out)
    return EXIT_OK if cert is not None else EXIT_NOT_SUMMABLE


def cmd_corrections(args, out) -> int:
    family = Family(args.family)
    a = args.a if args.a is not None else Fraction(1)
    z = args.z if args.z is not None else Fraction(1)
    if family is not Family.BELL and (args.a is None or args.z is None):
        raise UsageError(f"family {family.value} needs --a and --z")
    if args.route == "recurrence":
        values = list(correction_sequence(family, args.dmax, a, z).values)
    elif args.route == "egf":
        if family is Family.BELL:
            series = egf_f(1, 1, args.dmax)
        else:
            a, z = check_params(a, z)
            series = (egf_f if family is Family.F else egf_g)(a, z, args.dmax)
        values = series.egf()
    else:
        values = list(basis_reduction(BasisFamily(family, a, z), args.dmax).values)
    if args.format == "json":
        print(json.dumps([format_rational(v) for v in values]), file=out)
    else:
        for d, v in enumerate(values):
            print(f"{d} {format_rational(v)}", file=out)
    return EXIT_OK


def cmd_tables(args, out) -> int:
    if args.which == "gould":
        vals = gould_numbers(args.dmax)
        if args.format == "json":
            print(json.dumps([format_rational(v) for v in vals]), file=out)
        else:
            print(", ".join(format_rational(v) for v in vals), file=out)
        return EXIT_OK
    table = {"A": build_A, "B": build_B, "a121207": a121207_table}[args.which](args.dmax)
    print(table.to_json() if args.format == "json" else table.to_text(), file=out)
    return EXIT_OK


def cmd_verify_paper(args, out) -> int:
    outcomes = run_catalog(jobs=args.jobs)
    if args.format == "json":
        print(json.dumps([o.as_json() for o in outcomes], indent=2), file=out)
    else:
        for o in outcomes:
            status = "PASS" if o.passed else "FAIL"
            print(f"{status} {o.id}: {o.description}", file=out)
            if not o.passed:
                if o.error:
                    print(f"    error: {o.error}", file=out)
                else:
                    print(f"    lhs: {o.lhs}\n    rhs: {o.rhs}", file=out)
        npass = sum(o.passed for o in outcomes)
        print(f"{npass}/{len(outcomes)} identities hold", file=out)
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypersum", description="Exact Gosper summation and Bell-type corrections.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("sum", help="decide Gosper summability of a term")
    s.add_argument("term", help='term expression, e.g. "(k-1)/fact(k)"')
    s.add_argument("--n", type=_nonneg, help="also evaluate sum_{k=0}^{n} exactly")
    fmt(s)

    c = sub.add_parser("corrections", help="correction constants c(0..dmax)")
    c.add_argument("--family", choices=[f.value for f in Family], required=True)
    c.add_argument("--a", type=_rational_arg)
    c.add_argument("--z", type=_rational_arg)
    c.add_argument("--dmax", type=_nonneg, required=True)
    c.add_argument("--route", choices=("recurrence", "egf", "basis"), default="recurrence")
    fmt(c)

    t = sub.add_parser("tables", help="change-of-basis tables")
    t.add_argument("--which", choices=("A", "B", "gould", "a121207"), required=True)
    t.add_argument("--dmax", type=_positive, required=True)
    fmt(t)

    v = sub.add_parser("verify-paper", help="check the catalog of displayed identities")
    v.add_argument("--jobs", type=_positive, default=1)
    fmt(v)
    return p


_COMMANDS = {"sum": cmd_sum, "corrections": cmd_corrections, "tables": cmd_tables,
             "verify-paper": cmd_verify_paper}


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse takes "-1/2" for an option flag; glue it to its option instead
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--a", "--z"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
    except SystemExit as exc:  # usage errors and --help
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except TermError as exc:
        print(exc.diagnostic(), file=sys.stderr)
    except (ParameterError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
