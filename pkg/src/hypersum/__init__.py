"""Exact Gosper summation of simple hypergeometric terms and their correction constants."""

from hypersum.exact import Poly, Rational, format_rational, parse_rational
from hypersum.gosper import (
    Certificate,
    NormalForm,
    NotSummableError,
    antidifference,
    brute_sum,
    definite_sum,
    normal_form,
    solve_gosper,
    verify_certificate,
)
from hypersum.termlang import RationalFunction, TermSpec, parse_term, term_eval, term_ratio

__all__ = [
    "Certificate", "NormalForm", "NotSummableError", "Poly", "Rational", "RationalFunction",
    "TermSpec", "antidifference", "brute_sum", "definite_sum", "format_rational",
    "normal_form", "parse_rational", "parse_term", "solve_gosper", "term_eval", "term_ratio",
    "verify_certificate",
]
