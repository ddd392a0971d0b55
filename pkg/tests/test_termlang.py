from fractions import Fraction

import pytest
from hypothesis import given

from hypersum.exact import Poly
from hypersum.termlang import (
    RationalFunction,
    TermSemanticError,
    TermSpec,
    TermSyntaxError,
    parse_term,
    pretty_print,
    pure_part_eval,
    term_eval,
    term_ratio,
)
from strategies import term_specs

k = Poly.k()


def test_parse_example_terms():
    t = parse_term("1/fact(k)")
    assert (t.polynomial_part, t.factorial_exponent) == (Poly([1]), -1)
    t = parse_term("(k-1)/fact(k)")
    assert (t.polynomial_part, t.factorial_exponent) == (k - 1, -1)
    t = parse_term("pow(2,k)*(k^2-6)/fact(k)")
    assert t.polynomial_part == k**2 - 6
    assert t.geometric_base == 2
    assert t.factorial_exponent == -1


def test_parse_normalizes():
    assert parse_term("fact(k)/pow(-2,k)*(k^2-11)") == TermSpec(k**2 - 11, Fraction(-1, 2), (), 1)
    # rf(1, k) is k!
    assert parse_term("1/rf(1,k)") == parse_term("1/fact(k)")
    assert parse_term("rf(1/2,k)^2/rf(1/2,k)") == TermSpec(Poly([1]), 1, ((Fraction(1, 2), 1),))
    assert parse_term("k/fact(k) - 1/fact(k)") == parse_term("(k-1)/fact(k)")
    assert parse_term("2*k^2/4") == TermSpec(Fraction(1, 2) * k**2)
    assert parse_term("-k^2") == TermSpec(-(k**2))


@pytest.mark.parametrize("src,offset", [
    ("(k", 2),
    ("k +", 3),
    ("k $ 2", 2),
    ("1.5", 1),
    ("fact(k", 6),
])
def test_syntax_errors_carry_offsets(src, offset):
    with pytest.raises(TermSyntaxError) as info:
        parse_term(src)
    assert info.value.offset == offset
    assert "^" in info.value.diagnostic()


@pytest.mark.parametrize("src,offset", [
    ("pow(k,k)", 4),
    ("2^k", 2),
    ("1/rf(-2,k)", 2),
    ("k/(k+1)", 2),
    ("1 + 1/fact(k)", 2),
    ("fact(2)", 5),
    ("n/fact(k)", 0),
    ("pow(0,k)", 4),
    ("rf(1/2)", 6),
    ("k^(1/2)", 2),
    ("k^-1*k", 2),
])
def test_semantic_errors(src, offset):
    with pytest.raises(TermSemanticError) as info:
        parse_term(src)
    assert info.value.offset == offset


def test_term_ratio_examples():
    assert term_ratio(parse_term("1/fact(k)")) == RationalFunction(Poly([1]), k + 1)
    assert term_ratio(parse_term("(k-1)/fact(k)")) == RationalFunction(k, (k + 1) * (k - 1))
    assert term_ratio(parse_term("rf(1/2,k)")) == RationalFunction(k + Fraction(1, 2))
    with pytest.raises(ValueError):
        term_ratio(parse_term("0"))


def test_term_ratio_lowest_terms_monic():
    r = term_ratio(parse_term("(2*k+2)*pow(3,k)/fact(k)"))
    assert r.den.lc == 1
    assert r == RationalFunction(Poly([6, 3]), (k + 1) ** 2) * (k + 2) / (k + 2)


def test_term_eval_examples():
    assert term_eval(parse_term("1/fact(k)"), 3) == Fraction(1, 6)
    assert term_eval(parse_term("rf(1/2,k)"), 2) == Fraction(3, 4)
    assert term_eval(parse_term("(k-1)/fact(k)"), 0) == -1


def test_pure_part_eval_examples():
    assert pure_part_eval(parse_term("1/fact(k)"), 4) == Fraction(1, 24)
    assert pure_part_eval(parse_term("pow(2,k)/fact(k)"), 3) == Fraction(4, 3)
    assert pure_part_eval(parse_term("(k^2-11)*fact(k)/pow(-2,k)"), 2) == Fraction(1, 2)


def test_half_rising_is_central_binomial_form():
    # 1/(1/2)^{k rising} = 4^k k!/(2k)!
    import math
    t = parse_term("1/rf(1/2,k)")
    for n in range(8):
        assert term_eval(t, n) == Fraction(4**n * math.factorial(n), math.factorial(2 * n))


@given(term_specs())
def test_ratio_matches_consecutive_values(t):
    r = term_ratio(t)
    assert r.den.lc == 1
    for n in range(21):
        f0 = term_eval(t, n)
        if f0 != 0 and r.den(n) != 0:
            assert term_eval(t, n + 1) / f0 == r(n)


@given(term_specs())
def test_pretty_print_round_trips(t):
    assert parse_term(pretty_print(t)) == t
