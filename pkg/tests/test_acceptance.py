"""Acceptance criteria 1-10, each run exactly and reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the PASS/FAIL lines appear in
the "acceptance criteria" section of the terminal summary.  The file also
runs as a script: ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
from fractions import Fraction

import pytest

from hypersum.corrections import (
    BasisFamily,
    basis_reduction,
    bell_numbers,
    egf_f,
    egf_g,
    f_correction,
    f_via_bell_power,
    g_correction,
    g_via_bell_power,
    summable_term,
)
from hypersum.exact import Poly, poly_gcd
from hypersum.gosper import (
    antidifference,
    brute_sum,
    definite_sum,
    dispersion_set,
    normal_form,
    verify_certificate,
)
from hypersum.tables import (
    build_A,
    build_B,
    closed_form_power_sum,
    gould_numbers,
    is_identity,
    matmul,
    verify_bell_identity,
)
from hypersum.termlang import TermSpec, parse_term, term_ratio

F = Fraction
H = F(1, 2)


def criterion(number):
    """Run the decorated check, print its PASS/FAIL line, re-raise failures."""
    def wrap(check):
        def test(acceptance_report):
            head = f"CRITERION {number:2d}:"
            try:
                check()
            except Exception as exc:
                acceptance_report(f"{head} FAIL  {type(exc).__name__}: {exc}"[:300])
                raise
            acceptance_report(f"{head} PASS  {check.__doc__}")
        test.__name__ = check.__name__
        test.__doc__ = check.__doc__
        return test
    return wrap


def fact(n):
    return F(math.factorial(n))


def check_sum(src, closed, nmax):
    t = parse_term(src)
    cert = antidifference(t)
    assert cert is not None, f"{src} not summable"
    assert verify_certificate(term_ratio(t), cert)
    for n in range(nmax + 1):
        got = definite_sum(t, n, cert)
        assert got == brute_sum(t, n) == closed(n), (src, n, got, closed(n))


@criterion(1)
def test_criterion_01_intro_identities():
    """(k^d - b(d))/k! for d = 1..4 telescope to the displayed closed forms."""
    forms = {
        "(k-1)/fact(k)": lambda n: -1 / fact(n),
        "(k^2-2)/fact(k)": lambda n: -(n + 2) / fact(n),
        "(k^3-5)/fact(k)": lambda n: -(n**2 + 3 * n + 5) / fact(n),
        "(k^4-15)/fact(k)": lambda n: -(n**3 + 4 * n**2 + 9 * n + 15) / fact(n),
    }
    for src, closed in forms.items():
        check_sum(src, closed, 25)


@criterion(2)
def test_criterion_02_non_summability():
    """1/k! and every off-by-one constant are not summable."""
    assert antidifference(parse_term("1/fact(k)")) is None
    for fam in (BasisFamily("bell"), BasisFamily("f", 1, 2), BasisFamily("g", 1, -H)):
        values = fam.corrections(6).values
        for d in range(7):
            assert antidifference(summable_term(fam, d, values)) is not None
            for s in (1, -1):
                t = fam.pure_term(Poly.monomial(d) - (values[d] + s))
                assert antidifference(t) is None, (fam, d, s)


@criterion(3)
def test_criterion_03_bell_numbers():
    """Bell prefix, and three routes agreeing through d = 15."""
    rec = list(bell_numbers(15).values)
    assert rec[:5] == [1, 1, 2, 5, 15]
    assert rec == egf_f(1, 1, 15).egf()
    assert rec == list(basis_reduction(BasisFamily("bell"), 15).values)


@criterion(4)
def test_criterion_04_f_family():
    """2, 6, 22, 94 and the four 2^k closed forms."""
    assert list(f_correction(1, 2, 4).values[1:]) == [2, 6, 22, 94]
    forms = {
        "(k-2)*pow(2,k)/fact(k)": [1],
        "(k^2-6)*pow(2,k)/fact(k)": [3, 1],
        "(k^3-22)*pow(2,k)/fact(k)": [11, 4, 1],
        "(k^4-94)*pow(2,k)/fact(k)": [47, 17, 5, 1],
    }
    for src, cs in forms.items():
        check_sum(src, lambda n, cs=cs: -Poly(cs)(n) * 2 ** (n + 1) / fact(n), 25)


@criterion(5)
def test_criterion_05_g_family():
    """The constant 11 and the (-2)^k sum through n = 20."""
    assert g_correction(1, -H, 2).values[2] == 11
    check_sum("(k^2-11)*fact(k)/pow(-2,k)",
              lambda n: F((n - 3) * math.factorial(n + 1), (-2) ** n) - 8, 20)


@criterion(6)
def test_criterion_06_convolutions():
    """EGFs equal the Bell-power products through order 15."""
    for z in (1, 2, 3):
        for a in (1, H, 2):
            assert egf_f(a, z, 15) == f_via_bell_power(a, z, 15), (a, z)
    for z in (-1, -2):
        for a in (1, H, 2):
            assert egf_g(a, F(1, z), 15) == g_via_bell_power(a, z, 15), (a, z)


@criterion(7)
def test_criterion_07_tables():
    """Displayed inverse rows, A B = I through 20, Gould prefix."""
    assert [build_B(5).row(d) for d in range(1, 6)] == \
        [[1], [1, 1], [3, 1, 1], [9, 4, 1, 1], [31, 14, 5, 1, 1]]
    assert is_identity(matmul(build_A(20), build_B(20)))
    assert gould_numbers(5) == [1, 1, 3, 9, 31]


@criterion(8)
def test_criterion_08_explicit_formula():
    """sum_{k<n} (k^d - b(d))/k! = -P_d(n)/n! for d <= 10, n <= 25."""
    B = build_B(10)
    b = bell_numbers(10).values
    for d in range(1, 11):
        P = closed_form_power_sum(d, B)
        for n in range(26):
            lhs = sum((F(k**d - b[d]) / fact(k) for k in range(n)), F(0))
            assert lhs == -P(n) / fact(n), (d, n)


@criterion(9)
def test_criterion_09_bell_identity():
    """The Bell identity for d <= 8, 1 <= n <= 10."""
    for d in range(9):
        for n in range(1, 11):
            assert verify_bell_identity(d, n), (d, n)


GEOMETRIC = [F(v) for v in ("1", "-1", "2", "-2", "1/2", "-1/2", "3", "2/3")]
RISING = [F(v) for v in ("1/2", "3/2", "2", "3", "-1/2", "1/3", "5/3", "-3")]
FAMILY_PARAMS = [(1, 1), (1, 2), (H, 1), (F(3, 2), -H), (2, 3), (F(5, 3), -2)]


def random_term(rng):
    """A random TermSpec; about a third are built from a summable basis."""
    if rng.random() < 1 / 3:
        name = rng.choice(["bell", "f", "g"])
        a, z = rng.choice(FAMILY_PARAMS)
        return summable_term(BasisFamily(name, a, z), rng.randint(0, 6))
    deg = rng.randint(0, 3)
    p = Poly([rng.randint(-6, 6) for _ in range(deg + 1)])
    if p.is_zero():
        p = Poly([rng.randint(1, 6)])
    factors = []
    for base in rng.sample(RISING, rng.randint(0, 2)):
        e = 1 if base <= 0 and base.denominator == 1 else rng.choice([-1, 1])
        factors.append((base, e))
    return TermSpec(p, rng.choice(GEOMETRIC), tuple(factors), rng.randint(-2, 2))


@criterion(10)
def test_criterion_10_property_suites():
    """Normal form, certificates and definite sums on 200 random terms."""
    rng = random.Random(20240)
    summable = 0
    for _ in range(200):
        t = random_term(rng)
        if t.is_zero():
            assert definite_sum(t, 5) == 0
            continue
        r = term_ratio(t)
        nf = normal_form(r)
        assert nf.ratio() == r, t
        disp = dispersion_set(r.num.monic(), r.den.monic())
        for i in range(2 * max(disp, default=0) + 6):
            assert poly_gcd(nf.a, nf.b.shift(i)).degree == 0, (t, i)
        cert = antidifference(t)
        if cert is None:
            continue
        summable += 1
        assert verify_certificate(r, cert), t
        for n in range(31):
            assert definite_sum(t, n, cert) == brute_sum(t, n), (t, n)
    assert summable >= 40, summable


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
