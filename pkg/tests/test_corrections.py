import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from hypersum.corrections import (
    BasisFamily,
    Family,
    ParameterError,
    Series,
    basis_reduction,
    bell_numbers,
    bell_series,
    correction_sequence,
    egf_f,
    egf_g,
    f_correction,
    f_via_bell_power,
    g_correction,
    g_via_bell_power,
    summable_term,
)
from hypersum.exact import Poly
from hypersum.gosper import antidifference, verify_certificate
from hypersum.termlang import TermSpec, parse_term, term_ratio

H = Fraction(1, 2)
A_GRID = [Fraction(1), H, Fraction(3, 2), Fraction(2), Fraction(5, 3)]
Z_GRID = [Fraction(1), Fraction(-1), H, -H, Fraction(2), Fraction(3), Fraction(-2)]


def bell_triangle(n):
    """Bell numbers b(0..n) from the Aitken array."""
    out, row = [1], [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        out.append(nxt[0])
        row = nxt
    return out[: n + 1]


def test_bell_examples():
    assert list(bell_numbers(7).values) == [1, 1, 2, 5, 15, 52, 203, 877]
    assert list(bell_numbers(0).values) == [1]


def test_bell_matches_triangle():
    assert list(bell_numbers(40).values) == bell_triangle(40)


def test_f_examples():
    assert list(f_correction(1, 1, 4).values) == [1, 1, 2, 5, 15]
    assert list(f_correction(1, 2, 4).values) == [1, 2, 6, 22, 94]
    c = f_correction(H, 1, 2).values[2]
    b = bell_numbers(2).values
    assert c == sum(math.comb(2, j) * b[j] / 2 ** (2 - j) for j in range(3)) == Fraction(13, 4)


def test_g_examples():
    assert list(g_correction(1, -1, 3).values) == [1, -2, 5, -15]
    b = bell_numbers(12).values
    assert list(g_correction(1, -1, 11).values) == [(-1) ** d * b[d + 1] for d in range(12)]
    assert g_correction(1, -H, 2).values[2] == 11
    assert g_correction(1, -H, 1).values[1] == -3


def test_g_half_convolution_formula():
    # (-1)^d sum_j C(d, j) b(j+1) b(d-j)
    b = bell_numbers(13).values
    vals = g_correction(1, -H, 12).values
    for d in range(13):
        assert vals[d] == (-1) ** d * sum(math.comb(d, j) * b[j + 1] * b[d - j]
                                          for j in range(d + 1))


def test_f_two_convolution_reads_b_j():
    # the sum over C(d, j) b(j) b(d-j) gives 2, 6, 22, 94; the variant with
    # b(d) b(d-j) in place of b(j) b(d-j) does not
    b = bell_numbers(4).values
    read_bj = [sum(math.comb(d, j) * b[j] * b[d - j] for j in range(d + 1)) for d in range(1, 5)]
    read_bd = [sum(math.comb(d, j) * b[d] * b[d - j] for j in range(d + 1)) for d in range(1, 5)]
    assert read_bj == [2, 6, 22, 94] == list(f_correction(1, 2, 4).values[1:])
    assert read_bd != read_bj


def test_egf_examples():
    assert egf_f(1, 1, 4).egf() == [1, 1, 2, 5, 15]
    assert egf_g(1, -1, 3).egf() == [1, -2, 5, -15]
    assert egf_f(Fraction(7, 3), 5, 0).egf() == [1]
    assert len(egf_f(1, 1, 6).coeffs) == 7


def test_series_examples():
    assert (bell_series(4) ** 2).egf()[1:] == [2, 6, 22, 94]
    s = Series([3, 1, -2, 5, 7])
    assert s * s.inverse() == Series([1], 4)
    assert s ** -2 == (s * s).inverse()
    assert s ** 0 == Series([1], 4)
    half = Series.exp_linear(H, 6) * bell_series(6)
    assert half.egf()[2] == Fraction(13, 4)
    assert half.egf() == list(f_correction(H, 1, 6).values)
    assert Series([1, 2, 3]).compose_linear(-1) == Series([1, -2, 3])


def test_series_inverse_needs_constant_term():
    with pytest.raises(ZeroDivisionError):
        Series([0, 1, 1]).inverse()


@given(st.lists(st.fractions(max_denominator=9).filter(lambda v: abs(v) < 20),
                min_size=2, max_size=8), st.integers(-3, 3))
def test_series_pow_property(cs, n):
    s = Series([Fraction(1)] + cs)
    expected = Series([1], s.order)
    base = s if n >= 0 else s.inverse()
    for _ in range(abs(n)):
        expected = expected * base
    assert s**n == expected


def test_basis_reduction_examples():
    assert list(basis_reduction(BasisFamily("bell"), 4).values[1:]) == [1, 2, 5, 15]
    assert list(basis_reduction(BasisFamily("f", 1, 2), 4).values[1:]) == [2, 6, 22, 94]
    assert list(basis_reduction(BasisFamily("g", 1, -1), 3).values[1:]) == [-2, 5, -15]


def test_basis_degrees():
    for fam in (BasisFamily("bell"), BasisFamily("f", H, 3), BasisFamily("g", 2, -H)):
        for d in range(10):
            assert fam.p(d).degree == d + 1


def test_summable_term_examples():
    assert summable_term(BasisFamily("bell"), 3) == parse_term("(k^3-5)/fact(k)")
    assert summable_term(BasisFamily("f", 1, 2), 1) == parse_term("(k-2)*pow(2,k)/fact(k)")
    assert summable_term(BasisFamily("g", 1, -1), 0).is_zero()


def test_triple_agreement_bell():
    rec = list(bell_numbers(15).values)
    assert rec == egf_f(1, 1, 15).egf()
    assert rec == list(basis_reduction(BasisFamily("bell"), 15).values)


@pytest.mark.parametrize("family", ["f", "g"])
def test_triple_agreement_grid(family):
    egf = egf_f if family == "f" else egf_g
    for a, z in product(A_GRID, Z_GRID):
        rec = list(correction_sequence(family, 15, a, z).values)
        assert rec == egf(a, z, 15).egf(), (a, z)
        assert rec == list(basis_reduction(BasisFamily(family, a, z), 15).values), (a, z)


@pytest.mark.parametrize("a", [1, H, 2])
@pytest.mark.parametrize("z", [1, 2, 3])
def test_f_convolution(a, z):
    assert egf_f(a, z, 15) == f_via_bell_power(a, z, 15)


@pytest.mark.parametrize("a", [1, H, 2, Fraction(5, 3)])
@pytest.mark.parametrize("z", [-1, -2])
def test_g_convolution(a, z):
    assert egf_g(a, Fraction(1, z), 15) == g_via_bell_power(a, z, 15)


BRIDGE = [BasisFamily("bell"), BasisFamily("f", 1, 2), BasisFamily("f", H, -1),
          BasisFamily("f", Fraction(5, 3), 3), BasisFamily("g", 1, -H),
          BasisFamily("g", Fraction(3, 2), 2)]


@pytest.mark.parametrize("fam", BRIDGE, ids=lambda f: f"{f.family.value}-{f.a}-{f.z}")
def test_summability_bridge(fam):
    values = fam.corrections(8).values
    for d in range(9):
        t = summable_term(fam, d, values)
        cert = antidifference(t)
        assert cert is not None
        if not t.is_zero():
            assert verify_certificate(term_ratio(t), cert)
        for s in (1, -1):
            assert antidifference(fam.pure_term(Poly.monomial(d) - (values[d] + s))) is None


@pytest.mark.parametrize("a, z", [(0, 1), (-3, 2), (1, 0), (Fraction(-2), H)])
def test_invalid_parameters(a, z):
    with pytest.raises(ParameterError):
        f_correction(a, z, 3)
    with pytest.raises(ParameterError):
        g_correction(a, z, 3)
    with pytest.raises(ParameterError):
        BasisFamily("f", a, z)


def test_egf_rejects_zero_z():
    with pytest.raises(ParameterError):
        egf_f(1, 0, 3)
    with pytest.raises(ParameterError):
        egf_g(1, 0, 3)


def test_family_enum():
    assert Family("bell") is Family.BELL
    assert correction_sequence("bell", 3).values == bell_numbers(3).values
