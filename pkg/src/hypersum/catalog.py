"""Catalog of displayed identities, each checked exactly by the engine.

Every entry computes a left-hand side with the engine and a right-hand
side from an independent closed form or a literal table, both as lists
of exact values.  An entry passes iff the two lists are equal.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

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
from hypersum.exact import Poly, format_rational
from hypersum.gosper import antidifference, brute_sum, definite_sum, normal_form
from hypersum.tables import (
    build_A,
    build_B,
    closed_form_power_sum,
    gould_numbers,
    is_identity,
    matmul,
    verify_bell_identity,
)
from hypersum.termlang import parse_term, term_ratio

NMAX = 25

Values = Sequence[object]


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    compute: Callable[[], tuple[Values, Values]]


@dataclass(frozen=True)
class Outcome:
    id: str
    description: str
    passed: bool
    lhs: list[str]
    rhs: list[str]
    error: str = ""

    def as_json(self) -> dict:
        out = {"id": self.id, "status": "PASS" if self.passed else "FAIL",
               "lhs": self.lhs, "rhs": self.rhs}
        if self.error:
            out["error"] = self.error
        return out


def _fmt(v) -> str:
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return format_rational(v)
    return str(v)


def _fact(n: int) -> Fraction:
    return Fraction(math.factorial(n))


def _sum_identity(term: str, closed: Callable[[int], Fraction], nmax: int = NMAX):
    def compute():
        t = parse_term(term)
        cert = antidifference(t)
        if cert is None:
            raise ArithmeticError(f"{term} was judged not summable")
        lhs = [definite_sum(t, n, cert) for n in range(nmax + 1)]
        brute = [brute_sum(t, n) for n in range(nmax + 1)]
        if lhs != brute:
            raise ArithmeticError("telescoped sum disagrees with brute force")
        return lhs, [closed(n) for n in range(nmax + 1)]
    return compute


def _verdict(term: str):
    return lambda: (["summable" if antidifference(parse_term(term)) else "not summable"],
                    ["not summable"])


def _intro_closed(coeffs: list[int]):
    # -(poly in n)/n!
    p = Poly(coeffs)
    return lambda n: -p(n) / _fact(n)


def _two_pow_closed(coeffs: list[int]):
    p = Poly(coeffs)
    return lambda n: -p(n) * 2 ** (n + 1) / _fact(n)


def _bell(d: int) -> list[Fraction]:
    return list(bell_numbers(d).values)


def _normal_form_case(term: str, expected: tuple[list, list, list]):
    def compute():
        nf = normal_form(term_ratio(parse_term(term)))
        za, b, c = nf.gosper_triple()
        return ([str(za), str(b), str(c)],
                [str(Poly(expected[0])), str(Poly(expected[1])), str(Poly(expected[2]))])
    return compute


def _gosper_solution(term: str, expected_x: list[int]):
    def compute():
        cert = antidifference(parse_term(term))
        return [str(cert.x) if cert else "none"], [str(Poly(expected_x))]
    return compute


def _three_routes(fam: BasisFamily, dmax: int):
    def compute():
        rec = list(fam.corrections(dmax).values)
        egf = {"bell": lambda: egf_f(1, 1, dmax), "f": lambda: egf_f(fam.a, fam.z, dmax),
               "g": lambda: egf_g(fam.a, fam.z, dmax)}[fam.family.value]().egf()
        red = list(basis_reduction(fam, dmax).values)
        if egf != rec:
            raise ArithmeticError("EGF route disagrees with the recurrence")
        return rec, red
    return compute


def _bell_convolution_f(dmax: int):
    def compute():
        b = _bell(dmax)
        rhs = [sum(math.comb(d, j) * b[j] * b[d - j] for j in range(d + 1)) for d in range(dmax + 1)]
        return list(f_correction(1, 2, dmax).values), rhs
    return compute


def _bell_convolution_g(dmax: int):
    def compute():
        b = _bell(dmax + 1)
        rhs = [(-1) ** d * sum(math.comb(d, j) * b[j + 1] * b[d - j] for j in range(d + 1))
               for d in range(dmax + 1)]
        return list(g_correction(1, Fraction(-1, 2), dmax).values), rhs
    return compute


def _half_rising(sign: int, dmax: int):
    # c(d) = (+-1)^d sum_j C(d, j) b(j) / 2^(d-j)
    def compute():
        b = _bell(dmax)
        rhs = [sign**d * sum(Fraction(math.comb(d, j) * b[j], 2 ** (d - j)) for j in range(d + 1))
               for d in range(dmax + 1)]
        seq = f_correction(Fraction(1, 2), 1, dmax) if sign == 1 else \
            g_correction(Fraction(1, 2), -1, dmax)
        return list(seq.values), rhs
    return compute


def _summable_corrections(fam: BasisFamily, dmax: int):
    def compute():
        got = []
        for d in range(1, dmax + 1):
            ok = antidifference(summable_term(fam, d)) is not None
            bad = any(antidifference(fam.pure_term(Poly.monomial(d) - fam.corrections(d)[d] + s))
                      for s in (1, -1))
            got.append("iff" if ok and not bad else "broken")
        return got, ["iff"] * dmax
    return compute


def _closed_form_sweep(dmax: int = 10, nmax: int = NMAX):
    def compute():
        B = build_B(dmax)
        b = _bell(dmax)
        lhs, rhs = [], []
        for d in range(1, dmax + 1):
            P = closed_form_power_sum(d, B)
            for n in range(nmax + 1):
                lhs.append(sum((Fraction(k**d - b[d], math.factorial(k)) for k in range(n)),
                               Fraction(0)))
                rhs.append(-P(n) / _fact(n))
        return lhs, rhs
    return compute


def _series_identity(kind: str):
    def compute():
        order = 15
        lhs, rhs = [], []
        if kind == "f":
            for a in (1, Fraction(1, 2), 2):
                for z in (1, 2, 3):
                    lhs += egf_f(a, z, order).coeffs
                    rhs += f_via_bell_power(a, z, order).coeffs
        else:
            for a in (1, Fraction(1, 2), 2):
                for z in (-1, -2):
                    lhs += egf_g(a, Fraction(1, z), order).coeffs
                    rhs += g_via_bell_power(a, z, order).coeffs
        return lhs, rhs
    return compute


def build_catalog() -> list[Identity]:
    half = Fraction(1, 2)
    cat = [
        Identity("intro-d1", "sum_{k<=n} (k-1)/k! = -1/n!",
                 _sum_identity("(k-1)/fact(k)", _intro_closed([1]))),
        Identity("intro-d2", "sum_{k<=n} (k^2-2)/k! = -(n+2)/n!",
                 _sum_identity("(k^2-2)/fact(k)", _intro_closed([2, 1]))),
        Identity("intro-d3", "sum_{k<=n} (k^3-5)/k! = -(n^2+3n+5)/n!",
                 _sum_identity("(k^3-5)/fact(k)", _intro_closed([5, 3, 1]))),
        Identity("intro-d4", "sum_{k<=n} (k^4-15)/k! = -(n^3+4n^2+9n+15)/n!",
                 _sum_identity("(k^4-15)/fact(k)", _intro_closed([15, 9, 4, 1]))),
        Identity("gosper-1/k!-not-summable", "1/k! is not Gosper summable",
                 _verdict("1/fact(k)")),
        Identity("gosper-1/k!-normal-form", "normal form of 1/k! is (1, k+1, 1)",
                 _normal_form_case("1/fact(k)", ([1], [1, 1], [1]))),
        Identity("gosper-(k-1)/k!-normal-form", "normal form of (k-1)/k! is (1, k+1, k-1)",
                 _normal_form_case("(k-1)/fact(k)", ([1], [1, 1], [-1, 1]))),
        Identity("gosper-(k-1)/k!-solution", "x(k+1) - k x(k) = k-1 has x = -1",
                 _gosper_solution("(k-1)/fact(k)", [-1])),
        Identity("gosper-(k-1)/k!-antidifference", "sum_k (k-1)/k! = -k/k!",
                 lambda: ([str(antidifference(parse_term("(k-1)/fact(k)")).multiplier
                               * Poly([-1, 1]))], [str(Poly([0, -1]))])),
        Identity("gosper-rising-normal-form", "z^k rf(a,k) has normal form (z(a+k), 1, 1)",
                 _normal_form_case("pow(3,k)*rf(5/2,k)", ([Fraction(15, 2), 3], [1], [1]))),
        Identity("bell-prefix", "b(0..4) = 1, 1, 2, 5, 15",
                 lambda: (_bell(4), [1, 1, 2, 5, 15])),
        Identity("bell-three-routes", "Bell constants: recurrence = EGF = basis reduction, d <= 15",
                 _three_routes(BasisFamily("bell"), 15)),
        Identity("bell-iff", "(k^d - c)/k! summable iff c = b(d), d <= 6",
                 _summable_corrections(BasisFamily("bell"), 6)),
        Identity("f-1-2-prefix", "constants for 2^k/k! begin 2, 6, 22, 94",
                 lambda: (list(f_correction(1, 2, 4).values[1:]), [2, 6, 22, 94])),
        Identity("f-1-2-bell-convolution", "2^k/k! constants are sum_j C(d,j) b(j) b(d-j)",
                 _bell_convolution_f(12)),
        Identity("two-pow-d1", "sum (k-2) 2^k/k! = -2^{n+1}/n!",
                 _sum_identity("(k-2)*pow(2,k)/fact(k)", _two_pow_closed([1]))),
        Identity("two-pow-d2", "sum (k^2-6) 2^k/k! = -(n+3) 2^{n+1}/n!",
                 _sum_identity("(k^2-6)*pow(2,k)/fact(k)", _two_pow_closed([3, 1]))),
        Identity("two-pow-d3", "sum (k^3-22) 2^k/k! = -(n^2+4n+11) 2^{n+1}/n!",
                 _sum_identity("(k^3-22)*pow(2,k)/fact(k)", _two_pow_closed([11, 4, 1]))),
        Identity("two-pow-d4", "sum (k^4-94) 2^k/k! = -(n^3+5n^2+17n+47) 2^{n+1}/n!",
                 _sum_identity("(k^4-94)*pow(2,k)/fact(k)", _two_pow_closed([47, 17, 5, 1]))),
        Identity("f-half-1", "constants for 1/rf(1/2,k) are sum_j C(d,j) b(j)/2^{d-j}",
                 _half_rising(1, 12)),
        Identity("g-1-minus1", "constants for (-1)^k k! are (-1)^d b(d+1)",
                 lambda: (list(g_correction(1, -1, 12).values),
                          [(-1) ** d * b for d, b in enumerate(_bell(13)[1:])])),
        Identity("g-1-minus-half-bell-convolution",
                 "constants for k!/(-2)^k are (-1)^d sum_j C(d,j) b(j+1) b(d-j)",
                 _bell_convolution_g(12)),
        Identity("g-1-minus-half-d2", "constant for (k^2 - c) k!/(-2)^k is 11",
                 lambda: ([g_correction(1, -half, 2).values[2]], [11])),
        Identity("minus-two-pow-sum", "sum (k^2-11) k!/(-2)^k = (n-3)(n+1)!/(-2)^n - 8",
                 _sum_identity("(k^2-11)*fact(k)/pow(-2,k)",
                               lambda n: Fraction((n - 3) * math.factorial(n + 1), (-2) ** n) - 8,
                               nmax=20)),
        Identity("g-half-minus1", "constants for (-1)^k rf(1/2,k) are (-1)^d sum_j C(d,j) b(j)/2^{d-j}",
                 _half_rising(-1, 12)),
        Identity("f-three-routes", "f constants (a=1, z=2): three routes agree, d <= 15",
                 _three_routes(BasisFamily("f", 1, 2), 15)),
        Identity("g-three-routes", "g constants (a=1, z=-1/2): three routes agree, d <= 15",
                 _three_routes(BasisFamily("g", 1, -half), 15)),
        Identity("f-bell-power", "f_{a,z}(x) = e^{(1-a)x} B(x)^z through x^15",
                 _series_identity("f")),
        Identity("g-bell-power", "g_{a,1/z}(x) = e^{-ax} B(-x)^{-z} through x^15",
                 _series_identity("g")),
        Identity("matrix-A", "A rows 1..4 as displayed",
                 lambda: ([list(r) for r in build_A(4).rows],
                          [[1], [-1, 1], [-2, -1, 1], [-3, -3, -1, 1]])),
        Identity("matrix-B", "A^{-1} rows 1..5 as displayed",
                 lambda: ([list(r) for r in build_B(5).rows],
                          [[1], [1, 1], [3, 1, 1], [9, 4, 1, 1], [31, 14, 5, 1, 1]])),
        Identity("A-times-B", "A B = I through dmax = 20",
                 lambda: ([is_identity(matmul(build_A(20), build_B(20)))], [True])),
        Identity("gould", "Gould numbers 1, 1, 3, 9, 31",
                 lambda: (gould_numbers(5), [1, 1, 3, 9, 31])),
        Identity("closed-form-sweep", "sum_{k<n} (k^d-b(d))/k! = -P_d(n)/n!, d <= 10, n <= 25",
                 _closed_form_sweep()),
        Identity("bell-identity", "Bell identity from the closed form, d <= 8, 1 <= n <= 10",
                 lambda: ([verify_bell_identity(d, n) for d in range(9) for n in range(1, 11)],
                          [True] * 90)),
    ]
    return cat


def _normalize(vals: Values) -> list:
    out = []
    for v in vals:
        if isinstance(v, (list, tuple)):
            out.append([_fmt(x) for x in v])
        else:
            out.append(_fmt(v))
    return out


def run_identity(ident: Identity) -> Outcome:
    try:
        lhs, rhs = ident.compute()
    except Exception as exc:  # a crashing check is a failing check
        return Outcome(ident.id, ident.description, False, [], [], f"{type(exc).__name__}: {exc}")
    lhs_s, rhs_s = _normalize(lhs), _normalize(rhs)
    return Outcome(ident.id, ident.description, lhs_s == rhs_s, lhs_s, rhs_s)


def run_catalog(jobs: int = 1) -> list[Outcome]:
    cat = build_catalog()
    if jobs <= 1:
        return [run_identity(i) for i in cat]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_identity, cat))
