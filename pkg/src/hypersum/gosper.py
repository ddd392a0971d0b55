"""Gosper's decision procedure for indefinite hypergeometric summation.

Given a term f(k) with ratio r(k) = f(k+1)/f(k), write

    r(k) = z * a(k)/b(k) * c(k+1)/c(k),    gcd(a(k), b(k+i)) = 1 for i >= 0.

f has a hypergeometric antidifference S (S(k+1) - S(k) = f(k)) iff

    z*a(k) x(k+1) - b(k-1) x(k) = c(k)

has a polynomial solution x, and then S(k) = x(k) b(k-1) / c(k) * f(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from hypersum.exact import (
    NEG_INF,
    Poly,
    interpolate,
    nonneg_integer_roots,
    poly_gcd,
    resultant,
)
from hypersum.termlang import (
    RationalFunction,
    TermSpec,
    pretty_print,
    pure_part_eval,
    term_eval,
    term_ratio,
)


class NotSummableError(ValueError):
    """Raised by definite_sum when the term has no hypergeometric antidifference."""


@dataclass(frozen=True)
class NormalForm:
    z: Fraction
    a: Poly
    b: Poly
    c: Poly

    def ratio(self) -> RationalFunction:
        """z * a(k)/b(k) * c(k+1)/c(k), reconstructed."""
        return RationalFunction(self.a * self.z * self.c.shift(1), self.b * self.c)

    def gosper_triple(self) -> tuple[Poly, Poly, Poly]:
        """(z*a, b, c): the coefficients of the Gosper equation."""
        return self.a * self.z, self.b, self.c


@dataclass(frozen=True)
class Certificate:
    x: Poly
    multiplier: RationalFunction


def dispersion_set(p: Poly, q: Poly) -> list[int]:
    """Sorted j >= 0 with gcd(p(k), q(k+j)) nontrivial.

    The resultant res_k(p(k), q(k+j)) is a polynomial in j of degree
    deg(p)*deg(q); it is recovered by interpolation from integer samples.
    """
    if p.degree in (NEG_INF, 0) or q.degree in (NEG_INF, 0):
        return []
    npts = p.degree * q.degree + 1
    res_j = interpolate([(j, resultant(p, q.shift(j))) for j in range(npts)])
    if res_j.is_zero():
        raise ArithmeticError("dispersion resultant vanished identically")
    return sorted(nonneg_integer_roots(res_j))


def normal_form(r: RationalFunction) -> NormalForm:
    if r.is_zero():
        raise ValueError("the zero rational function has no normal form")
    z = r.num.lc / r.den.lc
    p, q = r.num.monic(), r.den.monic()
    c = Poly([1])
    for j in dispersion_set(p, q):
        g = poly_gcd(p, q.shift(j))
        if g.is_const():
            continue
        p = p.exact_div(g)
        q = q.exact_div(g.shift(-j))
        for i in range(1, j + 1):
            c = c * g.shift(-i)
    return NormalForm(z, p, q, c)


def degree_bound(a: Poly, b: Poly, c: Poly) -> Optional[int]:
    """Upper bound on deg x for polynomial solutions of a x(k+1) - b(k-1) x(k) = c.

    ``a`` here already carries the constant z.  Returns None when no
    degree is possible.
    """
    A, B = a, b.shift(-1)
    plus, minus = A + B, A - B
    if minus.degree >= plus.degree:
        cands = [c.degree - minus.degree]
    else:
        m = plus.degree
        alpha, beta = minus.coeff(m - 1), plus.lc
        cands = [c.degree - m + 1, -2 * alpha / beta]
    valid = [int(e) for e in cands
             if e is not NEG_INF and Fraction(e).denominator == 1 and e >= 0]
    return max(valid) if valid else None


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
                 ) -> Optional[list[Fraction]]:
    """One exact solution of rows * x = rhs (free unknowns set to 0), or None."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    if any(m[i][-1] != 0 for i in range(row, len(m))):
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][-1]
    return sol


def solve_gosper(a: Poly, b: Poly, c: Poly) -> Optional[Poly]:
    """Polynomial x with a(k) x(k+1) - b(k-1) x(k) = c(k), or None."""
    e = degree_bound(a, b, c)
    if e is None:
        return None
    B = b.shift(-1)
    k = Poly.k()
    cols = [a * (k + 1) ** i - B * k**i for i in range(e + 1)]
    height = max([c.degree] + [col.degree for col in cols if col]) + 1
    if height <= 0:
        return None
    rows = [[col.coeff(r) for col in cols] for r in range(height)]
    sol = solve_linear(rows, [c.coeff(r) for r in range(height)])
    if sol is None:
        return None
    x = Poly(sol)
    if a * x.shift(1) - B * x != c:
        raise ArithmeticError("linear solve produced a non-solution")
    return x


def verify_certificate(r: RationalFunction, cert: Certificate) -> bool:
    """True iff R(k+1) r(k) - R(k) = 1 identically, R the multiplier."""
    R = cert.multiplier
    return R.shift(1) * r - R == 1


def antidifference(t: TermSpec) -> Optional[Certificate]:
    """Certificate for a hypergeometric antidifference of t, or None if none exists."""
    if t.is_zero():
        return Certificate(Poly(), RationalFunction(Poly()))
    r = term_ratio(t)
    nf = normal_form(r)
    za, b, c = nf.gosper_triple()
    x = solve_gosper(za, b, c)
    if x is None:
        return None
    cert = Certificate(x, RationalFunction(x * b.shift(-1), c))
    if not verify_certificate(r, cert):
        raise ArithmeticError(f"certificate for {pretty_print(t)} failed verification")
    return cert


def is_summable(t: TermSpec) -> bool:
    return antidifference(t) is not None


def _scaled_multiplier(t: TermSpec, cert: Certificate) -> RationalFunction:
    # S(k) = R(k) p(k) * pure(k); R p is reduced so the shell cancels
    return cert.multiplier * t.polynomial_part


def antidifference_expr(t: TermSpec, cert: Certificate) -> str:
    """S(k) = R(k) f(k) written in the term grammar where possible."""
    M = _scaled_multiplier(t, cert)
    if M.is_zero():
        return "0"
    if M.den == 1:
        return pretty_print(t.with_polynomial(M.num))
    return f"({M.num})/({M.den}) * {pretty_print(t.with_polynomial(Poly([1])))}"


def antidifference_at(t: TermSpec, cert: Certificate, k0: int) -> Fraction:
    """S(k0); raises ZeroDivisionError at a pole of the reduced multiplier."""
    M = _scaled_multiplier(t, cert)
    return M(k0) * pure_part_eval(t, k0)


def _multiplier_poles(M: RationalFunction) -> set[int]:
    return nonneg_integer_roots(M.den) if M.den.degree > 0 else set()


def definite_sum(t: TermSpec, n: int, cert: Optional[Certificate] = None) -> Fraction:
    """sum_{k=0}^{n} f(k) by telescoping S(n+1) - S(0).

    Where the reduced multiplier has a pole at a nonnegative integer the
    telescoping chain is broken there and the affected terms are added
    directly.
    """
    if n < 0:
        return Fraction(0)
    if cert is None:
        cert = antidifference(t)
        if cert is None:
            raise NotSummableError(f"{pretty_print(t)} is not Gosper summable")
    if t.is_zero():
        return Fraction(0)
    M = _scaled_multiplier(t, cert)
    poles = {p for p in _multiplier_poles(M) if p <= n + 1}

    def S(k0: int) -> Fraction:
        return M(k0) * pure_part_eval(t, k0)

    total = Fraction(0)
    k0 = 0
    while k0 <= n:
        if k0 in poles or k0 + 1 in poles:
            total += term_eval(t, k0)
            k0 += 1
            continue
        j = k0 + 1
        while j + 1 <= n + 1 and j + 1 not in poles:
            j += 1
        total += S(j) - S(k0)
        k0 = j
    return total


def brute_sum(t: TermSpec, n: int) -> Fraction:
    """sum_{k=0}^{n} f(k) by direct evaluation; the oracle for definite_sum."""
    return sum((term_eval(t, k0) for k0 in range(n + 1)), Fraction(0))
