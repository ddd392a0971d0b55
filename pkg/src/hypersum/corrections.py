"""Correction constants c(d) making (k^d - c(d)) * pure(k) Gosper summable.

Three pure parts are covered:

* ``bell``:  1/k!,               c(d) = Bell number b(d)
* ``f``:     z^k / rf(a, k),     c(d) = d! [x^d] exp(-z - (a-1)x + z e^x)
* ``g``:     z^k * rf(a, k),     c(d) = d! [x^d] exp(1/z - a x - e^{-x}/z)

Each sequence is computed three independent ways: a linear recurrence,
a truncated exponential generating function, and triangular reduction of
the basis p_d(k) of summable multipliers.  Public values use the sign of
the summable term, k^d - values[d], so values[0] == 1 always.  The
recurrences and the reduction work internally with c(0) = -1 and basis
elements k^j + c(j), i.e. the negated constants.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from hypersum.exact import Poly
from hypersum.termlang import TermSpec

Scalar = Union[int, Fraction]


class Family(str, enum.Enum):
    BELL = "bell"
    F = "f"
    G = "g"


class ParameterError(ValueError):
    pass


def check_params(a: Scalar, z: Scalar) -> tuple[Fraction, Fraction]:
    a, z = Fraction(a), Fraction(z)
    if z == 0:
        raise ParameterError("z must be nonzero")
    if a <= 0 and a.denominator == 1:
        raise ParameterError(f"a = {a} is a nonpositive integer; rf(a, k) vanishes")
    return a, z


@dataclass(frozen=True)
class CorrectionSequence:
    family: Family
    a: Fraction
    z: Fraction
    values: tuple[Fraction, ...]

    def __getitem__(self, d: int) -> Fraction:
        return self.values[d]

    def __len__(self):
        return len(self.values)


# --------------------------------------------------------------------------
# truncated power series


class Series:
    """Power series truncated after x^order, stored by ordinary coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_egf(cls, values: Sequence[Scalar]) -> Series:
        """The series sum values[d] x^d / d!."""
        return cls([Fraction(v) / math.factorial(d) for d, v in enumerate(values)])

    @classmethod
    def exp_linear(cls, lam: Scalar, order: int) -> Series:
        """e^{lam x}."""
        lam = Fraction(lam)
        return cls([lam**d / math.factorial(d) for d in range(order + 1)])

    def egf(self) -> list[Fraction]:
        """EGF coefficients d! [x^d]."""
        return [c * math.factorial(d) for d, c in enumerate(self.coeffs)]

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Series({[str(c) for c in self.coeffs]})"

    def _match(self, other: Series) -> int:
        if not isinstance(other, Series):
            raise TypeError("series arithmetic needs two Series")
        return min(self.order, other.order)

    def __add__(self, other: Series) -> Series:
        n = self._match(other)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> Series:
        return Series([-c for c in self.coeffs])

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def scale(self, s: Scalar) -> Series:
        return Series([c * s for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = self._match(other)
        a, b = self.coeffs, other.coeffs
        return Series([sum((a[i] * b[d - i] for i in range(d + 1)), Fraction(0))
                       for d in range(n + 1)])

    __rmul__ = __mul__

    def inverse(self) -> Series:
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv = [1 / a[0]]
        for d in range(1, self.order + 1):
            s = sum((a[i] * inv[d - i] for i in range(1, d + 1)), Fraction(0))
            inv.append(-s / a[0])
        return Series(inv)

    def __pow__(self, n: int) -> Series:
        if not isinstance(n, int):
            raise TypeError("only integer powers of series are supported")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Series([1], self.order)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose_linear(self, lam: Scalar) -> Series:
        """The series evaluated at lam*x; lam = -1 gives x -> -x."""
        lam = Fraction(lam)
        return Series([c * lam**d for d, c in enumerate(self.coeffs)])

    def derivative(self) -> Series:
        return Series([d * c for d, c in enumerate(self.coeffs) if d] or [0])

    def exp(self) -> Series:
        """exp of a series with zero constant term, via E' = u' E."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term to stay rational")
        du = [(i + 1) * self.coeffs[i + 1] for i in range(self.order)]
        e = [Fraction(1)]
        for n in range(self.order):
            s = sum((du[i] * e[n - i] for i in range(n + 1)), Fraction(0))
            e.append(s / (n + 1))
        return Series(e)


def _expm1(lam: Scalar, order: int) -> Series:
    """e^{lam x} - 1."""
    s = Series.exp_linear(lam, order)
    return Series([0] + list(s.coeffs[1:]))


def egf_f(a: Scalar, z: Scalar, order: int) -> Series:
    """exp(-z - (a-1)x + z e^x) through x^order."""
    a, z = Fraction(a), Fraction(z)
    if z == 0:
        raise ParameterError("z must be nonzero")
    u = Series([0, 1 - a], order) + _expm1(1, order).scale(z)
    return u.exp()


def egf_g(a: Scalar, z: Scalar, order: int) -> Series:
    """exp(1/z - a x - e^{-x}/z) through x^order."""
    a, z = Fraction(a), Fraction(z)
    if z == 0:
        raise ParameterError("z must be nonzero")
    u = Series([0, -a], order) - _expm1(-1, order).scale(1 / z)
    return u.exp()


def bell_series(order: int) -> Series:
    """B(x) = e^{e^x - 1} built from the Bell recurrence values."""
    return Series.from_egf(bell_numbers(order).values)


# --------------------------------------------------------------------------
# recurrence route


def bell_numbers(dmax: int) -> CorrectionSequence:
    """b(0..dmax) from b(d+1) = sum_j C(d, j) b(j)."""
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    b = [1]
    for d in range(dmax):
        b.append(sum(math.comb(d, j) * b[j] for j in range(d + 1)))
    return CorrectionSequence(Family.BELL, Fraction(1), Fraction(1),
                              tuple(Fraction(v) for v in b))


def f_correction(a: Scalar, z: Scalar, dmax: int) -> CorrectionSequence:
    a, z = check_params(a, z)
    c = [Fraction(-1)]
    for d in range(dmax):
        s = sum((math.comb(d, j) * c[j] for j in range(d + 1)), Fraction(0))
        c.append((1 - a) * c[d] + z * s)
    return CorrectionSequence(Family.F, a, z, tuple(-v for v in c))


def g_correction(a: Scalar, z: Scalar, dmax: int) -> CorrectionSequence:
    a, z = check_params(a, z)
    c = [Fraction(-1)]
    for d in range(dmax):
        # C(d, -1) = 0, so j = 0 only contributes a*c(0)
        s = sum(((a * math.comb(d, j) + (math.comb(d, j - 1) if j else 0)) * c[j]
                 for j in range(d + 1)), Fraction(0))
        c.append((c[d] - z * s) / z)
    return CorrectionSequence(Family.G, a, z, tuple(-v for v in c))


def correction_sequence(family: Family | str, dmax: int, a: Scalar = 1,
                        z: Scalar = 1) -> CorrectionSequence:
    family = Family(family)
    if family is Family.BELL:
        return bell_numbers(dmax)
    if family is Family.F:
        return f_correction(a, z, dmax)
    return g_correction(a, z, dmax)


# --------------------------------------------------------------------------
# basis-reduction route


@dataclass(frozen=True)
class BasisFamily:
    """Generator of p_d(k), d >= 0, with p_d(k) * pure(k) Gosper summable."""

    family: Family
    a: Fraction = Fraction(1)
    z: Fraction = Fraction(1)

    def __post_init__(self):
        fam = Family(self.family)
        if fam is Family.BELL:
            a, z = Fraction(1), Fraction(1)
        else:
            a, z = check_params(self.a, self.z)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "z", z)

    def p(self, d: int) -> Poly:
        k = Poly.k()
        kp1 = Poly([1, 1])
        if self.family is Family.BELL:
            return k ** (d + 1) - kp1**d
        if self.family is Family.F:
            return k**d * (k + (self.a - 1)) - kp1**d * self.z
        return kp1**d * (k + self.a) * self.z - k**d

    def pure_term(self, poly: Poly) -> TermSpec:
        """poly(k) times the family's pure hypergeometric part."""
        if self.family is Family.BELL:
            return TermSpec(poly, factorial_exponent=-1)
        if self.family is Family.F:
            return TermSpec(poly, self.z, ((self.a, -1),))
        return TermSpec(poly, self.z, ((self.a, 1),))

    def corrections(self, dmax: int) -> CorrectionSequence:
        return correction_sequence(self.family, dmax, self.a, self.z)


def basis_reduction(fam: BasisFamily, dmax: int) -> CorrectionSequence:
    """Reduce p_0, p_1, ... to the basis k^d + c(d) and read off the constants."""
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    elems: list[Poly] = []  # elems[j-1] = k^j + c(j)
    consts = [Fraction(-1)]
    for d in range(dmax):
        p = fam.p(d)
        if p.degree != d + 1:
            raise ArithmeticError(f"p_{d} has degree {p.degree}, expected {d + 1}")
        p = p.monic()
        for j in range(d, 0, -1):
            cj = p.coeff(j)
            if cj:
                p = p - elems[j - 1] * cj
        if any(p.coeff(j) for j in range(1, d + 1)):
            raise ArithmeticError("reduction left a middle power behind")
        elems.append(p)
        consts.append(p.coeff(0))
    return CorrectionSequence(fam.family, fam.a, fam.z, tuple(-v for v in consts))


def summable_term(fam: BasisFamily, d: int, values: Sequence[Fraction] | None = None
                  ) -> TermSpec:
    """(k^d - c(d)) * pure(k) with c(d) the family's correction constant."""
    if values is None:
        values = fam.corrections(d).values
    return fam.pure_term(Poly.monomial(d) - values[d])


# --------------------------------------------------------------------------
# Bell-power convolution forms


def f_via_bell_power(a: Scalar, z: int, order: int) -> Series:
    """e^{(1-a)x} B(x)^z for integer z."""
    return Series.exp_linear(1 - Fraction(a), order) * bell_series(order) ** z


def g_via_bell_power(a: Scalar, z: int, order: int) -> Series:
    """e^{-ax} B(-x)^{-z} for integer z; equals egf_g(a, 1/z)."""
    return Series.exp_linear(-Fraction(a), order) * bell_series(order).compose_linear(-1) ** (-z)

