"""Exact rational scalars and dense univariate polynomials in ``k``.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable and
store their coefficients in ascending order, so ``Poly([1, 0, 2])`` is
``1 + 2k^2``.  The zero polynomial has no coefficients and degree
:data:`NEG_INF`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial: below every integer, absorbs +/- ints."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __repr__(self):
        return "-inf"


NEG_INF = _MinusInfinity()


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or ``"-p/q"`` exactly. Decimals are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def falling_factorial(n: Scalar, m: int) -> Fraction:
    """n (n-1) ... (n-m+1); the empty product for m = 0 is 1."""
    if m < 0:
        raise ValueError("falling factorial length must be nonnegative")
    out = Fraction(1)
    for i in range(m):
        out *= n - i
    return out


def rising_factorial(a: Scalar, m: int) -> Fraction:
    """a (a+1) ... (a+m-1)."""
    if m < 0:
        raise ValueError("rising factorial length must be nonnegative")
    out = Fraction(1)
    for i in range(m):
        out *= a + i
    return out


class Poly:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # constructors

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def k(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Poly:
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    # basic accessors

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "k") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_rational(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a.numerator}*{mono}"
                else:
                    body = f"({format_rational(a)})*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # ring operations

    @staticmethod
    def _lift(x) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out, base = Poly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(rem) - 1 < dq:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1 - dq, -1, -1):
            t = rem[i + dq] / lc
            quot[i] = t
            if t:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= t * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: Poly) -> bool:
        return not (other % self)

    # evaluation and substitution

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or another Poly."""
        if isinstance(x, Poly):
            out = Poly()
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift(self, j: Scalar) -> Poly:
        """Return p(k + j), expanded with binomial coefficients."""
        if j == 0 or len(self.coeffs) <= 1:
            return self
        j = Fraction(j)
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            # c * (k + j)^i
            for m in range(i + 1):
                out[m] += c * math.comb(i, m) * j ** (i - m)
        return Poly(out)

    def scale_var(self, lam: Scalar) -> Poly:
        """Return p(lam * k)."""
        return Poly(c * Fraction(lam) ** i for i, c in enumerate(self.coeffs))

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> Fraction:
        """Positive rational c with p / c a primitive integer polynomial."""
        if not self.coeffs:
            return Fraction(0)
        den = math.lcm(*(c.denominator for c in self.coeffs))
        num = math.gcd(*(c.numerator * (den // c.denominator) for c in self.coeffs))
        return Fraction(num, den)

    def integer_coeffs(self) -> list[int]:
        """Coefficients of the primitive integer polynomial p / content(p)."""
        if not self.coeffs:
            return []
        c = self.content()
        out = []
        for x in self.coeffs:
            y = x / c
            assert y.denominator == 1
            out.append(y.numerator)
        return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while q:
        p, q = q, (p % q).monic()
    return p.monic()


def _bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * piv - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p: Poly, q: Poly) -> list[list[Fraction]]:
    """Rows: deg q shifted copies of p, then deg p shifted copies of q.

    Coefficients run from the highest power down, so the matrix for
    (k, k - 1) is [[1, 0], [1, -1]].
    """
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(p: Poly, q: Poly) -> Fraction:
    """Resultant of p and q, defined as det(sylvester_matrix(p, q)).

    With this convention res(k, k - 1) = -1 and res(c, q) = c^deg(q) for a
    nonzero constant c.  The result vanishes iff p and q share a root.
    Denominators are cleared first and the integer determinant is taken
    with Bareiss elimination.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with the zero polynomial is undefined")
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return Fraction(1)
    dp = math.lcm(*(c.denominator for c in p.coeffs))
    dq = math.lcm(*(c.denominator for c in q.coeffs))
    P = [int(c * dp) for c in p.coeffs]
    Q = [int(c * dq) for c in q.coeffs]
    rows = sylvester_matrix(Poly(P), Poly(Q))
    det = _bareiss_det([[int(x) for x in r] for r in rows])
    # res(P, Q) = dp^n dq^m res(p, q)
    return Fraction(det, dp**n * dq**m)


def interpolate(points: Sequence[tuple[Scalar, Scalar]]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(xs)
    # Newton divided differences
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly()
    for i in range(n - 1, -1, -1):
        out = out * Poly([-xs[i], 1]) + coef[i]
    return out


def _iroot_ceil(t: int, n: int) -> int:
    """Smallest r >= 0 with r**n >= t."""
    if t <= 1:
        return t
    lo, hi = 1, 1 << (t.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n >= t:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(cs: Sequence[int]) -> int:
    """Integer Fujiwara bound on the moduli of the roots of sum cs[i] k^i.

    |root| <= 2 max_i |c_{n-i} / c_n|^{1/i}, with the constant-term entry
    halved.  Much tighter than the Cauchy bound when coefficients are huge.
    """
    n = len(cs) - 1
    lead = abs(cs[-1])
    best = 0
    for i in range(1, n + 1):
        a = abs(cs[n - i])
        if a == 0:
            continue
        den = lead * (2 if i == n else 1)
        best = max(best, _iroot_ceil(-(-a // den), i))
    return 2 * best


def nonneg_integer_roots(p: Poly) -> set[int]:
    """All nonnegative integer roots of p.

    p is made primitive over the integers and the root 0 split off as a
    power of k.  By the rational root theorem any other integer root
    divides the constant term, so the candidates are the divisors of the
    constant term up to the Fujiwara root bound.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every integer as a root")
    cs = p.integer_coeffs()
    roots = set()
    m = 0
    while cs[m] == 0:
        m += 1
    if m:
        roots.add(0)
    cs = cs[m:]
    if len(cs) == 1:
        return roots
    reduced = Poly(cs)
    const = cs[0]
    for r in range(1, root_bound(cs) + 1):
        if const % r == 0 and reduced(r) == 0:
            roots.add(r)
    return roots


def cauchy_bound(p: Poly) -> Fraction:
    """Every complex root has modulus below 1 + max |c_i / lc|."""
    if p.degree in (NEG_INF, 0):
        return Fraction(1)
    return 1 + max(abs(c / p.lc) for c in p.coeffs[:-1])
