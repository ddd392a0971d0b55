"""Hypergeometric term expressions.

A term is one polynomial in ``k`` times a product of pure hypergeometric
factors::

    poly(k) * z^k * rf(a_1, k)^e_1 * ... * (k!)^e

The accepted grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom ("^" unary)?
    atom    := INTEGER | "k" | "(" expr ")" | call
    call    := "fact" "(" expr ")" | "rf" "(" expr "," expr ")"
             | "pow" "(" expr "," expr ")"

``fact(k)`` is k!, ``rf(c, k)`` the rising factorial c(c+1)...(c+k-1) and
``pow(z, k)`` is z^k.  Exponents after ``^`` must be integer constants.
Rational literals are written as quotients, e.g. ``rf(1/2, k)``.
Sums are only allowed between operands sharing the same pure part, so
``k/fact(k) - 1/fact(k)`` is fine but ``1 + 1/fact(k)`` is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from hypersum.exact import Poly, format_rational, poly_gcd, rising_factorial


class TermError(ValueError):
    """Base class for rejected term expressions; ``offset`` is a 0-based byte offset."""

    kind = "error"

    def __init__(self, message: str, offset: int, source: str = ""):
        self.message = message
        self.offset = offset
        self.source = source
        super().__init__(f"{self.kind}: {message} at offset {offset}")

    def diagnostic(self) -> str:
        """The error message with the source line and a caret under the offset."""
        if not self.source:
            return str(self)
        return f"{self}\n  {self.source}\n  {' ' * self.offset}^"


class TermSyntaxError(TermError):
    kind = "syntax error"


class TermSemanticError(TermError):
    kind = "semantic error"


# --------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """num(k) / den(k) in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly([1])):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if not g.is_const():
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    @classmethod
    def lift(cls, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        return cls(Poly._lift(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, Poly, int, Fraction)):
            other = RationalFunction.lift(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other))

    def __rsub__(self, other):
        return RationalFunction.lift(other) - self

    def __mul__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at k = {x}")
        return self.num(x) / d

    def shift(self, j) -> RationalFunction:
        return RationalFunction(self.num.shift(j), self.den.shift(j))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# --------------------------------------------------------------------------
# term specs


@dataclass(frozen=True)
class TermSpec:
    polynomial_part: Poly
    geometric_base: Fraction = Fraction(1)
    rising_factors: tuple[tuple[Fraction, int], ...] = ()
    factorial_exponent: int = 0

    def __post_init__(self):
        z = Fraction(self.geometric_base)
        if z == 0:
            raise ValueError("geometric base must be nonzero")
        rising: dict[Fraction, int] = {}
        fact = self.factorial_exponent
        for base, e in self.rising_factors:
            base = Fraction(base)
            if base == 1:
                fact += e
            else:
                rising[base] = rising.get(base, 0) + e
        for base, e in rising.items():
            if e < 0 and base <= 0 and base.denominator == 1:
                raise ValueError(f"rf({format_rational(base)}, k) vanishes for k > {-base}; "
                                 "it cannot appear in a denominator")
        norm = tuple(sorted((b, e) for b, e in rising.items() if e != 0))
        if self.polynomial_part.is_zero():
            # the zero term has no meaningful pure part
            z, norm, fact = Fraction(1), (), 0
        object.__setattr__(self, "geometric_base", z)
        object.__setattr__(self, "rising_factors", norm)
        object.__setattr__(self, "factorial_exponent", fact)

    def is_zero(self) -> bool:
        return self.polynomial_part.is_zero()

    def with_polynomial(self, p: Poly) -> TermSpec:
        return TermSpec(p, self.geometric_base, self.rising_factors, self.factorial_exponent)

    def __str__(self):
        return pretty_print(self)


def pretty_print(t: TermSpec) -> str:
    """Render a TermSpec in the input grammar; parse_term inverts this."""
    p = t.polynomial_part
    if p.is_zero():
        return "0"
    num: list[str] = []
    den: list[str] = []
    if p != 1:
        num.append(f"({p})")
    if t.geometric_base != 1:
        num.append(f"pow({format_rational(t.geometric_base)}, k)")
    for base, e in t.rising_factors:
        f = f"rf({format_rational(base)}, k)"
        target = num if e > 0 else den
        target.append(f if abs(e) == 1 else f"{f}^{abs(e)}")
    if t.factorial_exponent:
        e = t.factorial_exponent
        target = num if e > 0 else den
        target.append("fact(k)" if abs(e) == 1 else f"fact(k)^{abs(e)}")
    out = "*".join(num) if num else "1"
    if den:
        out += "/" + (den[0] if len(den) == 1 else "(" + "*".join(den) + ")")
    return out


def term_ratio(t: TermSpec) -> RationalFunction:
    """f(k+1) / f(k) as a reduced rational function."""
    p = t.polynomial_part
    if p.is_zero():
        raise ValueError("the term ratio of the zero term is undefined")
    num = p.shift(1) * t.geometric_base
    den = p
    for base, e in t.rising_factors:
        lin = Poly([base, 1])
        if e > 0:
            num = num * lin**e
        else:
            den = den * lin**(-e)
    kp1 = Poly([1, 1])
    if t.factorial_exponent > 0:
        num = num * kp1**t.factorial_exponent
    elif t.factorial_exponent < 0:
        den = den * kp1**(-t.factorial_exponent)
    return RationalFunction(num, den)


def pure_ratio(t: TermSpec) -> RationalFunction:
    """pure(k+1) / pure(k), the ratio without the polynomial part."""
    return term_ratio(t.with_polynomial(Poly([1])))


def pure_part_eval(t: TermSpec, k0: int) -> Fraction:
    """Value at k0 of the term with its polynomial part replaced by 1."""
    if k0 < 0:
        raise ValueError("terms are evaluated at nonnegative integers only")
    out = Fraction(t.geometric_base) ** k0
    for base, e in t.rising_factors:
        out *= rising_factorial(base, k0) ** e
    if t.factorial_exponent:
        out *= Fraction(math.factorial(k0)) ** t.factorial_exponent
    return out


def term_eval(t: TermSpec, k0: int) -> Fraction:
    p = t.polynomial_part(k0)
    if p == 0:
        return Fraction(0)
    return p * pure_part_eval(t, k0)


# --------------------------------------------------------------------------
# tokenizer

_PUNCT = "+-*/^(),"
_BUILTINS = {"fact": 1, "rf": 2, "pow": 2}


@dataclass
class _Token:
    kind: str  # "int", "name", a punctuation char, or "eof"
    text: str
    offset: int


def tokenize(src: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == ".":
                raise TermSyntaxError("decimal literals are not exact; write a quotient", j, src)
            toks.append(_Token("int", src[i:j], i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("name", src[i:j], i))
            i = j
        elif c in _PUNCT:
            toks.append(_Token(c, c, i))
            i += 1
        else:
            raise TermSyntaxError(f"unexpected character {c!r}", i, src)
    toks.append(_Token("eof", "", n))
    return toks


# --------------------------------------------------------------------------
# semantic values: a polynomial times a pure hypergeometric part


@dataclass
class _Value:
    poly: Poly
    z: Fraction = Fraction(1)
    rising: dict = field(default_factory=dict)
    fact: int = 0

    def pure_key(self):
        return (self.z, tuple(sorted((b, e) for b, e in self.rising.items() if e)), self.fact)

    def is_plain(self) -> bool:
        return self.pure_key() == (Fraction(1), (), 0)

    def constant(self) -> Optional[Fraction]:
        if self.is_plain() and self.poly.is_const():
            return self.poly.coeff(0)
        return None


def _combine(x: _Value, y: _Value, sign: int) -> dict:
    out = dict(x.rising)
    for b, e in y.rising.items():
        out[b] = out.get(b, 0) + sign * e
    return {b: e for b, e in out.items() if e}


_BINARY_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.pos = 0
        self.rf_offsets: dict[Fraction, int] = {}

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise TermSyntaxError(f"expected {kind!r}, found {found}", tok.offset, self.src)
        return tok

    def semantic(self, msg: str, offset: int):
        return TermSemanticError(msg, offset, self.src)

    # precedence climbing over + - * /
    def parse_expr(self, min_prec: int = 1) -> tuple[_Value, int]:
        lhs, start = self.parse_unary()
        while True:
            tok = self.peek()
            prec = _BINARY_PREC.get(tok.kind)
            if prec is None or prec < min_prec:
                return lhs, start
            self.next()
            rhs, rstart = self.parse_expr(prec + 1)
            lhs = self.apply(tok, lhs, rhs, rstart)

    def apply(self, op: _Token, x: _Value, y: _Value, yoff: int) -> _Value:
        if op.kind in "+-":
            if op.kind == "-":
                y = _Value(-y.poly, y.z, dict(y.rising), y.fact)
            if x.poly.is_zero():
                return y
            if y.poly.is_zero():
                return x
            if x.pure_key() != y.pure_key():
                raise self.semantic("cannot add terms with different hypergeometric parts",
                                    op.offset)
            return _Value(x.poly + y.poly, x.z, dict(x.rising), x.fact)
        if op.kind == "*":
            return _Value(x.poly * y.poly, x.z * y.z, _combine(x, y, 1), x.fact + y.fact)
        # division
        if not y.poly.is_const():
            raise self.semantic("division by a non-constant polynomial", yoff)
        if y.poly.is_zero():
            raise self.semantic("division by zero", yoff)
        return _Value(x.poly * (1 / y.poly.coeff(0)), x.z / y.z, _combine(x, y, -1),
                      x.fact - y.fact)

    def parse_unary(self) -> tuple[_Value, int]:
        tok = self.peek()
        if tok.kind in "+-":
            self.next()
            v, _ = self.parse_unary()
            if tok.kind == "-":
                v = _Value(-v.poly, v.z, v.rising, v.fact)
            return v, tok.offset
        return self.parse_power()

    def parse_power(self) -> tuple[_Value, int]:
        base, start = self.parse_atom()
        if self.peek().kind != "^":
            return base, start
        self.next()
        exp, eoff = self.parse_unary()
        c = exp.constant()
        if c is None:
            if exp.is_plain():
                raise self.semantic("k inside an exponent; use pow(z, k) for z^k", eoff)
            raise self.semantic("exponent must be an integer constant", eoff)
        if c.denominator != 1:
            raise self.semantic("exponent must be an integer", eoff)
        n = c.numerator
        if n < 0:
            if not base.poly.is_const():
                raise self.semantic("negative power of a non-constant polynomial", eoff)
            if base.poly.is_zero():
                raise self.semantic("division by zero", start)
            poly = Poly([base.poly.coeff(0) ** n])
        else:
            poly = base.poly ** n
        return _Value(poly, base.z ** n, {b: e * n for b, e in base.rising.items()},
                      base.fact * n), start

    def parse_atom(self) -> tuple[_Value, int]:
        tok = self.next()
        if tok.kind == "int":
            return _Value(Poly([int(tok.text)])), tok.offset
        if tok.kind == "(":
            v, _ = self.parse_expr()
            self.expect(")")
            return v, tok.offset
        if tok.kind == "name":
            if tok.text == "k":
                return _Value(Poly.k()), tok.offset
            if tok.text in _BUILTINS:
                return self.parse_call(tok), tok.offset
            raise self.semantic(f"unknown name {tok.text!r}; the only variable is k", tok.offset)
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise TermSyntaxError(f"unexpected {found}", tok.offset, self.src)

    def parse_call(self, name: _Token) -> _Value:
        self.expect("(")
        args: list[tuple[_Value, int]] = [self.parse_expr()]
        while self.peek().kind == ",":
            self.next()
            args.append(self.parse_expr())
        close = self.expect(")")
        arity = _BUILTINS[name.text]
        if len(args) != arity:
            raise self.semantic(f"{name.text} takes {arity} argument(s), got {len(args)}",
                                close.offset)
        var, voff = args[-1]
        if not (var.is_plain() and var.poly == Poly.k()):
            raise self.semantic(f"the last argument of {name.text} must be k", voff)
        if name.text == "fact":
            return _Value(Poly([1]), fact=1)
        cval, coff = args[0]
        c = cval.constant()
        if c is None:
            raise self.semantic(f"the first argument of {name.text} must be a constant", coff)
        if name.text == "pow":
            if c == 0:
                raise self.semantic("pow(0, k) is not a hypergeometric term", coff)
            return _Value(Poly([1]), z=c)
        self.rf_offsets.setdefault(c, name.offset)
        if c == 1:
            return _Value(Poly([1]), fact=1)
        return _Value(Poly([1]), rising={c: 1})

    def parse(self) -> TermSpec:
        v, _ = self.parse_expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise TermSyntaxError(f"unexpected {tok.text!r}", tok.offset, self.src)
        for b, e in v.rising.items():
            if e < 0 and b <= 0 and b.denominator == 1 and not v.poly.is_zero():
                raise self.semantic(
                    f"rf({format_rational(b)}, k) has a zero factor and cannot divide",
                    self.rf_offsets.get(b, 0))
        return TermSpec(v.poly, v.z, tuple(v.rising.items()), v.fact)


def parse_term(src: str) -> TermSpec:
    """Parse a term expression into a normalized TermSpec."""
    return _Parser(src).parse()
