"""Change-of-basis tables for sums of (k^d - b(d)) / k!.

With p_d(k) = k^{d+1} - (k+1)^d and e_j(k) = k^j - b(j) (statement sign),
the vector (p_0, p_1, ...) equals A (e_1, e_2, ...) where

    A[d][j] = 1 if d == j else -C(d-1, j)        (rows and columns from 1)

B = A^{-1} is built from its own recurrence

    B[j][j] = 1,    B[d+1][j] = sum_{j <= i <= d} C(d, i) B[i][j]

and gives the closed form

    sum_{k=0}^{n-1} (k^d - b(d)) / k! = -(sum_j B[d][j] n^j) / n!.

Column 1 of B is the Gould numbers 1, 1, 3, 9, 31, ...
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from hypersum.corrections import bell_numbers
from hypersum.exact import Poly, format_rational


@dataclass(frozen=True)
class LowerTriangularTable:
    """rows[i] holds the entries of row ``origin + i`` in columns origin..origin+i."""

    rows: tuple[tuple[Fraction, ...], ...]
    origin: int = 1

    @property
    def dmax(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        d, j = idx
        i, c = d - self.origin, j - self.origin
        if i < 0 or c < 0 or i >= len(self.rows):
            raise IndexError(f"entry ({d}, {j}) outside the table")
        return self.rows[i][c] if c <= i else Fraction(0)

    def row(self, d: int) -> list[Fraction]:
        return list(self.rows[d - self.origin])

    def column(self, j: int) -> list[Fraction]:
        c = j - self.origin
        return [r[c] for r in self.rows[c:]]

    def dense(self) -> list[list[Fraction]]:
        n = len(self.rows)
        return [list(r) + [Fraction(0)] * (n - len(r)) for r in self.rows]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.rows for v in r)

    def to_json(self) -> str:
        return json.dumps([[format_rational(v) for v in r] for r in self.rows])

    def to_text(self) -> str:
        cells = [[format_rational(v) for v in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def build_A(dmax: int) -> LowerTriangularTable:
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    rows = []
    for d in range(1, dmax + 1):
        rows.append(tuple(Fraction(1) if j == d else Fraction(-math.comb(d - 1, j))
                          for j in range(1, d + 1)))
    return LowerTriangularTable(tuple(rows))


def build_B(dmax: int) -> LowerTriangularTable:
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    # B[d][j] for 1 <= j <= d <= dmax, dict-of-rows with 1-based keys
    B: dict[int, dict[int, int]] = {d: {d: 1} for d in range(1, dmax + 1)}
    for j in range(1, dmax + 1):
        for d in range(j, dmax):
            B[d + 1][j] = sum(math.comb(d, i) * B[i][j] for i in range(j, d + 1))
    table = LowerTriangularTable(tuple(
        tuple(Fraction(B[d][j]) for j in range(1, d + 1)) for d in range(1, dmax + 1)))
    if not is_identity(matmul(build_A(dmax), table)):
        raise ArithmeticError("B is not the inverse of A")
    return table


def matmul(X: LowerTriangularTable, Y: LowerTriangularTable) -> list[list[Fraction]]:
    x, y = X.dense(), Y.dense()
    n = len(x)
    return [[sum((x[i][m] * y[m][j] for m in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)]


def is_identity(m: list[list[Fraction]]) -> bool:
    return all(v == (1 if i == j else 0) for i, r in enumerate(m) for j, v in enumerate(r))


def gould_numbers(dmax: int) -> list[Fraction]:
    """First column of B: 1, 1, 3, 9, 31, ..."""
    return build_B(dmax).column(1)


def a121207_table(dmax: int) -> LowerTriangularTable:
    """B with both indices starting at 0; column m is the table's m-th diagonal."""
    B = build_B(dmax)
    return LowerTriangularTable(B.rows, origin=0)


def a121207_diagonal(dmax: int, m: int) -> list[Fraction]:
    return a121207_table(dmax).column(m)


def closed_form_power_sum(d: int, B: LowerTriangularTable | None = None) -> Poly:
    """P_d(n) with sum_{k=0}^{n-1} (k^d - b(d)) / k! = -P_d(n) / n!."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if B is None or B.dmax < d:
        B = build_B(d)
    return Poly([0] + B.row(d))


def verify_bell_identity(d: int, n: int) -> bool:
    """b(d) * sum_k n!/k! == sum_k k^d n!/k! + P_d(n), sums over 0 <= k < n."""
    if n < 1 or d < 0:
        raise ValueError("needs n >= 1 and d >= 0")
    b = bell_numbers(d).values[d]
    falls = [math.factorial(n) // math.factorial(k) for k in range(n)]
    lhs = b * sum(falls)
    tail = closed_form_power_sum(d)(n) if d >= 1 else 0
    rhs = sum(k**d * f for k, f in enumerate(falls)) + tail
    return lhs == rhs
