#!/usr/bin/env python3
"""Exact rational matrix primitives: Bareiss determinants, Sylvester tests, bordered updates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import List, Optional, Sequence, Tuple

from graphs import Graph

IntMatrix = List[List[int]]


class LinalgError(ValueError):
    """Raised on malformed matrices or out-of-range arguments."""


@dataclass(frozen=True)
class RatMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise LinalgError(f"Fila {i} tiene {len(row)} entradas; se esperaban {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise LinalgError(f"Matriz no simétrica en ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "RatMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))  # type: ignore[arg-type]

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]

    def to_integer(self) -> Tuple[IntMatrix, int]:
        """Return (L*M, L) with L the common denominator of all entries."""
        scale = 1
        for row in self.rows:
            for x in row:
                scale = lcm(scale, x.denominator)
        return [[int(x * scale) for x in row] for row in self.rows], scale


def shifted_adjacency(
    graph: Graph,
    shift: Fraction,
    diag_adjust: Optional[Tuple[int, Fraction]] = None,
) -> RatMatrix:
    """A_G + shift*I, minus diag_adjust[1] at (v, v) when given."""
    n = graph.n
    shift = Fraction(shift)
    rows = [
        [shift if i == j else Fraction((graph.adj[i] >> j) & 1) for j in range(n)]
        for i in range(n)
    ]
    if diag_adjust is not None:
        vertex, amount = diag_adjust
        if not 0 <= vertex < n:
            raise LinalgError(f"Vértice {vertex} fuera de rango para orden {n}")
        rows[vertex][vertex] -= Fraction(amount)
    return RatMatrix(tuple(tuple(row) for row in rows))


def scaled_adjacency(graph: Graph, shift: Fraction) -> IntMatrix:
    """Integer matrix q*A_G + p*I for shift = p/q (same signature as A_G + shift*I)."""
    shift = Fraction(shift)
    p, q = shift.numerator, shift.denominator
    n = graph.n
    return [[p if i == j else q * ((graph.adj[i] >> j) & 1) for j in range(n)] for i in range(n)]


# Integer kernels -----------------------------------------------------------
def bareiss_det(matrix: IntMatrix) -> int:
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def leading_minors_positive(matrix: IntMatrix) -> bool:
    """Sylvester's criterion; the Bareiss pivots are the leading principal minors."""
    m = [row[:] for row in matrix]
    n = len(m)
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        if pivot <= 0:
            return False
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
        prev = pivot
    return True


def adjugate_positive_definite(matrix: IntMatrix) -> Tuple[int, IntMatrix]:
    """(det M, adj M) by fraction-free Gauss-Jordan; M must have positive leading minors."""
    n = len(matrix)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    width = 2 * n
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            raise LinalgError("La matriz no es definida positiva; no hay adjunta sin pivoteo")
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            factor = row_i[k]
            for j in range(width):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
        prev = pivot
    det = prev if n else 1
    return det, [row[n:] for row in a]


def bordered_det(p: int, q: int, det: int, adj: IntMatrix, border: Sequence[int]) -> int:
    """det of [[M, q*1_S], [q*1_S^T, p]] given det M and adj M; border lists S."""
    total = 0
    for i in border:
        row = adj[i]
        for j in border:
            total += row[j]
    return p * det - q * q * total


# Rational front ends -------------------------------------------------------
def det(matrix: RatMatrix) -> Fraction:
    ints, scale = matrix.to_integer()
    return Fraction(bareiss_det(ints), scale ** matrix.n)


def is_positive_definite(matrix: RatMatrix) -> bool:
    ints, _ = matrix.to_integer()
    return leading_minors_positive(ints)


def is_positive_semidefinite(matrix: RatMatrix) -> bool:
    """Symmetric elimination with diagonal pivoting; exact."""
    m = [list(row) for row in matrix.rows]
    active = list(range(matrix.n))
    while active:
        diag = [(m[i][i], i) for i in active]
        if any(value < 0 for value, _ in diag):
            return False
        value, k = max(diag)
        if value == 0:
            return all(m[i][j] == 0 for i in active for j in active)
        active.remove(k)
        row_k = m[k]
        for i in active:
            factor = m[i][k] / value
            if factor:
                row_i = m[i]
                for j in active:
                    row_i[j] -= factor * row_k[j]
    return True


def sqrt_lower_bound(q: Fraction, iters: int) -> Fraction:
    """Rational r with r*r <= q from Newton iterates above sqrt(q); nondecreasing in iters."""
    q = Fraction(q)
    if q < 0:
        raise LinalgError(f"No existe raíz real de {q}")
    if q == 0:
        return Fraction(0)
    num_root, den_root = isqrt(q.numerator), isqrt(q.denominator)
    if num_root * num_root == q.numerator and den_root * den_root == q.denominator:
        return Fraction(num_root, den_root)
    upper = Fraction(num_root + 1, den_root)
    for step in range(iters):
        grid = 1 << (16 * (step + 2))
        newton = (upper + q / upper) / 2
        rounded = Fraction(-((-newton.numerator * grid) // newton.denominator), grid)
        upper = min(upper, rounded)
    return q / upper


def sqrt_upper_bound(q: Fraction, iters: int) -> Fraction:
    lower = sqrt_lower_bound(q, iters)
    if lower == 0:
        raise LinalgError("Cota inferior nula; no hay cota superior racional")
    return Fraction(q) / lower


__all__ = [
    "LinalgError",
    "RatMatrix",
    "adjugate_positive_definite",
    "bareiss_det",
    "bordered_det",
    "det",
    "is_positive_definite",
    "is_positive_semidefinite",
    "leading_minors_positive",
    "scaled_adjacency",
    "shifted_adjacency",
    "sqrt_lower_bound",
    "sqrt_upper_bound",
]
