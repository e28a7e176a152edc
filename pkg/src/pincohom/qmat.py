"""Exact rational matrices stored as tuples of tuples of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Strings must be in lowest terms with a positive denominator.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational entry: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"rational entries must be strings 'p/q', got {value!r}")
    text = value.strip()
    if "/" in text:
        num, den = text.split("/")
        p, q = int(num), int(den)
        if q <= 0:
            raise ValueError(f"denominator must be positive: {value!r}")
        frac = Fraction(p, q)
        if frac.numerator != p or frac.denominator != q:
            raise ValueError(f"rational not in lowest terms: {value!r}")
        return frac
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    mat = tuple(tuple(parse_rational(x) for x in row) for row in rows)
    if not mat or any(len(row) != len(mat) for row in mat):
        raise ValueError("matrix must be square and nonempty")
    return mat


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def det(a: Matrix) -> Fraction:
    n = len(a)
    work = [list(row) for row in a]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        piv = work[col][col]
        result *= piv
        for r in range(col + 1, n):
            factor = work[r][col] / piv
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return result


def is_orthogonal(a: Matrix) -> bool:
    return matmul(transpose(a), a) == identity(len(a))


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b)
    zero = Fraction(0)
    top = tuple(tuple(row) + (zero,) * m for row in a)
    bottom = tuple((zero,) * n + tuple(row) for row in b)
    return top + bottom


def signed_permutation(perm: Sequence[int], signs: Sequence[int]) -> Matrix:
    """Matrix sending e_j to signs[j] * e_{perm[j]} (0-based)."""
    n = len(perm)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j, (i, s) in enumerate(zip(perm, signs)):
        rows[i][j] = Fraction(s)
    return tuple(tuple(row) for row in rows)


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def to_strings(a: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in a]
