"""Small exact matrix helpers.

Matrices are tuples of row tuples of ``Fraction``.  A matrix with zero
rows still needs a column count, so shapes are passed explicitly where
they cannot be read off the data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


class NotSquare(ValueError):
    pass


class NegativeEntry(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int | Fraction | str]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """``a @ b``; ``b`` is applied first when acting on column vectors."""
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * cols
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matpow(a: Matrix, k: int) -> Matrix:
    check_square(a)
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def scale(a: Matrix, c: int | Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def inf_norm(a: Matrix) -> Fraction:
    """Operator norm induced by the max norm: the largest absolute row sum."""
    return max((sum((abs(x) for x in row), Fraction(0)) for row in a), default=Fraction(0))


def check_square(a: Matrix) -> int:
    n = len(a)
    if any(len(row) != n for row in a):
        raise NotSquare(f"matrix of shape {len(a)}x{len(a[0]) if a else 0} is not square")
    return n


def check_nonnegative(a: Matrix) -> None:
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x < 0:
                raise NegativeEntry(f"entry ({i}, {j}) = {x} is negative")


def format_matrix(a: Matrix) -> str:
    """Bracket notation ``[a b ; c d]`` used in files and DOT labels."""
    return "[ " + " ; ".join(" ".join(str(x) for x in row) for row in a) + " ]"


def format_matrix_compact(a: Matrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in a) + "]"
