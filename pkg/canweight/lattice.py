"""Exact integer and rational linear algebra on small dense matrices.

Vectors are plain tuples of ``int`` (or ``Fraction`` where noted); matrices
are sequences of rows, handed to sympy for elimination and converted back.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

import sympy

from .exceptions import DimensionMismatchError, DomainError

IntVector = tuple[int, ...]


def dot(u: Sequence[int | Fraction], v: Sequence[int | Fraction]) -> int | Fraction:
    """Return the standard pairing of two vectors of equal length."""
    if len(u) != len(v):
        raise DimensionMismatchError(len(u), len(v))
    return sum(a * b for a, b in zip(u, v))


def vector_gcd(v: Sequence[int]) -> int:
    """Return the gcd of the absolute values of the entries (0 for the zero vector)."""
    return math.gcd(*v) if v else 0


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries.

    Raises:
        DomainError: If ``v`` is the zero vector.
    """
    g = vector_gcd(v)
    if g == 0:
        raise DomainError("The zero vector has no primitive representative.")
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence[Fraction | int]) -> IntVector:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    common = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return primitive(tuple(int(Fraction(x) * common) for x in v))


def _exact(x: int | Fraction) -> sympy.Rational:
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.Integer(x)


def to_matrix(rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> sympy.Matrix:
    """sympy matrix with exact Integer/Rational entries."""
    entries = [[_exact(x) for x in row] for row in rows]
    if not entries:
        return sympy.zeros(0, ncols or 0)
    return sympy.Matrix(entries)


def to_fraction(x: sympy.Rational) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix."""
    if not rows:
        return 0
    return to_matrix(rows).rank()


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Integer basis (primitive vectors) of {x : A x = 0}."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    return [clear_denominators([to_fraction(x) for x in v]) for v in to_matrix(rows).nullspace()]


def inverse(matrix: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square matrix.

    Raises:
        DomainError: If the matrix is singular.
    """
    m = to_matrix(matrix)
    if m.det() == 0:
        raise DomainError("Matrix is singular.")
    inv = m.inv()
    return [[to_fraction(x) for x in inv.row(i)] for i in range(inv.rows)]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    if not matrix:
        return 1
    return int(to_matrix(matrix).det(method="bareiss"))
