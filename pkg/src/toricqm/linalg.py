"""Exact rational matrix helpers (thin wrappers over sympy)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

Matrix = list[list[Fraction]]


def _to_fraction(x) -> Fraction:
    x = sympy.nsimplify(x) if not isinstance(x, sympy.Rational) else x
    return Fraction(int(x.p), int(x.q))


def _sym(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction)
                          else sympy.Integer(v) for v in row] for row in rows])


def det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _to_fraction(_sym(rows).det())


def inverse(rows: Sequence[Sequence]) -> Matrix:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    m = _sym(rows)
    if m.det() == 0:
        raise ValueError("matrix is singular")
    inv = m.inv()
    return [[_to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return _sym(rows).rank()


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``rows @ x == rhs`` for square, non-singular ``rows``."""
    inv = inverse(rows)
    return [sum((inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0)) for i in range(len(inv))]
