"""Exact determinants and linear solves over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def bareiss_det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rational rows are first scaled to integers by the lcm of their
    denominators; the scale is divided back out at the end.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    scale = 1
    a: list[list[int]] = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        lcm = math.lcm(*(x.denominator for x in fr))
        scale *= lcm
        a.append([x.numerator * (lcm // x.denominator) for x in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def laplace_det(rows: Sequence[Sequence]) -> Fraction:
    """Cofactor expansion along the first row; only for small matrices."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, x in enumerate(rows[0]):
        if x:
            minor = [list(r[:j]) + list(r[j + 1:]) for r in rows[1:]]
            total += (-1) ** j * Fraction(x) * laplace_det(minor)
    return total


class InconsistentSystem(Exception):
    def __init__(self, row: int):
        super().__init__(f"equation {row} contradicts the earlier ones")
        self.row = row


class UnderdeterminedSystem(ValueError):
    pass


def solve_incremental(equations: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve A x = b one equation at a time, keeping the system fully reduced.

    Raises InconsistentSystem carrying the index of the first equation
    that cannot be satisfied, or UnderdeterminedSystem if the equations do
    not pin down every unknown.
    """
    if not equations:
        raise UnderdeterminedSystem("no equations")
    nvars = len(equations[0])
    pivots: dict[int, list[Fraction]] = {}
    for idx, (eq, b) in enumerate(zip(equations, rhs)):
        row = [Fraction(x) for x in eq] + [Fraction(b)]
        for col, prow in pivots.items():
            if row[col]:
                f = row[col]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((j for j in range(nvars) if row[j]), None)
        if lead is None:
            if row[nvars]:
                raise InconsistentSystem(idx)
            continue
        inv = 1 / row[lead]
        row = [x * inv for x in row]
        for col, prow in pivots.items():
            if prow[lead]:
                f = prow[lead]
                pivots[col] = [x - f * y for x, y in zip(prow, row)]
        pivots[lead] = row
    if len(pivots) < nvars:
        raise UnderdeterminedSystem(
            f"only {len(pivots)} of {nvars} unknowns are determined by {len(equations)} equations"
        )
    return [pivots[j][nvars] for j in range(nvars)]


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r
