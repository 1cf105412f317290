"""Exact linear algebra over Q(q, x, y) and over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import ONE, ZERO, LaurentPoly, Scalar, _poly_cofactors

__all__ = ["nullspace", "solve", "rank", "rank_rational", "bareiss_det"]


def _rref(rows: list) -> tuple:
    """Reduced row echelon form over Scalars; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix: Sequence[Sequence[Scalar]], ncols: int) -> list:
    """Basis of {v : matrix . v = 0}; each vector has a 1 at its free column."""
    if not matrix:
        return [[ONE if k == c else ZERO for k in range(ncols)] for c in range(ncols)]
    rows, pivots = _rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]):
    """Solve sum_k c_k * columns[k] = target exactly.

    Returns the coefficient list, or None when the system is inconsistent.
    Raises ValueError if the solution is not unique.
    """
    nrows = len(target)
    aug = [[col[r] for col in columns] + [target[r]] for r in range(nrows)]
    rows, pivots = _rref(aug)
    k = len(columns)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("solution is not unique")
    sol = [ZERO] * k
    for row, pc in zip(rows, pivots):
        sol[pc] = row[k]
    return sol


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the rational function field."""
    if not rows:
        return 0
    return len(_rref(rows)[1])


def rank_rational(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((k for k in range(rk, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        for k in range(rk + 1, len(m)):
            if m[k][c] != 0:
                f = m[k][c] / m[rk][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == b or b.is_constant:
        return a
    if a.is_constant:
        return b
    _, b_over_g = _poly_cofactors(a, b)
    return a * b_over_g


def bareiss_det(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by fraction-free (Bareiss) elimination.

    Each row is first cleared to a common polynomial denominator, so the
    elimination runs in the Laurent polynomial ring with exact divisions only.
    """
    size = len(matrix)
    if size == 0:
        return ONE
    row_dens = []
    polys = []
    for row in matrix:
        if len(row) != size:
            raise ValueError("matrix is not square")
        d = LaurentPoly.constant(1)
        for v in row:
            d = _lcm(d, v.den)
        row_dens.append(d)
        polys.append([v.num * d.exact_div(v.den) for v in row])
    sign = 1
    prev = LaurentPoly.constant(1)
    M = polys
    for k in range(size - 1):
        if M[k][k].is_zero:
            p = next((r for r in range(k + 1, size) if not M[r][k].is_zero), None)
            if p is None:
                return ZERO
            M[k], M[p] = M[p], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (pivot * M[i][j] - M[i][k] * M[k][j]).exact_div(prev)
        prev = pivot
    det = Scalar(M[-1][-1] * sign)
    den = LaurentPoly.constant(1)
    for d in row_dens:
        den = den * d
    return det / Scalar(den)
