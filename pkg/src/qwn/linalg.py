"""Exact null spaces over Q(q, t) by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from math import lcm

from .coeffs import ONE, ZERO, QTRat, _CTX

__all__ = ["nullspace"]


def _to_poly_rows(rows):
    d = 2
    for row in rows:
        for x in row:
            d = lcm(d, x.d)
    out = []
    for row in rows:
        lifted = [x._lift(d) for x in row]
        den = _CTX.constant(1)
        for _, b in lifted:
            if not b.is_one():
                den = den * (b / den.gcd(b))
        out.append([a * (den / b) if not a.is_zero() else _CTX.constant(0) for a, b in lifted])
    return out, d


def _bareiss(mat, ncols):
    """Row echelon form in place; returns the pivot columns."""
    nrows = len(mat)
    prev = _CTX.constant(1)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not mat[i][c].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                mat[i][j] = (mat[r][c] * mat[i][j] - mat[i][c] * mat[r][j]) / prev
            mat[i][c] = _CTX.constant(0)
        prev = mat[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : rows . x = 0}``; each vector is a list of QTRat."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    mat, d = _to_poly_rows(rows)
    pivots = _bareiss(mat, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            acc = ZERO
            for j in range(c + 1, ncols):
                if not mat[k][j].is_zero() and not x[j].is_zero():
                    acc = acc + QTRat._make(mat[k][j], _CTX.constant(1), d) * x[j]
            x[c] = -acc / QTRat._make(mat[k][c], _CTX.constant(1), d)
        basis.append(x)
    return basis
