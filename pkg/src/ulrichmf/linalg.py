"""Field-generic exact dense linear algebra.

Matrices at this level are lists of lists of field scalars.  Prime-field
input is routed through the numpy/numba kernels in :mod:`ulrichmf.modp`;
rational input is eliminated directly on Fractions.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import modp
from .fields import Field, PrimeField


def _to_array(rows, ncols):
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _rref_fraction(rows, ncols):
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(field: Field, rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if isinstance(field, PrimeField):
        m, piv = modp.rref(_to_array(rows, ncols), field.p)
        return [[int(x) for x in row] for row in m], [int(c) for c in piv]
    return _rref_fraction(rows, ncols)


def rank(field: Field, rows, ncols=None) -> int:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    if isinstance(field, PrimeField):
        return modp.rank(_to_array(rows, ncols), field.p)
    return len(_rref_fraction(rows, ncols)[1])


def nullspace(field: Field, rows, ncols):
    """Canonical basis of the right kernel, as a list of vectors."""
    if ncols == 0:
        return []
    if not rows:
        eye = []
        for c in range(ncols):
            v = [field.zero] * ncols
            v[c] = field.one
            eye.append(v)
        return eye
    if isinstance(field, PrimeField):
        basis = modp.nullspace(_to_array(rows, ncols), field.p)
        return [[int(x) for x in row] for row in basis]
    r, piv = _rref_fraction(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -r[i][c]
        basis.append(v)
    return basis


def solve(field: Field, rows, rhs, ncols=None):
    """One solution x of A x = b (b a vector), or None if inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [field.zero] * ncols
    if isinstance(field, PrimeField):
        x = modp.solve(_to_array(rows, ncols), np.array(rhs, dtype=np.int64), field.p)
        return None if x is None else [int(v) for v in x]
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, piv = _rref_fraction(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = r[i][ncols]
    return x


def det(field: Field, rows) -> object:
    """Determinant of a square scalar matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("det expects a square matrix")
    if n == 0:
        return field.one
    if isinstance(field, PrimeField):
        return int(modp.det(_to_array(rows, n), field.p))
    m = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(field: Field, rows):
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = []
    for i, row in enumerate(rows):
        e = [field.zero] * n
        e[i] = field.one
        aug.append(list(row) + e)
    r, piv = rref(field, aug, 2 * n)
    if len(piv) < n or any(c >= n for c in piv[:n]):
        return None
    return [row[n:] for row in r[:n]]
