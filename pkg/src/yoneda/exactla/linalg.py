"""Row reduction and the linear-algebra services built on it.

Pivots are chosen leftmost-first, so every basis returned here is canonical:
two calls on equal inputs give identical outputs.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels
from .field import FieldSpec


def _rref_generic(a: np.ndarray, field: FieldSpec):
    nrows, ncols = a.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * field.inv(a[r, c])
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return r, pivots


def rref(m: np.ndarray, field: FieldSpec):
    """Return ``(rank, pivots, reduced)`` for the matrix ``m``."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if field.is_prime:
        a = np.ascontiguousarray(np.mod(m, field.p), dtype=np.int64)
        rank, pivots = kernels.rref_modp(a, field.p)
    else:
        a = field.array(m) if m.dtype != object else m.copy()
        rank, pivots = _rref_generic(a, field)
    return rank, list(pivots), a


def rank(m: np.ndarray, field: FieldSpec) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, field)[0]


def kernel_basis(m: np.ndarray, field: FieldSpec) -> list[np.ndarray]:
    """Canonical basis of the right null space: one vector per free column."""
    m = np.asarray(m)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [_unit(ncols, c, field) for c in range(ncols)]
    r, pivots, red = rref(m, field)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = _unit(ncols, f, field)
        for row, pc in enumerate(pivots):
            v[pc] = field.reduce(-red[row, f]) if field.is_prime else -red[row, f]
        basis.append(v)
    return basis


def kernel_matrix(m: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Kernel basis as the columns of a matrix."""
    vecs = kernel_basis(m, field)
    ncols = np.asarray(m).shape[1]
    if not vecs:
        return field.zeros((ncols, 0))
    return np.stack(vecs, axis=1)


def solve(a: np.ndarray, b: np.ndarray, field: FieldSpec):
    """A particular solution of ``a x = b`` with all free variables zero.

    ``b`` may be a vector or a matrix of right-hand sides. Returns ``None``
    when the system is inconsistent.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    nrows, ncols = a.shape
    if nrows == 0:
        x = field.zeros((ncols, B.shape[1]))
        return x[:, 0] if vec else x
    aug = np.concatenate([field.reduce(a) if field.is_prime else a,
                          field.reduce(B) if field.is_prime else B], axis=1)
    if not field.is_prime:
        aug = aug.astype(object)
    r, pivots, red = rref(aug, field)
    if pivots and pivots[-1] >= ncols:
        return None
    x = field.zeros((ncols, B.shape[1]))
    for row, pc in enumerate(pivots):
        x[pc] = red[row, ncols:]
    return x[:, 0] if vec else x


def span_equal(a: Sequence[np.ndarray], b: Sequence[np.ndarray], field: FieldSpec) -> bool:
    """True iff the two families of vectors span the same subspace."""
    lens = {len(v) for v in list(a) + list(b)}
    if len(lens) > 1:
        raise ValueError(f"dimension mismatch: vector lengths {sorted(lens)}")
    if not lens:
        return True
    n = lens.pop()
    ma = np.stack(a) if len(a) else field.zeros((0, n))
    mb = np.stack(b) if len(b) else field.zeros((0, n))
    ra, rb = rank(ma, field), rank(mb, field)
    return ra == rb == rank(np.concatenate([ma, mb]), field)


def row_basis(m: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Nonzero rows of the RREF (a canonical basis of the row space)."""
    m = np.asarray(m)
    if m.shape[0] == 0:
        return m
    r, _, red = rref(m, field)
    return red[:r]


def independent_columns(m: np.ndarray, field: FieldSpec) -> list[int]:
    """Leftmost maximal set of linearly independent columns."""
    m = np.asarray(m)
    if m.size == 0:
        return []
    return rref(m, field)[1]


def left_inverse(m: np.ndarray, field: FieldSpec):
    """For ``m`` of full column rank, return ``(rows, inv)`` with ``inv @ m[rows] == I``.

    Then ``inv @ y[rows]`` recovers ``x`` from ``y = m x`` for ``y`` in the image.
    """
    m = np.asarray(m)
    ncols = m.shape[1]
    if ncols == 0:
        return [], field.zeros((0, 0))
    rows = independent_columns(m.T, field)
    if len(rows) != ncols:
        raise ValueError("matrix does not have full column rank")
    sq = m[rows]
    inv = solve(sq, field.eye(ncols), field)
    return rows, inv


def _unit(n: int, i: int, field: FieldSpec) -> np.ndarray:
    v = field.zeros(n)
    v[i] = field.scalar(1)
    return v
