"""Numpy implementations of the modular kernels (used when the extension is absent)."""

import numpy as np


def rref_modp(a, p):
    """Reduce ``a`` in place to reduced row-echelon form mod ``p``."""
    nrows, ncols = a.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, pivots


def bilinear_modp(u, v, iu, iv, iout, nout, p):
    out = np.zeros(nout, dtype=np.int64)
    np.add.at(out, iout, (u[iu] * v[iv]) % p)
    return out % p
