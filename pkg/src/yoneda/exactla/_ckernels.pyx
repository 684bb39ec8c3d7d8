# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for arithmetic modulo a word-sized prime."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row-echelon form mod ``p``.

    Entries must already lie in ``[0, p)``. Returns ``(rank, pivots)``.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, inv
    pivots = []
    with nogil:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    f = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = f
            inv = _inv(a[r, c], p)
            if inv != 1:
                for j in range(c, ncols):
                    a[r, j] = (a[r, j] * inv) % p
            for i in range(nrows):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
                        if a[i, j] < 0:
                            a[i, j] += p
            with gil:
                pivots.append(c)
            r += 1
    return r, pivots


def bilinear_modp(int64_t[::1] u, int64_t[::1] v,
                  int64_t[::1] iu, int64_t[::1] iv, int64_t[::1] iout,
                  Py_ssize_t nout, int64_t p):
    """Sparse bilinear map: ``out[iout[k]] += u[iu[k]] * v[iv[k]]`` mod ``p``."""
    out = np.zeros(nout, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t k, n = iu.shape[0]
    cdef int64_t x, y
    with nogil:
        for k in range(n):
            x = u[iu[k]]
            if x == 0:
                continue
            y = v[iv[k]]
            if y == 0:
                continue
            o[iout[k]] = (o[iout[k]] + x * y) % p
    return out
