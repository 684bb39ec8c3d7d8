"""The endomorphism DG algebra of the truncated minimal resolutions.

Let ``P(j)`` be the minimal resolution of ``S_j`` cut off above degree
``N``. A degree-n element of the block ``j -> i`` is a family of module maps
``f_m: P(j)_{m+n} -> P(i)_m`` (``0 <= m``, ``m + n <= N``), each a matrix of
paths. Only degrees ``0..N`` are kept: maps with source degree above ``N``
form a DG ideal of the non-negative part, so this is a DG algebra, and its
cohomology in degrees ``1..N`` is ``Ext^n(S_j, S_i)``.

Differential: ``d f = d_P o f - (-1)^n f o d_P``. Product: composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..exactla import kernels, rank
from ..resolution.minres import ExtTable, Resolution


class HomComplexError(RuntimeError):
    pass


@dataclass(frozen=True)
class BasisElement:
    m: int        # target (homological) degree of the component
    row: int      # summand of P(tgt)_m
    col: int      # summand of P(src)_{m+n}
    path: int     # path id from the column vertex to the row vertex


class HomComplex:
    """Blockwise based DG algebra; blocks are keyed ``(src, tgt, n)``."""

    def __init__(self, ext: ExtTable, bound: int | None = None):
        self.alg = ext.alg
        self.field = ext.alg.field
        self.res: dict[int, Resolution] = ext.resolutions
        self.bound = bound if bound is not None else ext.res_bound
        if self.bound > ext.res_bound:
            raise HomComplexError("truncation bound exceeds the computed resolutions")
        if ext.degree < self.bound:
            ext = ExtTable(ext.alg, self.bound, ext.resolutions)
        self.ext = ext
        self._basis: dict[tuple[int, int, int], list[BasisElement]] = {}
        self._index: dict[tuple[int, int, int], dict[BasisElement, int]] = {}
        self._plans: dict[tuple, tuple] = {}
        self._dmat: dict[tuple[int, int, int], np.ndarray] = {}

    # bases

    def basis(self, src: int, tgt: int, n: int) -> list[BasisElement]:
        key = (src, tgt, n)
        if key not in self._basis:
            out = []
            if 0 <= n <= self.bound:
                alg = self.alg
                for m in range(0, self.bound - n + 1):
                    rows = self.res[tgt].term(m)
                    cols = self.res[src].term(m + n)
                    for r, w in enumerate(rows):
                        for a, v in enumerate(cols):
                            for pid in alg.paths_between(v, w):
                                out.append(BasisElement(m, r, a, pid))
            self._basis[key] = out
            self._index[key] = {b: k for k, b in enumerate(out)}
        return self._basis[key]

    def dim(self, src: int, tgt: int, n: int) -> int:
        return len(self.basis(src, tgt, n))

    def index(self, src: int, tgt: int, n: int) -> dict[BasisElement, int]:
        self.basis(src, tgt, n)
        return self._index[(src, tgt, n)]

    def zeros(self, src: int, tgt: int, n: int) -> np.ndarray:
        return self.field.zeros(self.dim(src, tgt, n))

    # structure

    def _plan(self, a: int, b: int, c: int, nf: int, ng: int):
        """COO data for ``mu: C^{nf}(b -> c) x C^{ng}(a -> b) -> C^{nf+ng}(a -> c)``."""
        key = (a, b, c, nf, ng)
        plan = self._plans.get(key)
        if plan is None:
            fb = self.basis(b, c, nf)
            gb = self.basis(a, b, ng)
            out_idx = self.index(a, c, nf + ng)
            by_row: dict[tuple[int, int], list[tuple[int, BasisElement]]] = {}
            for k, g in enumerate(gb):
                by_row.setdefault((g.m, g.row), []).append((k, g))
            mul = self.alg.mul
            iu, iv, io = [], [], []
            for kf, f in enumerate(fb):
                for kg, g in by_row.get((f.m + nf, f.col), ()):
                    r = mul[g.path, f.path]
                    if r < 0:
                        continue
                    o = out_idx.get(BasisElement(f.m, f.row, g.col, int(r)))
                    if o is None:
                        continue
                    iu.append(kf)
                    iv.append(kg)
                    io.append(o)
            plan = (np.array(iu, dtype=np.int64), np.array(iv, dtype=np.int64),
                    np.array(io, dtype=np.int64), len(out_idx))
            self._plans[key] = plan
        return plan

    def product(self, f: np.ndarray, f_block: tuple[int, int, int],
                g: np.ndarray, g_block: tuple[int, int, int]) -> tuple[np.ndarray, tuple[int, int, int]]:
        """``f o g`` for ``f`` in block ``(b, c, nf)`` and ``g`` in block ``(a, b, ng)``."""
        b, c, nf = f_block
        a, b2, ng = g_block
        if b != b2:
            raise HomComplexError(f"blocks {f_block} and {g_block} do not compose")
        iu, iv, io, nout = self._plan(a, b, c, nf, ng)
        F = self.field
        if F.is_prime:
            out = kernels.bilinear_modp(np.ascontiguousarray(f, dtype=np.int64),
                                        np.ascontiguousarray(g, dtype=np.int64),
                                        iu, iv, io, nout, F.p)
        else:
            out = F.zeros(nout)
            if len(iu):
                np.add.at(out, io, f[iu] * g[iv])
        return out, (a, c, nf + ng)

    @cached_property
    def _deltas(self) -> dict[int, np.ndarray]:
        out = {}
        F = self.field
        for i in self.alg.vertices:
            vec = self.zeros(i, i, 1)
            idx = self.index(i, i, 1)
            for m in range(self.bound):
                if m + 1 > self.res[i].length:
                    break
                pm = self.res[i].diff(m + 1)
                for r in range(pm.shape[0]):
                    for a in range(pm.shape[1]):
                        for pid in np.flatnonzero(pm[r, a]):
                            vec[idx[BasisElement(m, r, a, int(pid))]] = pm[r, a, pid]
            out[i] = vec
        return out

    def resolution_differential(self, i: int) -> np.ndarray:
        """``d_P`` of the resolution of ``S_i`` as an element of ``C^1(i -> i)``."""
        return self._deltas[i]

    def differential_matrix(self, src: int, tgt: int, n: int) -> np.ndarray:
        """Matrix of ``d: C^n(src -> tgt) -> C^{n+1}(src -> tgt)``."""
        key = (src, tgt, n)
        D = self._dmat.get(key)
        if D is None:
            F = self.field
            rows, cols = self.dim(src, tgt, n + 1), self.dim(src, tgt, n)
            D = F.zeros((rows, cols))
            if rows and cols:
                di, dj = self._deltas[tgt], self._deltas[src]
                iu, iv, io, _ = self._plan(src, tgt, tgt, 1, n)
                if len(iu):
                    np.add.at(D, (io, iv), di[iu])
                iu, iv, io, _ = self._plan(src, src, tgt, n, 1)
                if len(iu):
                    sign = -1 if n % 2 == 0 else 1
                    np.add.at(D, (io, iu), sign * dj[iv])
                D = F.reduce(D)
            self._dmat[key] = D
        return D

    def d(self, f: np.ndarray, block: tuple[int, int, int]) -> np.ndarray:
        src, tgt, n = block
        return self.field.matmul(self.differential_matrix(src, tgt, n), f.reshape(-1, 1))[:, 0]

    def unit(self, i: int) -> np.ndarray:
        """Identity chain map of ``P(i)`` (degree 0)."""
        F = self.field
        vec = self.zeros(i, i, 0)
        idx = self.index(i, i, 0)
        for m in range(self.bound + 1):
            for a, v in enumerate(self.res[i].term(m)):
                vec[idx[BasisElement(m, a, a, self.alg.trivial[v])]] = F.scalar(1)
        return vec

    def ext_projection(self, src: int, tgt: int, n: int) -> np.ndarray:
        """``rho``: coefficient of the trivial path in ``P(src)_n -> P(tgt)_0``, per Ext basis class."""
        F = self.field
        blk = self.ext.block(n, src, tgt)
        R = F.zeros((len(blk), self.dim(src, tgt, n)))
        idx = self.index(src, tgt, n)
        triv = self.alg.trivial[tgt]
        for e in blk:
            R[e.index, idx[BasisElement(0, 0, e.summand, triv)]] = F.scalar(1)
        return R

    # checks

    def cohomology_dim(self, src: int, tgt: int, n: int) -> int:
        c = self.dim(src, tgt, n)
        z = c - (rank(self.differential_matrix(src, tgt, n), self.field) if n < self.bound else 0)
        b = rank(self.differential_matrix(src, tgt, n - 1), self.field) if n >= 1 else 0
        return z - b

    def check_d_squared(self) -> None:
        F = self.field
        for j in self.alg.vertices:
            for i in self.alg.vertices:
                for n in range(self.bound - 1):
                    dd = F.matmul(self.differential_matrix(j, i, n + 1), self.differential_matrix(j, i, n))
                    if not F.is_zero(dd):
                        raise HomComplexError(f"d^2 != 0 on block {j}->{i}, degree {n}")

    def check_leibniz(self, blocks=None, limit: int | None = None) -> int:
        """Check ``d(fg) = d(f) g + (-1)^|f| f d(g)`` on pairs of basis elements; returns #pairs."""
        F = self.field
        verts = list(self.alg.vertices)
        count = 0
        for a in verts:
            for b in verts:
                for c in verts:
                    for nf in range(self.bound + 1):
                        for ng in range(self.bound + 1 - nf):
                            if nf + ng + 1 > self.bound:
                                continue
                            for kf in range(self.dim(b, c, nf)):
                                f = self.zeros(b, c, nf)
                                f[kf] = 1
                                for kg in range(self.dim(a, b, ng)):
                                    g = self.zeros(a, b, ng)
                                    g[kg] = 1
                                    fg, blk = self.product(f, (b, c, nf), g, (a, b, ng))
                                    lhs = self.d(fg, blk)
                                    r1, _ = self.product(self.d(f, (b, c, nf)), (b, c, nf + 1), g, (a, b, ng))
                                    r2, _ = self.product(f, (b, c, nf), self.d(g, (a, b, ng)), (a, b, ng + 1))
                                    rhs = F.reduce(r1 + (F.scalar(-1) if nf % 2 else 1) * r2)
                                    if not F.is_zero(F.reduce(lhs - rhs)):
                                        raise HomComplexError(f"Leibniz fails on {(b, c, nf)} x {(a, b, ng)}")
                                    count += 1
                                    if limit is not None and count >= limit:
                                        return count
        return count


def hom_complex(resolutions: dict[int, Resolution], bound: int) -> HomComplex:
    """Hom-complex DG algebra of ``resolutions`` (one per simple, common algebra)."""
    algs = {id(r.alg) for r in resolutions.values()}
    if len(algs) != 1:
        keys = {r.alg.key() for r in resolutions.values()}
        if len(keys) != 1:
            raise HomComplexError("resolutions belong to different algebras")
    alg = next(iter(resolutions.values())).alg
    if set(resolutions) != set(alg.vertices):
        raise HomComplexError("need one resolution per simple module")
    if any(r.bound < bound for r in resolutions.values()):
        raise HomComplexError("resolutions are truncated below the requested bound")
    ext = ExtTable(alg, bound, resolutions)
    return HomComplex(ext, bound)
