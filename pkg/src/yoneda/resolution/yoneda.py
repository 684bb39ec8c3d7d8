"""Yoneda classes of exact sequences, by lifting a resolution through them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..quiveralg.module import (
    ExactSequence,
    Module,
    ModuleError,
    ModuleMap,
    column_basis,
    lift_through,
    map_from_generators,
)
from .minres import ExtBasis, ExtTable


@dataclass
class ExtElement:
    """A vector in the block ``Ext^n(S_src, S_tgt)`` of an :class:`ExtTable`."""

    n: int
    src: int
    tgt: int
    coords: np.ndarray

    def is_zero(self) -> bool:
        return not np.any(self.coords != 0)

    def __repr__(self):
        return f"ExtElement(Ext^{self.n}(S_{self.src}, S_{self.tgt}), {list(self.coords)})"


def yoneda_class_of_exact_sequence(alg, seq: ExactSequence, ext: ExtTable) -> ExtElement:
    """Class of ``0 -> X -> E_1 -> ... -> E_m -> Y -> 0`` in ``Ext^m(Y, X)``.

    A comparison map from the minimal resolution of ``Y`` onto the sequence is
    built degree by degree; its last component ``P_m -> X`` is the cocycle,
    read in the table's basis (one coordinate per summand of ``P_m`` at ``X``).
    """
    seq.check()
    X, Y = seq.modules[0], seq.modules[-1]
    i, j = X.simple_vertex(), Y.simple_vertex()
    if i is None or j is None:
        raise ModuleError("end terms must be simple modules")
    m = seq.length
    if m < 1:
        raise ModuleError("need at least one interior term")
    res = ext.resolutions[j]
    if m > res.bound:
        raise ModuleError(f"resolution of S_{j} only computed to degree {res.bound}")
    F = alg.field
    # psi_t : P_t -> E_{m-t}, lifting psi_{t-1} o d_t through E_{m-t} -> E_{m-t+1}
    images = lift_through(alg, res.term(0), [F.array([1])], seq.maps[m])
    psi = map_from_generators(alg, res.term(0), seq.modules[m], images)
    for t in range(1, m + 1):
        verts = res.term(t)
        if not verts:
            return ExtElement(m, j, i, F.zeros(ext.dim(m, j, i)))
        targets = [F.matmul(psi.mats[v - 1], res.generator_image(t, a).reshape(-1, 1))[:, 0]
                   if psi.mats[v - 1].shape[1] else F.zeros(psi.tgt.dim(v))
                   for a, v in enumerate(verts)]
        images = lift_through(alg, verts, targets, seq.maps[m - t])
        psi = map_from_generators(alg, verts, seq.modules[m - t], images)
    coords = F.zeros(ext.dim(m, j, i))
    for e in ext.block(m, j, i):
        coords[e.index] = images[e.summand][0]
    return ExtElement(m, j, i, coords)


def exact_sequence_of_class(ext: ExtTable, x: ExtBasis | ExtElement) -> ExactSequence:
    """An exact sequence ``0 -> S_tgt -> E -> P_{n-2} -> ... -> P_0 -> S_src -> 0`` of class ``x``.

    ``E`` is the pushout of ``P_{n-1} <- P_n -> S_tgt`` along the minimal
    resolution of ``S_src`` and the cocycle given by the coordinates of ``x``.
    """
    alg = ext.alg
    F = alg.field
    if isinstance(x, ExtBasis):
        coords = F.zeros(ext.dim(x.n, x.src, x.tgt))
        coords[x.index] = F.scalar(1)
        x = ExtElement(x.n, x.src, x.tgt, coords)
    n, j, i = x.n, x.src, x.tgt
    if n < 1:
        raise ModuleError("classes of degree 0 have no extension sequence")
    res = ext.resolutions[j]
    if n > res.bound:
        raise ModuleError(f"resolution of S_{j} only computed to degree {res.bound}")
    S = Module.simple(alg, i)
    verts = res.term(n)
    images = [F.zeros(S.dim(v)) for v in verts]
    for e in ext.block(n, j, i):
        images[e.summand] = F.array([x.coords[e.index]])
    phi = map_from_generators(alg, verts, S, images)
    dn = res.diff_map(n)
    below = res.module(n - 1)
    D = Module.direct_sum(alg, [below, S])
    U = [column_basis(np.concatenate([dn.mats[v - 1], F.reduce(-phi.mats[v - 1])], axis=0), F)
         for v in alg.vertices]
    E, q = D.quotient(U)
    inc = ModuleMap(S, D, [np.concatenate([F.zeros((below.dim(v), S.dim(v))), F.eye(S.dim(v))], axis=0)
                           for v in alg.vertices], check=False)
    nxt = res.diff_map(n - 1) if n >= 2 else res.augmentation()
    out = [F.matmul(np.concatenate([nxt.mats[v - 1], F.zeros((nxt.tgt.dim(v), S.dim(v)))], axis=1),
                    q.section[v - 1]) for v in alg.vertices]
    mods = [S, E] + [res.module(t) for t in range(n - 2, -1, -1)] + [Module.simple(alg, j)]
    maps = [q @ inc, ModuleMap(E, nxt.tgt, out, check=False)]
    maps += [res.diff_map(t) for t in range(n - 2, 0, -1)]
    if n >= 2:
        maps.append(res.augmentation())
    seq = ExactSequence(mods, maps)
    seq.check()
    return seq
