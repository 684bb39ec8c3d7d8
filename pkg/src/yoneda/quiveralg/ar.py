"""Auslander-Reiten translates and almost split sequences, computed generically.

``tau M`` is obtained as the kernel of ``nu(P_1) -> nu(P_0)``, where
``P_1 -> P_0 -> M -> 0`` is a minimal projective presentation and ``nu`` the
Nakayama functor. The almost split sequence is the pushout of
``0 -> Omega M -> P_0 -> M -> 0`` along a map ``Omega M -> tau M`` whose class
spans the socle of ``Ext^1(M, tau M)`` over ``End(M)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactla import independent_columns, kernel_basis, solve
from .algebra import MonomialAlgebra
from .module import (
    ExactSequence,
    Module,
    ModuleError,
    ModuleMap,
    generators_to_pathmatrix,
    injective_pathmatrix_map,
    lift_through,
    map_from_generators,
    projective_sum,
)


@dataclass
class Presentation:
    top: list[int]            # vertices of P_0
    relations: list[int]      # vertices of P_1
    cover: ModuleMap          # P_0 -> M
    syzygy: Module            # Omega M = ker(cover)
    syzygy_inclusion: ModuleMap
    pathmatrix: np.ndarray    # P_1 -> P_0


def minimal_presentation(m: Module) -> Presentation:
    alg = m.alg
    gens = m.top_generators()
    v0 = [v for v, _ in gens]
    P0 = projective_sum(alg, v0)
    cover = map_from_generators(alg, v0, m, [x for _, x in gens], P0)
    kb = cover.kernel_bases()
    K, Kinc = P0.submodule(kb)
    kgens = P0.top_generators(kb)
    v1 = [v for v, _ in kgens]
    pm = generators_to_pathmatrix(alg, [x for _, x in kgens], v1, v0)
    return Presentation(v0, v1, cover, K, Kinc, pm)


def _flatten(f: ModuleMap) -> np.ndarray:
    F = f.src.field
    parts = [mat.reshape(-1) for mat in f.mats]
    return np.concatenate(parts) if parts else F.zeros(0)


def ar_translate(m: Module) -> tuple[Module, Presentation]:
    """``(tau M, presentation of M)``."""
    pres = minimal_presentation(m)
    if pres.syzygy.is_zero():
        raise ModuleError("no AR sequence ends at a projective module")
    nu = injective_pathmatrix_map(m.alg, pres.pathmatrix, pres.relations, pres.top)
    tau, _ = nu.kernel()
    return tau, pres


def ar_translate_sequence(alg: MonomialAlgebra, m: Module) -> ExactSequence:
    """The almost split sequence ``0 -> tau M -> E -> M -> 0``.

    ``m`` must be indecomposable and not projective.
    """
    F = alg.field
    if not m.is_indecomposable():
        raise ModuleError("AR sequences are only defined for indecomposable modules")
    tau, pres = ar_translate(m)
    K, Kinc = pres.syzygy, pres.syzygy_inclusion

    # Ext^1(M, tau M) = Hom(K, tau M) / restrictions of Hom(P_0, tau M)
    HK = K.hom_basis(tau)
    if not HK:
        raise ModuleError("Ext^1(M, tau M) vanishes; input is not a valid AR end term")
    HKmat = np.stack([_flatten(f) for f in HK], axis=1)
    P0 = pres.cover.src
    restr = [_flatten(f @ Kinc) for f in P0.hom_basis(tau)]
    if restr:
        Rmat = solve(HKmat, np.stack(restr, axis=1), F)
    else:
        Rmat = F.zeros((len(HK), 0))
    piv = set(independent_columns(Rmat.T, F)) if Rmat.shape[1] else set()
    ext_coords = [c for c in range(len(HK)) if c not in piv]
    if not ext_coords:
        raise ModuleError("Ext^1(M, tau M) vanishes")
    # coordinates of an element of Hom(K, tau M) modulo restrictions
    T = np.concatenate([Rmat[:, sorted(piv)] if piv else F.zeros((len(HK), 0)),
                        F.eye(len(HK))[:, ext_coords]], axis=1)
    Tinv = solve(T, F.eye(len(HK)), F)
    to_ext = Tinv[len(piv):]

    # right action of rad End(M) on Ext^1(M, tau M)
    E, radvecs, _ = m.endomorphism_radical()
    conds = []
    gens = [pres.cover.mats[v - 1] for v in pres.top]
    for vec in radvecs:
        r = E[0].scaled(0)
        for c, e in zip(vec, E):
            if c != 0:
                r = _add(r, e.scaled(c))
        targets = [F.matmul(r.mats[v - 1], _gen_image(pres, a)) for a, v in enumerate(pres.top)]
        lifted = lift_through(alg, pres.top, targets, pres.cover)
        r0 = map_from_generators(alg, pres.top, P0, lifted, P0)
        rk_mats = [solve(Kinc.mats[v - 1], F.matmul((r0 @ Kinc).mats[v - 1], F.eye(K.dim(v))), F)
                   for v in alg.vertices]
        rK = ModuleMap(K, K, rk_mats, check=False)
        cols = []
        for c in ext_coords:
            phi_r = HK[c] @ rK
            coords = solve(HKmat, _flatten(phi_r), F)
            cols.append(F.matmul(to_ext, coords.reshape(-1, 1))[:, 0])
        conds.append(np.stack(cols, axis=1))
    if conds:
        soc = kernel_basis(np.concatenate(conds, axis=0), F)
    else:
        soc = [F.eye(len(ext_coords))[:, 0]]
    if not soc:
        raise ModuleError("socle of Ext^1(M, tau M) is zero (internal error)")
    xi = soc[0]
    phi = HK[ext_coords[0]].scaled(0)
    for c, idx in zip(xi, ext_coords):
        if c != 0:
            phi = _add(phi, HK[idx].scaled(c))

    # pushout of P_0 <- K -> tau M
    D = Module.direct_sum(alg, [P0, tau])
    U = [np.concatenate([Kinc.mats[v - 1], F.reduce(-phi.mats[v - 1])], axis=0) for v in alg.vertices]
    Emod, q = D.quotient(U)
    inc_tau = ModuleMap(tau, D, [np.concatenate([F.zeros((P0.dim(v), tau.dim(v))), F.eye(tau.dim(v))], axis=0)
                                 for v in alg.vertices], check=False)
    left = q @ inc_tau
    to_m = [F.matmul(np.concatenate([pres.cover.mats[v - 1], F.zeros((m.dim(v), tau.dim(v)))], axis=1),
                     q.section[v - 1]) for v in alg.vertices]
    right = ModuleMap(Emod, m, to_m, check=False)
    seq = ExactSequence([tau, Emod, m], [left, right])
    seq.check()
    return seq


def _gen_image(pres: Presentation, a: int) -> np.ndarray:
    # the generator of summand a of P_0 is the basis vector of its trivial path
    alg = pres.cover.src.alg
    v = pres.top[a]
    from .module import projective_basis
    basis = projective_basis(alg, pres.top, v)
    col = basis.index((a, alg.trivial[v]))
    return pres.cover.mats[v - 1][:, col]


def _add(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    F = f.src.field
    return ModuleMap(f.src, f.tgt, [F.reduce(a + b) for a, b in zip(f.mats, g.mats)], check=False)
