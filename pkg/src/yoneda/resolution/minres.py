"""Minimal projective resolutions of simple modules and the Ext tables they give."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..quiveralg.algebra import MonomialAlgebra
from ..quiveralg.module import (
    Module,
    ModuleMap,
    generators_to_pathmatrix,
    map_from_generators,
    pathmatrix_to_map,
    projective_sum,
)


class ResolutionError(RuntimeError):
    pass


@dataclass
class Resolution:
    """``... -> P_2 -> P_1 -> P_0 -> S_target``, truncated at degree ``bound``.

    ``terms[t]`` lists the vertices of the indecomposable summands of ``P_t``;
    ``diffs[t]`` (t >= 1) is the path matrix of ``P_t -> P_{t-1}``, indexed
    ``[row summand of P_{t-1}, column summand of P_t, path id]``.
    """

    alg: MonomialAlgebra
    target: int
    bound: int
    terms: list[list[int]]
    diffs: list[np.ndarray | None]

    @property
    def length(self) -> int:
        """Index of the last nonzero term (the projective dimension if below ``bound``)."""
        return len(self.terms) - 1

    @property
    def terminated(self) -> bool:
        """True when the resolution is finite and fully computed."""
        return self.length < self.bound

    def multiplicities(self, t: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.term(t):
            out[v] = out.get(v, 0) + 1
        return out

    def term(self, t: int) -> list[int]:
        return self.terms[t] if 0 <= t < len(self.terms) else []

    def diff(self, t: int) -> np.ndarray:
        F = self.alg.field
        if 1 <= t < len(self.terms):
            return self.diffs[t]
        return F.zeros((len(self.term(t - 1)), len(self.term(t)), self.alg.dim))

    def module(self, t: int) -> Module:
        return projective_sum(self.alg, self.term(t))

    def diff_map(self, t: int) -> ModuleMap:
        return pathmatrix_to_map(self.alg, self.diff(t), self.term(t), self.term(t - 1))

    def augmentation(self) -> ModuleMap:
        alg = self.alg
        S = Module.simple(alg, self.target)
        return map_from_generators(alg, [self.target], S, [alg.field.array([1])])

    def generator_image(self, t: int, a: int) -> np.ndarray:
        """``d_t`` applied to the generator of summand ``a`` of ``P_t``, in ``P_{t-1}`` coordinates."""
        from ..quiveralg.module import projective_basis
        alg = self.alg
        v = self.term(t)[a]
        basis = projective_basis(alg, self.term(t - 1), v)
        pm = self.diff(t)
        return alg.field.array([pm[b, a, pid] for b, pid in basis]) if basis else alg.field.zeros(0)

    def check_exact(self) -> None:
        """Exactness of the augmented complex below the truncation degree."""
        F = self.alg.field
        maps = [self.augmentation()] + [self.diff_map(t) for t in range(1, self.length + 1)]
        mods = [m.src for m in maps]
        for t in range(len(maps)):
            f = maps[t]
            nxt = maps[t + 1] if t + 1 < len(maps) else None
            if t + 1 > self.bound - 1:
                break
            if nxt is not None and not (f @ nxt).is_zero():
                raise ResolutionError(f"d_{t} d_{t+1} != 0")
            for v in self.alg.vertices:
                rk_f = f.ranks()[v - 1]
                rk_n = nxt.ranks()[v - 1] if nxt is not None else 0
                if rk_f + rk_n != mods[t].dim(v):
                    raise ResolutionError(f"not exact at P_{t} (vertex {v})")
        if not maps[0].is_surjective():
            raise ResolutionError("augmentation is not surjective")

    def check_minimal(self) -> None:
        """Every differential entry lies in the radical: no trivial-path coefficients."""
        triv = list(self.alg.trivial.values())
        for t in range(1, self.length + 1):
            if np.any(self.diffs[t][:, :, triv] != 0):
                raise ResolutionError(f"d_{t} has an invertible entry: resolution is not minimal")


def minimal_resolution(alg: MonomialAlgebra, i: int, bound: int) -> Resolution:
    """Minimal projective resolution of ``S_i`` through degree ``bound``."""
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    F = alg.field
    terms = [[i]]
    diffs: list[np.ndarray | None] = [None]
    P = projective_sum(alg, [i])
    S = Module.simple(alg, i)
    aug = map_from_generators(alg, [i], S, [F.array([1])], P)
    kb = aug.kernel_bases()
    for t in range(1, bound + 1):
        if all(b.shape[1] == 0 for b in kb):
            break
        gens = P.top_generators(kb)
        verts = [v for v, _ in gens]
        images = [x for _, x in gens]
        diffs.append(generators_to_pathmatrix(alg, images, verts, terms[-1]))
        terms.append(verts)
        newP = projective_sum(alg, verts)
        f = map_from_generators(alg, verts, P, images, newP)
        kb = f.kernel_bases()
        P = newP
    return Resolution(alg, i, bound, terms, diffs)


@dataclass(frozen=True)
class ExtBasis:
    """Basis class of ``Ext^n(S_src, S_tgt)``: summand ``summand`` of ``P_n`` in the
    resolution of ``S_src``, which sits at vertex ``tgt``."""

    n: int
    src: int
    tgt: int
    index: int      # position within its (n, src, tgt) block
    summand: int

    @property
    def label(self) -> str:
        return f"e{self.n}:{self.src}->{self.tgt}#{self.index}"


class ExtTable:
    """``Ext^n(S_j, S_i)`` for ``n <= degree`` with canonical bases.

    Blocks are keyed ``(n, j, i)``; a class in ``Ext^n(S_j, S_i)`` composes on
    the left with classes out of ``S_i`` (composition order: ``x o y`` means
    first ``y``).
    """

    def __init__(self, alg: MonomialAlgebra, degree: int, resolutions: dict[int, Resolution]):
        self.alg = alg
        self.degree = degree
        self.resolutions = resolutions
        self.res_bound = min(r.bound for r in resolutions.values())
        basis: list[ExtBasis] = []
        blocks: dict[tuple[int, int, int], list[ExtBasis]] = {}
        for n in range(degree + 1):
            for j in alg.vertices:
                for a, i in enumerate(resolutions[j].term(n)):
                    blk = blocks.setdefault((n, j, i), [])
                    e = ExtBasis(n, j, i, len(blk), a)
                    blk.append(e)
        for key in sorted(blocks):
            basis.extend(blocks[key])
        self.blocks = blocks
        self.basis = basis
        self.index = {e: k for k, e in enumerate(basis)}
        self.by_label = {e.label: e for e in basis}

    def dim(self, n: int, j: int, i: int) -> int:
        """``dim Ext^n(S_j, S_i)``."""
        return len(self.blocks.get((n, j, i), []))

    def block(self, n: int, j: int, i: int) -> list[ExtBasis]:
        return self.blocks.get((n, j, i), [])

    def total_dim(self, n: int) -> int:
        return sum(len(b) for (m, _, _), b in self.blocks.items() if m == n)

    def dim_table(self) -> dict[int, list[list[int]]]:
        """``{n: M}`` with ``M[j-1][i-1] = dim Ext^n(S_j, S_i)``."""
        verts = list(self.alg.vertices)
        return {n: [[self.dim(n, j, i) for i in verts] for j in verts] for n in range(self.degree + 1)}

    def nonzero_blocks(self, n: int | None = None) -> list[tuple[int, int, int]]:
        return sorted(k for k, b in self.blocks.items() if b and (n is None or k[0] == n))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "vertices": self.alg.n,
            "dims": {str(n): tab for n, tab in self.dim_table().items()},
            "total": [self.total_dim(n) for n in range(self.degree + 1)],
            "basis": [e.label for e in self.basis],
        }

    def to_csv(self) -> str:
        lines = ["n,src,tgt,dim"]
        for n in range(self.degree + 1):
            for j in self.alg.vertices:
                for i in self.alg.vertices:
                    lines.append(f"{n},{j},{i},{self.dim(n, j, i)}")
        return "\n".join(lines) + "\n"


def ext_table(alg: MonomialAlgebra, degree: int, res_bound: int | None = None) -> ExtTable:
    """Ext table through ``degree``; resolutions are computed to ``degree + 2``."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    bound = res_bound if res_bound is not None else degree + 2
    res = {j: minimal_resolution(alg, j, bound) for j in alg.vertices}
    return ExtTable(alg, degree, res)
