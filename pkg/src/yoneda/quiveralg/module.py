"""Finite-dimensional modules as quiver representations, and their maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exactla import independent_columns, kernel_matrix, rank, solve
from .algebra import AlgebraError, MonomialAlgebra


class ModuleError(ValueError):
    pass


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m, n = a.shape
    p, q = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(m * p, n * q)


class Module:
    """A representation: ``dims[v-1]``-dimensional space at each vertex ``v``
    and, for each arrow ``k: s -> t``, a matrix ``maps[k]`` of shape
    ``(dims[s-1], dims[t-1])`` (the arrow acts from ``M_t`` to ``M_s``).
    """

    def __init__(self, alg: MonomialAlgebra, dims: Sequence[int], maps=None, check: bool = True):
        self.alg = alg
        self.field = alg.field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.n:
            raise ModuleError(f"need {alg.n} dimensions, got {len(self.dims)}")
        arrows = alg.quiver.arrows
        if maps is None:
            maps = [self.field.zeros((self.dim(s), self.dim(t))) for s, t in arrows]
        self.maps = tuple(self.field.reduce(np.asarray(m)) if self.field.is_prime else np.asarray(m, dtype=object)
                          for m in maps)
        if check:
            self.validate()

    def validate(self):
        for k, (s, t) in enumerate(self.alg.quiver.arrows):
            if self.maps[k].shape != (self.dim(s), self.dim(t)):
                raise ModuleError(f"arrow {k}: map has shape {self.maps[k].shape}, expected {(self.dim(s), self.dim(t))}")
        for rel in self.alg.relations:
            if not self.field.is_zero(self.path_matrix(rel)):
                raise ModuleError(f"relation {list(rel)} does not act as zero")

    def __repr__(self):
        return f"Module(dims={list(self.dims)})"

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, arrows: Sequence[int], vertex: int | None = None) -> np.ndarray:
        """Matrix of a path ``u -> w`` acting ``M_w -> M_u``."""
        if not arrows:
            return self.field.eye(self.dim(vertex))
        out = self.maps[arrows[0]]
        for k in arrows[1:]:
            out = self.field.matmul(out, self.maps[k])
        return out

    def act(self, arrows: Sequence[int], x: np.ndarray) -> np.ndarray:
        if not arrows:
            return x
        for k in reversed(arrows):
            x = self.field.matmul(self.maps[k], x)
        return x

    def same_as(self, other: "Module") -> bool:
        return self.dims == other.dims and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))

    # constructors

    @classmethod
    def simple(cls, alg: MonomialAlgebra, v: int) -> "Module":
        return cls(alg, [1 if u == v else 0 for u in alg.vertices])

    @classmethod
    def zero(cls, alg: MonomialAlgebra) -> "Module":
        return cls(alg, [0] * alg.n)

    def simple_vertex(self) -> int | None:
        """The vertex ``v`` if this module is the simple ``S_v``."""
        if self.total_dim != 1:
            return None
        return self.dims.index(1) + 1

    @classmethod
    def direct_sum(cls, alg: MonomialAlgebra, mods: Sequence["Module"]) -> "Module":
        F = alg.field
        dims = [sum(m.dim(v) for m in mods) for v in alg.vertices]
        maps = []
        for k, (s, t) in enumerate(alg.quiver.arrows):
            blk = F.zeros((dims[s - 1], dims[t - 1]))
            r = c = 0
            for m in mods:
                blk[r:r + m.dim(s), c:c + m.dim(t)] = m.maps[k]
                r += m.dim(s)
                c += m.dim(t)
            maps.append(blk)
        return cls(alg, dims, maps, check=False)

    # structure

    def radical(self, basis=None) -> list[np.ndarray]:
        """Radical of the submodule spanned by ``basis`` (default: all of M), as column bases."""
        F = self.field
        if basis is None:
            basis = [F.eye(d) for d in self.dims]
        out = []
        for v in self.alg.vertices:
            cols = [F.matmul(self.maps[k], basis[t - 1])
                    for k in self.alg.quiver.arrows_out(v)
                    for t in [self.alg.quiver.arrows[k][1]]]
            out.append(column_basis(np.concatenate(cols, axis=1), F) if cols else F.zeros((self.dim(v), 0)))
        return out

    def top_generators(self, basis=None) -> list[tuple[int, np.ndarray]]:
        """Generators ``(vertex, vector)`` lifting a basis of the top (canonical choice)."""
        F = self.field
        if basis is None:
            basis = [F.eye(d) for d in self.dims]
        rad = self.radical(basis)
        gens = []
        for v in self.alg.vertices:
            R, B = rad[v - 1], basis[v - 1]
            if B.shape[1] == 0:
                continue
            M = np.concatenate([R, B], axis=1)
            for c in independent_columns(M, F):
                if c >= R.shape[1]:
                    gens.append((v, B[:, c - R.shape[1]]))
        return gens

    def radical_layers(self) -> list[list[int]]:
        """Vertex labels of ``rad^k M / rad^{k+1} M`` for k = 0, 1, ..."""
        F = self.field
        cur = [F.eye(d) for d in self.dims]
        layers = []
        while any(b.shape[1] for b in cur):
            nxt = self.radical(cur)
            layer = []
            for v in self.alg.vertices:
                layer.extend([v] * (cur[v - 1].shape[1] - nxt[v - 1].shape[1]))
            layers.append(layer)
            cur = nxt
        return layers

    def composition_series(self) -> list[int]:
        """Top-to-socle list of composition factors along the radical filtration."""
        return [v for layer in self.radical_layers() for v in layer]

    def is_uniserial(self) -> bool:
        return all(len(layer) == 1 for layer in self.radical_layers())

    def submodule(self, basis: Sequence[np.ndarray]) -> tuple["Module", "ModuleMap"]:
        """Submodule spanned by the columns of ``basis[v-1]`` (must be closed under arrows)."""
        F = self.field
        basis = [np.asarray(b) for b in basis]
        maps = []
        for k, (s, t) in enumerate(self.alg.quiver.arrows):
            rhs = F.matmul(self.maps[k], basis[t - 1])
            x = solve(basis[s - 1], rhs, F)
            if x is None:
                raise ModuleError("subspaces are not closed under the arrow actions")
            maps.append(x)
        sub = Module(self.alg, [b.shape[1] for b in basis], maps, check=False)
        return sub, ModuleMap(sub, self, basis, check=False)

    def quotient(self, basis: Sequence[np.ndarray]) -> tuple["Module", "ModuleMap"]:
        """Quotient by the submodule with column bases ``basis``; returns it with the projection."""
        F = self.field
        comps, projs = [], []
        for v in self.alg.vertices:
            U = np.asarray(basis[v - 1])
            d = self.dim(v)
            piv = set(independent_columns(U.T, F)) if U.shape[1] else set()
            C = F.eye(d)[:, [c for c in range(d) if c not in piv]]
            T = np.concatenate([U, C], axis=1)
            Tinv = solve(T, F.eye(d), F)
            comps.append(C)
            projs.append(Tinv[U.shape[1]:] if d else F.zeros((0, 0)))
        maps = [F.matmul(projs[s - 1], F.matmul(self.maps[k], comps[t - 1]))
                for k, (s, t) in enumerate(self.alg.quiver.arrows)]
        q = Module(self.alg, [C.shape[1] for C in comps], maps, check=False)
        proj = ModuleMap(self, q, projs, check=False)
        proj.section = comps
        return q, proj

    def hom_basis(self, other: "Module") -> list["ModuleMap"]:
        """Basis of ``Hom_A(self, other)``."""
        F = self.field
        alg = self.alg
        sizes = [other.dim(v) * self.dim(v) for v in alg.vertices]
        offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        nvar = int(offs[-1])
        rows = []
        for k, (s, t) in enumerate(alg.quiver.arrows):
            # X_s A^M_k - A^N_k X_t = 0, flattened row-major
            blk = F.zeros((other.dim(s) * self.dim(t), nvar))
            blk[:, offs[s - 1]:offs[s]] += _kron(F.eye(other.dim(s)), self.maps[k].T)
            blk[:, offs[t - 1]:offs[t]] -= _kron(other.maps[k], F.eye(self.dim(t)))
            rows.append(F.reduce(blk))
        if nvar == 0:
            return []
        eqs = np.concatenate(rows, axis=0) if rows else F.zeros((0, nvar))
        K = kernel_matrix(eqs, F)
        out = []
        for j in range(K.shape[1]):
            mats = [K[offs[v - 1]:offs[v], j].reshape(other.dim(v), self.dim(v)) for v in alg.vertices]
            out.append(ModuleMap(self, other, mats, check=False))
        return out

    def endomorphism_radical(self):
        """``(End basis, rad End basis as coefficient vectors)`` via the trace form."""
        F = self.field
        if F.is_prime and F.p <= self.total_dim:
            raise ModuleError("trace-form radical needs char > dim M")
        E = self.hom_basis(self)
        r = len(E)
        G = F.zeros((r, r))
        for a in range(r):
            for b in range(r):
                G[a, b] = F.reduce(sum((F.matmul(E[a].mats[v - 1], E[b].mats[v - 1]).trace()
                                        for v in self.alg.vertices if self.dim(v)), F.scalar(0)))
        from ..exactla import kernel_basis
        return E, kernel_basis(G, F) if r else [], rank(G, F) if r else 0

    def is_indecomposable(self) -> bool:
        """Nonzero with local endomorphism ring (residue field k)."""
        if self.is_zero():
            return False
        E, rad, rk = self.endomorphism_radical()
        return rk == 1


class ModuleMap:
    """Module homomorphism given by per-vertex matrices ``tgt_v x src_v``."""

    def __init__(self, src: Module, tgt: Module, mats, check: bool = True):
        self.src = src
        self.tgt = tgt
        F = src.field
        self.mats = [F.reduce(np.asarray(m)) if F.is_prime else np.asarray(m, dtype=object) for m in mats]
        if check:
            self.validate()

    def validate(self):
        F = self.src.field
        for v in self.src.alg.vertices:
            if self.mats[v - 1].shape != (self.tgt.dim(v), self.src.dim(v)):
                raise ModuleError(f"vertex {v}: map shape {self.mats[v - 1].shape} mismatches modules")
        for k, (s, t) in enumerate(self.src.alg.quiver.arrows):
            lhs = F.matmul(self.mats[s - 1], self.src.maps[k])
            rhs = F.matmul(self.tgt.maps[k], self.mats[t - 1])
            if not F.is_zero(F.reduce(lhs - rhs)):
                raise ModuleError(f"not a module map: fails to commute with arrow {k}")

    @classmethod
    def zero(cls, src: Module, tgt: Module) -> "ModuleMap":
        F = src.field
        return cls(src, tgt, [F.zeros((tgt.dim(v), src.dim(v))) for v in src.alg.vertices], check=False)

    @classmethod
    def identity(cls, m: Module) -> "ModuleMap":
        F = m.field
        return cls(m, m, [F.eye(d) for d in m.dims], check=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        F = self.src.field
        if other.tgt.dims != self.src.dims:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.src, self.tgt, [F.matmul(a, b) for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        F = self.src.field
        return ModuleMap(self.src, self.tgt, [F.reduce(a - b) for a, b in zip(self.mats, other.mats)], check=False)

    def scaled(self, c) -> "ModuleMap":
        F = self.src.field
        return ModuleMap(self.src, self.tgt, [F.reduce(a * c) for a in self.mats], check=False)

    def is_zero(self) -> bool:
        return all(self.src.field.is_zero(m) for m in self.mats)

    def ranks(self) -> list[int]:
        return [rank(m, self.src.field) for m in self.mats]

    def is_injective(self) -> bool:
        return all(r == self.src.dim(v) for v, r in zip(self.src.alg.vertices, self.ranks()))

    def is_surjective(self) -> bool:
        return all(r == self.tgt.dim(v) for v, r in zip(self.src.alg.vertices, self.ranks()))

    def kernel_bases(self) -> list[np.ndarray]:
        return [kernel_matrix(m, self.src.field) for m in self.mats]

    def image_bases(self) -> list[np.ndarray]:
        F = self.src.field
        return [column_basis(m, F) for m in self.mats]

    def kernel(self) -> tuple[Module, "ModuleMap"]:
        return self.src.submodule(self.kernel_bases())

    def image(self) -> tuple[Module, "ModuleMap"]:
        return self.tgt.submodule(self.image_bases())

    def cokernel(self) -> tuple[Module, "ModuleMap"]:
        return self.tgt.quotient(self.image_bases())


def column_basis(m: np.ndarray, F) -> np.ndarray:
    """Leftmost independent columns of ``m``."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return m[:, :0]
    return m[:, independent_columns(m, F)]


# Projective and injective modules and maps between sums of projectives.


def projective_module(alg: MonomialAlgebra, i: int) -> Module:
    """``P_i``: basis at ``v`` is the nonzero paths ``v -> i``; an arrow prepends."""
    return projective_sum(alg, [i])


def projective_basis(alg: MonomialAlgebra, vertices: Sequence[int], u: int) -> list[tuple[int, int]]:
    """Basis of ``(P_{v_0} + P_{v_1} + ...)_u`` as ``(summand, path id)`` pairs."""
    return [(a, pid) for a, v in enumerate(vertices) for pid in alg.paths_between(u, v)]


def projective_sum(alg: MonomialAlgebra, vertices: Sequence[int]) -> Module:
    F = alg.field
    bases = {u: projective_basis(alg, vertices, u) for u in alg.vertices}
    pos = {u: {b: r for r, b in enumerate(bases[u])} for u in alg.vertices}
    maps = []
    for k, (s, t) in enumerate(alg.quiver.arrows):
        m = F.zeros((len(bases[s]), len(bases[t])))
        ap = alg.arrow_path[k]
        for col, (a, pid) in enumerate(bases[t]):
            r = alg.mul[ap, pid]
            if r >= 0:
                m[pos[s][(a, int(r))], col] = F.scalar(1)
        maps.append(m)
    return Module(alg, [len(bases[u]) for u in alg.vertices], maps, check=False)


def injective_module(alg: MonomialAlgebra, i: int) -> Module:
    """``I_i = D(e_i A)``: basis at ``u`` dual to the paths ``i -> u``."""
    return injective_sum(alg, [i])


def injective_sum(alg: MonomialAlgebra, vertices: Sequence[int]) -> Module:
    F = alg.field
    bases = {u: [(a, pid) for a, v in enumerate(vertices) for pid in alg.paths_between(v, u)] for u in alg.vertices}
    pos = {u: {b: r for r, b in enumerate(bases[u])} for u in alg.vertices}
    maps = []
    for k, (s, t) in enumerate(alg.quiver.arrows):
        m = F.zeros((len(bases[s]), len(bases[t])))
        ap = alg.arrow_path[k]
        for row, (a, pid) in enumerate(bases[s]):
            r = alg.mul[pid, ap]
            if r >= 0:
                m[row, pos[t][(a, int(r))]] = F.scalar(1)
        maps.append(m)
    return Module(alg, [len(bases[u]) for u in alg.vertices], maps, check=False)


def pathmatrix_to_map(alg: MonomialAlgebra, pm: np.ndarray, src_vertices, tgt_vertices,
                      src: Module | None = None, tgt: Module | None = None) -> ModuleMap:
    """Convert a path matrix (``pm[b, a, path]`` for ``P_{src[a]} -> P_{tgt[b]}``) to a module map."""
    F = alg.field
    src = src or projective_sum(alg, src_vertices)
    tgt = tgt or projective_sum(alg, tgt_vertices)
    mats = []
    for u in alg.vertices:
        sb = projective_basis(alg, src_vertices, u)
        tpos = {b: r for r, b in enumerate(projective_basis(alg, tgt_vertices, u))}
        m = F.zeros((len(tpos), len(sb)))
        for col, (a, q) in enumerate(sb):
            for b in range(len(tgt_vertices)):
                for pid in np.flatnonzero(pm[b, a]):
                    r = alg.mul[q, pid]
                    if r >= 0:
                        m[tpos[(b, int(r))], col] = F.reduce(m[tpos[(b, int(r))], col] + pm[b, a, pid])
        mats.append(m)
    return ModuleMap(src, tgt, mats, check=False)


def injective_pathmatrix_map(alg: MonomialAlgebra, pm: np.ndarray, src_vertices, tgt_vertices) -> ModuleMap:
    """Image under the Nakayama functor of the path matrix ``pm`` (``P_src -> P_tgt``).

    A path ``p: a -> b`` induces ``I_a -> I_b`` with ``(xi . p)(r) = xi(p r)``.
    """
    F = alg.field
    src = injective_sum(alg, src_vertices)
    tgt = injective_sum(alg, tgt_vertices)
    mats = []
    for u in alg.vertices:
        sb = {(a, pid): c for c, (a, pid) in
              enumerate((a, pid) for a, v in enumerate(src_vertices) for pid in alg.paths_between(v, u))}
        tb = [(b, pid) for b, v in enumerate(tgt_vertices) for pid in alg.paths_between(v, u)]
        m = F.zeros((len(tb), len(sb)))
        for row, (b, r) in enumerate(tb):
            for a in range(len(src_vertices)):
                for pid in np.flatnonzero(pm[b, a]):
                    pr = alg.mul[pid, r]
                    if pr >= 0:
                        c = sb[(a, int(pr))]
                        m[row, c] = F.reduce(m[row, c] + pm[b, a, pid])
        mats.append(m)
    return ModuleMap(src, tgt, mats, check=False)


def generators_to_pathmatrix(alg: MonomialAlgebra, images: Sequence[np.ndarray], src_vertices, tgt_vertices) -> np.ndarray:
    """Path matrix of the map sending the generator of ``P_{src[a]}`` to ``images[a]``."""
    F = alg.field
    pm = F.zeros((len(tgt_vertices), len(src_vertices), alg.dim))
    for a, v in enumerate(src_vertices):
        for coeff, (b, pid) in zip(images[a], projective_basis(alg, tgt_vertices, v)):
            if coeff != 0:
                pm[b, a, pid] = coeff
    return pm


def map_from_generators(alg: MonomialAlgebra, vertices: Sequence[int], tgt: Module,
                        images: Sequence[np.ndarray], src: Module | None = None) -> ModuleMap:
    """The map ``P_{v_0} + P_{v_1} + ... -> tgt`` sending generator ``a`` to ``images[a]``."""
    F = alg.field
    src = src or projective_sum(alg, vertices)
    mats = []
    for u in alg.vertices:
        cols = []
        for a, q in projective_basis(alg, vertices, u):
            path = alg.paths[q]
            cols.append(tgt.act(path.arrows, images[a]).reshape(-1, 1))
        mats.append(np.concatenate(cols, axis=1) if cols else F.zeros((tgt.dim(u), 0)))
    return ModuleMap(src, tgt, mats, check=False)


def lift_through(alg: MonomialAlgebra, vertices: Sequence[int], target_images: Sequence[np.ndarray],
                 g: ModuleMap) -> list[np.ndarray]:
    """Generator images ``x_a`` with ``g(x_a) = target_images[a]`` (projectivity lifting)."""
    F = alg.field
    out = []
    for a, v in enumerate(vertices):
        x = solve(g.mats[v - 1], target_images[a], F)
        if x is None:
            raise ModuleError(f"cannot lift generator {a} at vertex {v}: not in the image")
        out.append(x)
    return out


# Uniserial ("interval") modules over Nakayama algebras.


@dataclass(frozen=True)
class IntervalModule:
    """Uniserial module with socle ``S_socle`` and the given composition length.

    Over a linear Nakayama algebra this is the interval ``[socle, socle + length - 1]``
    (top at the larger vertex).
    """

    socle: int
    length: int

    @classmethod
    def closed(cls, a: int, b: int) -> "IntervalModule":
        if b < a:
            raise ModuleError(f"empty interval [{a},{b}]")
        return cls(a, b - a + 1)

    def vertices(self, alg: MonomialAlgebra) -> list[int]:
        """Socle-to-top vertex labels, following the arrows out of each vertex."""
        out = [self.socle]
        for _ in range(self.length - 1):
            arr = alg.quiver.arrows_out(out[-1])
            if len(arr) != 1:
                raise ModuleError(f"no unique arrow out of vertex {out[-1]}: not a Nakayama interval")
            out.append(alg.quiver.arrows[arr[0]][1])
        return out

    def top(self, alg: MonomialAlgebra) -> int:
        return self.vertices(alg)[-1]

    def to_module(self, alg: MonomialAlgebra) -> Module:
        F = alg.field
        verts = self.vertices(alg)
        # basis vector z_j sits at verts[j]; the arrow verts[j] -> verts[j+1] maps z_{j+1} to z_j
        local = {v: [j for j, w in enumerate(verts) if w == v] for v in alg.vertices}
        pos = {j: local[w].index(j) for j, w in enumerate(verts)}
        maps = []
        for k, (s, t) in enumerate(alg.quiver.arrows):
            m = F.zeros((len(local[s]), len(local[t])))
            for j in range(len(verts) - 1):
                if verts[j] == s and verts[j + 1] == t:
                    m[pos[j], pos[j + 1]] = F.scalar(1)
            maps.append(m)
        mod = Module(alg, [len(local[v]) for v in alg.vertices], maps, check=False)
        try:
            mod.validate()
        except ModuleError as exc:
            raise ModuleError(f"interval of length {self.length} at socle {self.socle} is not a module: {exc}")
        return mod


def interval_map(alg: MonomialAlgebra, src: IntervalModule, tgt: IntervalModule, rank: int,
                 src_module: Module | None = None, tgt_module: Module | None = None) -> ModuleMap:
    """The map sending the top ``rank`` factors of ``src`` onto the bottom ``rank`` of ``tgt``."""
    F = alg.field
    sv, tv = src.vertices(alg), tgt.vertices(alg)
    if not 0 <= rank <= min(len(sv), len(tv)):
        raise ModuleError(f"rank {rank} does not fit intervals of lengths {len(sv)} and {len(tv)}")
    if sv[len(sv) - rank:] != tv[:rank]:
        raise ModuleError("top of the source does not match the bottom of the target")
    M = src_module or src.to_module(alg)
    N = tgt_module or tgt.to_module(alg)

    def local(verts):
        seen: dict[int, int] = {}
        out = []
        for w in verts:
            out.append(seen.get(w, 0))
            seen[w] = seen.get(w, 0) + 1
        return out

    ls, lt = local(sv), local(tv)
    mats = [F.zeros((N.dim(v), M.dim(v))) for v in alg.vertices]
    for q in range(rank):
        a = len(sv) - rank + q
        mats[sv[a] - 1][lt[q], ls[a]] = F.scalar(1)
    f = ModuleMap(M, N, mats, check=False)
    f.validate()
    return f


def composition_series(alg: MonomialAlgebra, m: IntervalModule | Module) -> list[int]:
    """Top-to-socle composition factors."""
    if isinstance(m, IntervalModule):
        m = m.to_module(alg)
    return m.composition_series()


@dataclass
class ExactSequence:
    """``0 -> E_0 -> E_1 -> ... -> E_{m+1} -> 0`` with ``maps[i]: E_i -> E_{i+1}``."""

    modules: list[Module]
    maps: list[ModuleMap]

    @property
    def length(self) -> int:
        """``m``, the number of interior terms (the Ext degree of the class)."""
        return len(self.modules) - 2

    def check(self) -> None:
        if len(self.maps) != len(self.modules) - 1 or len(self.modules) < 2:
            raise ModuleError("sequence needs modules E_0..E_{m+1} and maps between consecutive ones")
        F = self.modules[0].field
        for i, f in enumerate(self.maps):
            if f.src.dims != self.modules[i].dims or f.tgt.dims != self.modules[i + 1].dims:
                raise ModuleError(f"map {i} does not go E_{i} -> E_{i+1}")
            f.validate()
        if not self.maps[0].is_injective():
            raise ModuleError("first map is not injective")
        if not self.maps[-1].is_surjective():
            raise ModuleError("last map is not surjective")
        for i in range(len(self.maps) - 1):
            g, f = self.maps[i + 1], self.maps[i]
            if not (g @ f).is_zero():
                raise ModuleError(f"maps {i}, {i + 1} do not compose to zero")
            for v, (rf, rg) in enumerate(zip(f.ranks(), g.ranks()), start=1):
                if rf + rg != self.modules[i + 1].dim(v):
                    raise ModuleError(f"not exact at E_{i + 1} (vertex {v})")

    def is_exact(self) -> bool:
        try:
            self.check()
        except ModuleError:
            return False
        return True

    def splice(self, other: "ExactSequence") -> "ExactSequence":
        """Yoneda splice ``self`` (ending at Y) after ``other`` (starting at Y).

        ``self: 0 -> X -> ... -> Y -> 0`` and ``other: 0 -> Y -> ... -> Z -> 0``
        give ``0 -> X -> ... -> E_m -> E'_1 -> ... -> Z -> 0``.
        """
        a, b = self, other
        if a.modules[-1].dims != b.modules[0].dims:
            raise ModuleError("end of the first sequence must be the start of the second")
        link = b.maps[0] @ a.maps[-1]
        mods = a.modules[:-1] + b.modules[1:]
        maps = a.maps[:-1] + [link] + b.maps[1:]
        return ExactSequence(mods, maps)


def short_exact(sub: ModuleMap, quo: ModuleMap) -> ExactSequence:
    return ExactSequence([sub.src, sub.tgt, quo.tgt], [sub, quo])
