"""Quivers, monomial path algebras and Nakayama algebras.

Conventions
-----------
Vertices are numbered ``1..n``; arrows are numbered in list order from 0.
A path is written left to right, ``p·q`` meaning "first p, then q".
Modules over ``A = kQ/I`` are representations on which an arrow ``a: s -> t``
acts as a linear map ``M_t -> M_s``. Under this convention the indecomposable
projective at ``i`` is spanned by the nonzero paths *ending* at ``i`` (a path
``v -> i`` sits at vertex ``v``), and a linear Nakayama algebra with Kupisch
series ``c`` has projective ``P_i`` equal to the interval ``[i - c_i + 1, i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from ..exactla import FieldSpec


class AlgebraError(ValueError):
    """Raised for invalid quivers, relations or Kupisch series."""


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        for k, (s, t) in enumerate(self.arrows):
            if not (1 <= s <= self.n_vertices and 1 <= t <= self.n_vertices):
                raise AlgebraError(f"arrow {k} = ({s},{t}) has an endpoint outside 1..{self.n_vertices}")

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    def arrows_out(self, v: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == v]

    def arrows_in(self, v: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == v]

    def path(self, arrows: Sequence[int], vertex: int | None = None) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None:
                raise AlgebraError("a trivial path needs its vertex")
            return Path(vertex, vertex, ())
        for a, b in zip(arrows, arrows[1:]):
            if self.arrows[a][1] != self.arrows[b][0]:
                raise AlgebraError(f"arrows {a} and {b} are not composable")
        return Path(self.arrows[arrows[0]][0], self.arrows[arrows[-1]][1], arrows)


@dataclass(frozen=True)
class KupischSeries:
    """Composition lengths ``c_1..c_p`` of the indecomposable projectives."""

    c: tuple[int, ...]
    shape: str = "linear"

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def p(self) -> int:
        return len(self.c)

    def validate(self) -> None:
        c, p = self.c, len(self.c)
        if p == 0:
            raise AlgebraError("empty Kupisch series")
        if self.shape == "linear":
            if c[0] != 1:
                raise AlgebraError(f"linear Kupisch series needs c_1 = 1 (offending index 1, got {c[0]})")
            for i in range(1, p):
                if not 1 <= c[i] <= c[i - 1] + 1:
                    raise AlgebraError(
                        f"linear Kupisch series violates 1 <= c_{i+1} <= c_{i} + 1 "
                        f"(offending index {i + 1}: c = {list(c)})"
                    )
        elif self.shape == "cyclic":
            for i in range(p):
                if c[i] < 2:
                    raise AlgebraError(f"cyclic Kupisch series needs all c_i >= 2 (offending index {i + 1})")
            for i in range(p):
                j = (i + 1) % p
                if c[j] > c[i] + 1:
                    raise AlgebraError(
                        f"cyclic Kupisch series violates c_{j+1} <= c_{i+1} + 1 (offending index {j + 1})"
                    )
        else:
            raise AlgebraError(f"unknown Kupisch shape {self.shape!r}")


class MonomialAlgebra:
    """``kQ/I`` for ``I`` generated by paths of length >= 2, finite-dimensional.

    Use :func:`make_monomial` (or the Nakayama constructors) rather than the
    constructor, which assumes ``relations`` is already a minimal antichain.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Sequence[int]], field: FieldSpec,
                 kupisch: KupischSeries | None = None):
        self.quiver = quiver
        self.relations = tuple(sorted({tuple(r) for r in relations}, key=lambda r: (len(r), r)))
        self.field = field
        self.kupisch = kupisch
        self._relset = frozenset(self.relations)
        self._maxrel = max((len(r) for r in self.relations), default=0)
        self._enumerate_paths()

    def __repr__(self):
        if self.kupisch is not None:
            return f"Nakayama({self.kupisch.shape}, c={list(self.kupisch.c)}, {self.field})"
        return f"MonomialAlgebra(n={self.n}, arrows={list(self.quiver.arrows)}, relations={list(self.relations)})"

    @property
    def n(self) -> int:
        return self.quiver.n_vertices

    @property
    def vertices(self) -> range:
        return self.quiver.vertices

    def key(self) -> tuple:
        return (self.n, self.quiver.arrows, self.relations, self.field)

    def __eq__(self, other):
        return isinstance(other, MonomialAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def _has_relation_suffix(self, arrows: tuple[int, ...]) -> bool:
        for L in range(2, min(self._maxrel, len(arrows)) + 1):
            if arrows[-L:] in self._relset:
                return True
        return False

    def contains_relation(self, arrows: Sequence[int]) -> bool:
        arrows = tuple(arrows)
        return any(self._has_relation_suffix(arrows[:e]) for e in range(2, len(arrows) + 1))

    def _enumerate_paths(self):
        q = self.quiver
        bound = (1 + max(self._maxrel, 1)) * q.n_vertices
        paths = [Path(v, v, ()) for v in q.vertices]
        frontier = [Path(s, t, (k,)) for k, (s, t) in enumerate(q.arrows)]
        while frontier:
            paths.extend(frontier)
            nxt = []
            for pth in frontier:
                for k in q.arrows_out(pth.target):
                    arrows = pth.arrows + (k,)
                    if self._has_relation_suffix(arrows):
                        continue
                    if len(arrows) > bound:
                        raise AlgebraError(self._infinite_message(arrows))
                    nxt.append(Path(pth.source, q.arrows[k][1], arrows))
            frontier = nxt
        paths.sort(key=lambda p: (len(p), p.source, p.arrows))
        self.paths: list[Path] = paths
        self.index = {(p.source, p.arrows): i for i, p in enumerate(paths)}
        npaths = len(paths)
        mul = np.full((npaths, npaths), -1, dtype=np.int64)
        for i, p in enumerate(paths):
            for j, r in enumerate(paths):
                if p.target != r.source:
                    continue
                arrows = p.arrows + r.arrows
                mul[i, j] = self.index.get((p.source, arrows), -1)
        self.mul = mul
        between: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(paths):
            between.setdefault((p.source, p.target), []).append(i)
        self._between = between
        self.trivial = {v: self.index[(v, ())] for v in q.vertices}
        self.arrow_path = {k: self.index[(s, (k,))] for k, (s, _) in enumerate(q.arrows)}

    def _infinite_message(self, arrows):
        q = self.quiver
        verts = [q.arrows[arrows[0]][0]] + [q.arrows[a][1] for a in arrows]
        seen = {}
        for pos, v in enumerate(verts):
            if v in seen:
                cyc = arrows[seen[v]:pos]
                return (f"ideal is not admissible (algebra is infinite-dimensional): the cycle "
                        f"with arrows {list(cyc)} through vertices {verts[seen[v]:pos + 1]} "
                        f"contains no relation")
            seen[v] = pos
        return "ideal is not admissible (algebra is infinite-dimensional)"

    @property
    def dim(self) -> int:
        return len(self.paths)

    def paths_between(self, u: int, w: int) -> list[int]:
        """Indices of nonzero paths ``u -> w``, shortest first."""
        return self._between.get((u, w), [])

    def path_id(self, source: int, arrows: Sequence[int]) -> int:
        """Index of a path, or -1 if the path is zero in the algebra."""
        return self.index.get((source, tuple(arrows)), -1)

    def is_semisimple(self) -> bool:
        return not self.quiver.arrows

    @cached_property
    def cartan(self) -> np.ndarray:
        """``C[u-1, w-1]`` = number of nonzero paths ``u -> w``."""
        c = np.zeros((self.n, self.n), dtype=np.int64)
        for p in self.paths:
            c[p.source - 1, p.target - 1] += 1
        return c


def minimalize(relations: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Keep only relations containing no other relation as a subpath."""
    rels = sorted({tuple(r) for r in relations}, key=lambda r: (len(r), r))
    kept: list[tuple[int, ...]] = []
    for r in rels:
        if not any(_is_subpath(k, r) for k in kept):
            kept.append(r)
    return kept


def _is_subpath(small, big) -> bool:
    n, m = len(small), len(big)
    return any(big[i:i + n] == small for i in range(m - n + 1))


def make_monomial(quiver: Quiver, relations: Sequence[Sequence[int]],
                  field: FieldSpec | None = None) -> MonomialAlgebra:
    """Monomial algebra after reducing the relations to a minimal antichain.

    Raises :class:`AlgebraError` for relations that are not paths, relations
    of length < 2, or an ideal that leaves the algebra infinite-dimensional.
    """
    field = field or FieldSpec.prime()
    rels = []
    for r in relations:
        r = tuple(int(a) for a in r)
        if len(r) < 2:
            raise AlgebraError(f"relation {list(r)} has length < 2 (relations must lie in the square of the arrow ideal)")
        for a in r:
            if not 0 <= a < len(quiver.arrows):
                raise AlgebraError(f"relation {list(r)} uses unknown arrow {a}")
        quiver.path(r)
        rels.append(r)
    return MonomialAlgebra(quiver, minimalize(rels), field)


def _nakayama(c: KupischSeries, field: FieldSpec) -> MonomialAlgebra:
    c.validate()
    p = c.p
    if c.shape == "linear":
        arrows = [(i, i + 1) for i in range(1, p) if c.c[i] >= 2]
    else:
        arrows = [(i, i % p + 1) for i in range(1, p + 1)]
    quiver = Quiver(p, tuple(arrows))
    into = {t: k for k, (_, t) in enumerate(arrows)}
    rels = []
    for i in range(1, p + 1):
        # the path with c_i arrows ending at i must vanish
        path, v = [], i
        for _ in range(c.c[i - 1]):
            if v not in into:
                break
            k = into[v]
            path.append(k)
            v = arrows[k][0]
        else:
            rels.append(tuple(reversed(path)))
    alg = MonomialAlgebra(quiver, minimalize(rels), field, kupisch=c)
    for i in range(1, p + 1):
        got = sum(len(alg.paths_between(u, i)) for u in alg.vertices)
        if got != c.c[i - 1]:
            raise AlgebraError(f"projective at vertex {i} has length {got}, expected c_{i} = {c.c[i - 1]}")
    return alg


def make_nakayama_linear(c: Sequence[int] | KupischSeries, field: FieldSpec | None = None) -> MonomialAlgebra:
    """Nakayama algebra on ``1 -> 2 -> ... -> p`` with Kupisch series ``c``.

    An entry ``c_{i+1} = 1`` means the arrow ``i -> i+1`` is absent, so the
    quiver is the Gabriel quiver of the algebra.
    """
    if not isinstance(c, KupischSeries):
        c = KupischSeries(tuple(c), "linear")
    return _nakayama(c, field or FieldSpec.prime())


def make_nakayama_cyclic(c: Sequence[int] | KupischSeries, field: FieldSpec | None = None) -> MonomialAlgebra:
    """Nakayama algebra on the oriented cycle; ``c = [l]`` gives ``k[x]/(x^l)``."""
    if not isinstance(c, KupischSeries):
        c = KupischSeries(tuple(c), "cyclic")
    return _nakayama(c, field or FieldSpec.prime())


def truncated_polynomial(ell: int, field: FieldSpec | None = None) -> MonomialAlgebra:
    """``k[x]/(x^ell)``."""
    return make_nakayama_cyclic([ell], field)
