"""Combinatorial chains (associated paths) of a monomial algebra.

Chains are built right to left, matching the module convention: a degree-n
chain ``c_n = q . c_{n-1}`` prepends the shortest nonzero path ``q`` such
that ``q . w`` contains a relation, where ``w`` is the segment prepended at
the previous step. The count of degree-n chains from ``i`` to ``j`` equals
``dim Ext^n(S_j, S_i)``; this module never touches linear algebra, so it is
an independent check of the resolutions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..quiveralg.algebra import MonomialAlgebra


@dataclass(frozen=True)
class Chain:
    n: int
    path: tuple[int, ...]   # arrows, left to right
    source: int
    target: int
    last: tuple[int, ...]   # segment prepended in the final step


def _source(alg, arrows, default):
    return alg.quiver.arrows[arrows[0]][0] if arrows else default


def _nonzero(alg: MonomialAlgebra, arrows) -> bool:
    return not alg.contains_relation(arrows)


def _extend(alg: MonomialAlgebra, ch: Chain) -> list[Chain]:
    w = ch.last
    out = []
    for rel in alg.relations:
        for k in range(1, min(len(w), len(rel) - 1) + 1):
            if rel[-k:] != w[:k]:
                continue
            q = rel[:-k]
            if _nonzero(alg, q[1:] + w):
                out.append(Chain(ch.n + 1, q + ch.path, alg.quiver.arrows[q[0]][0], ch.target, q))
    return out


def bardzell_chains(alg: MonomialAlgebra, n: int) -> list[Chain]:
    """All degree-``n`` chains, sorted by (target, source, path)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    level = [Chain(0, (), v, v, ()) for v in alg.vertices]
    if n >= 1:
        level = [Chain(1, (k,), s, t, (k,)) for k, (s, t) in enumerate(alg.quiver.arrows)]
        for _ in range(n - 1):
            level = [c for ch in level for c in _extend(alg, ch)]
    return sorted(level, key=lambda c: (c.target, c.source, c.path))


def chain_counts(alg: MonomialAlgebra, n: int) -> dict[tuple[int, int], int]:
    """``{(j, i): #chains i -> j}``, which should equal ``dim Ext^n(S_j, S_i)``."""
    out: dict[tuple[int, int], int] = {}
    for c in bardzell_chains(alg, n):
        out[(c.target, c.source)] = out.get((c.target, c.source), 0) + 1
    return out
