"""Exhaustive enumerations of Kupisch series driving the batch checks."""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterator

from .quiveralg import KupischSeries

MAX_P = 12


def enumerate_kupisch(p_max: int) -> Iterator[KupischSeries]:
    """Linear admissible series of length ``1..p_max`` in lexicographic order."""
    if not 1 <= p_max <= MAX_P:
        raise ValueError(f"p_max must be in 1..{MAX_P}")
    out = []

    def rec(c):
        out.append(tuple(c))
        if len(c) == p_max:
            return
        for nxt in range(1, c[-1] + 2):
            c.append(nxt)
            rec(c)
            c.pop()

    rec([1])
    for c in sorted(out):
        yield KupischSeries(c, "linear")


def enumerate_cyclic(p_max: int, c_max: int) -> Iterator[KupischSeries]:
    """Cyclic admissible series with ``2 <= c_i <= c_max`` in lexicographic order.

    Rotations are kept as separate entries: they give isomorphic algebras
    with relabelled vertices, which is itself a useful consistency check.
    """
    if not 1 <= p_max <= MAX_P:
        raise ValueError(f"p_max must be in 1..{MAX_P}")
    for p in range(1, p_max + 1):
        for c in iproduct(range(2, c_max + 1), repeat=p):
            if all(c[(i + 1) % p] <= c[i] + 1 for i in range(p)):
                yield KupischSeries(c, "cyclic")
