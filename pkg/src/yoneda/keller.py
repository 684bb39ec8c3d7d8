"""Nakayama algebras built from exact-sequence lengths and the checks run on them.

From ``0 -> S_a -> M_1 -> ... -> M_{d+1} -> S_b -> 0`` with uniserial
interior terms one gets a linear Nakayama algebra ``B`` whose simples are the
bottom row of the unfolded sequence. Over ``B`` the classes ``eta_i`` of the
almost split sequences between consecutive simples, the class ``eta`` of the
truncated sequence and the class ``gamma`` of the augmented resolution of
``S_p`` are related by a single higher operation ``m_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterator, Sequence

import numpy as np

from .exactla import FieldSpec, rref
from .quiveralg import (
    ExactSequence,
    IntervalModule,
    KupischSeries,
    Module,
    MonomialAlgebra,
    ar_translate_sequence,
    interval_map,
    make_nakayama_linear,
)
from .quiveralg.algebra import AlgebraError
from .quiveralg.module import ModuleError
from .resolution import ExtElement, ExtTable, yoneda_class_of_exact_sequence
from .transfer import SCHEMA_VERSION, AInfinityStructure


class KellerError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceLengths:
    """Composition lengths of the interior terms ``M_1..M_{d+1}``; ``N_i`` are derived."""

    lengths_M: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lengths_M", tuple(int(x) for x in self.lengths_M))
        M = self.lengths_M
        if len(M) < 2:
            raise KellerError("need at least two interior terms (d >= 1)")
        if any(x < 1 for x in M):
            raise KellerError("lengths must be positive")
        N = self.lengths_N
        for i, n in enumerate(N, start=1):
            if n < 1:
                rule = "len N_1 = len M_1 - 1" if i == 1 else f"len N_{i} = len M_{i} - len N_{i - 1}"
                raise KellerError(f"{rule} gives len N_{i} = {n} < 1 for lengths {list(M)}")
        if M[-1] != N[-1] + 1:
            raise KellerError(
                f"len M_{len(M)} = {M[-1]} but len N_{len(N)} + 1 = {N[-1] + 1} "
                f"(the last term must be an extension of a simple by N_{len(N)})")

    @property
    def d(self) -> int:
        return len(self.lengths_M) - 1

    @property
    def ell(self) -> int:
        return self.lengths_M[0]

    @property
    def lengths_N(self) -> tuple[int, ...]:
        M = self.lengths_M
        N = [M[0] - 1]
        for i in range(1, len(M) - 1):
            N.append(M[i] - N[-1])
        return tuple(N)

    @property
    def p(self) -> int:
        return sum(self.lengths_M) - sum(self.lengths_N)

    def socles(self) -> list[int]:
        """Socle vertex of each ``M_i`` in the bottom-row numbering."""
        out = [1]
        for L, n in zip(self.lengths_M, self.lengths_N):
            out.append(out[-1] + L - n)
        return out

    def to_json(self) -> dict:
        return {"d": self.d, "lengths_M": list(self.lengths_M), "lengths_N": list(self.lengths_N), "p": self.p}


def kupisch_from_sequence(lengths_M: Sequence[int] | SequenceLengths) -> tuple[KupischSeries, int]:
    s = lengths_M if isinstance(lengths_M, SequenceLengths) else SequenceLengths(tuple(lengths_M))
    M, N = s.lengths_M, s.lengths_N
    c = list(range(1, M[0] + 1))
    for i in range(1, s.d):
        c.extend(range(N[i - 1] + 1, M[i] + 1))
    c.append(M[-1])
    series = KupischSeries(tuple(c), "linear")
    series.validate()
    if len(c) != s.p:
        raise KellerError(f"series length {len(c)} differs from p = {s.p}")
    return series, s.p


def enumerate_lengths(d_max: int = 3, max_length: int = 5) -> Iterator[SequenceLengths]:
    """All valid length data with ``1 <= d <= d_max`` and every ``len M_i <= max_length``."""
    for d in range(1, d_max + 1):
        for head in iproduct(range(1, max_length + 1), repeat=d):
            try:
                N = [head[0] - 1]
                for i in range(1, d):
                    N.append(head[i] - N[-1])
                s = SequenceLengths(tuple(head) + (N[-1] + 1,))
            except KellerError:
                continue
            if s.lengths_M[-1] <= max_length:
                yield s


@dataclass
class BAlgebra:
    lengths: SequenceLengths
    series: KupischSeries
    alg: MonomialAlgebra

    @property
    def p(self) -> int:
        return self.lengths.p

    @property
    def ell(self) -> int:
        return self.lengths.ell

    @property
    def d(self) -> int:
        return self.lengths.d


def build_b(lengths_M: Sequence[int] | SequenceLengths, field: FieldSpec | None = None) -> BAlgebra:
    s = lengths_M if isinstance(lengths_M, SequenceLengths) else SequenceLengths(tuple(lengths_M))
    series, _ = kupisch_from_sequence(s)
    return BAlgebra(s, series, make_nakayama_linear(series, field or FieldSpec.prime()))


def _interval_sequence(alg: MonomialAlgebra, intervals: list[IntervalModule], ranks: list[int]) -> ExactSequence:
    """``0 -> S -> I_1 -> ... -> I_r -> S' -> 0`` through the given ranks of consecutive maps."""
    first, last = intervals[0], intervals[-1]
    ends = [IntervalModule(first.socle, 1), IntervalModule(last.top(alg), 1)]
    chain = [ends[0]] + intervals + [ends[1]]
    mods = [I.to_module(alg) for I in chain]
    all_ranks = [1] + ranks + [1]
    maps = [interval_map(alg, chain[k], chain[k + 1], all_ranks[k], mods[k], mods[k + 1])
            for k in range(len(chain) - 1)]
    seq = ExactSequence(mods, maps)
    seq.check()
    return seq


def realize_sequence(B: BAlgebra) -> ExactSequence:
    """``0 -> S_1 -> M_1 -> ... -> M_{d+1} -> S_p -> 0`` over ``B``."""
    s = B.lengths
    intervals = [IntervalModule(a, L) for a, L in zip(s.socles(), s.lengths_M)]
    return _interval_sequence(B.alg, intervals, list(s.lengths_N))


def eta_sequence(B: BAlgebra) -> ExactSequence:
    """``0 -> S_l -> M_2' -> M_3 -> ... -> M_{d+1} -> S_p -> 0``.

    ``M_2'`` is ``M_2`` with the bottom ``l - 2`` factors removed: the part of
    ``M_2`` cut out by the first column of the unfolded grid, whose socle is
    ``S_l``.
    """
    s = B.lengths
    soc = s.socles()
    ell = s.ell
    M2p = IntervalModule(soc[1] + ell - 2, s.lengths_M[1] - (ell - 2))
    intervals = [M2p] + [IntervalModule(a, L) for a, L in zip(soc[2:], s.lengths_M[2:])]
    ranks = list(s.lengths_N[1:])
    return _interval_sequence(B.alg, intervals, ranks)


def unfold_sequence(alg: MonomialAlgebra, seq: ExactSequence) -> tuple[SequenceLengths, list[int]]:
    """Length data and bottom-row simples (vertex labels) of a sequence with uniserial interior."""
    seq.check()
    mods = seq.modules
    if mods[0].simple_vertex() is None or mods[-1].simple_vertex() is None:
        raise KellerError("end terms must be simple")
    interior = mods[1:-1]
    for k, M in enumerate(interior, start=1):
        if not M.is_uniserial():
            raise KellerError(f"interior term M_{k} is not an interval module")
    lengths_M = [M.total_dim for M in interior]
    images = [sum(f.ranks()) for f in seq.maps[1:-1]]
    try:
        s = SequenceLengths(tuple(lengths_M))
    except KellerError as exc:
        raise KellerError(f"lengths do not satisfy the exactness recurrences: {exc}") from None
    if list(s.lengths_N) != images:
        raise KellerError(f"image lengths {images} differ from the recurrences {list(s.lengths_N)}")
    bottom = list(reversed(interior[0].composition_series()))
    for k in range(1, len(interior)):
        factors = list(reversed(interior[k].composition_series()))
        bottom.extend(factors[s.lengths_N[k - 1]:])
    if len(bottom) != s.p:
        raise KellerError(f"bottom row has {len(bottom)} simples, expected p = {s.p}")
    return s, bottom


def eta_classes(alg: MonomialAlgebra, ext: ExtTable) -> list[ExtElement]:
    """``eta_i`` in ``Ext^1(S_{i+1}, S_i)``: classes of the almost split sequences ending at ``S_{i+1}``."""
    out = []
    for i in range(1, alg.n):
        S = Module.simple(alg, i + 1)
        try:
            seq = ar_translate_sequence(alg, S)
        except (ModuleError, AlgebraError) as exc:
            raise KellerError(f"no almost split sequence ends at S_{i + 1}: {exc}") from None
        if seq.modules[0].simple_vertex() != i:
            raise KellerError(f"the translate of S_{i + 1} is not S_{i}")
        eta = yoneda_class_of_exact_sequence(alg, seq, ext)
        if eta.is_zero():
            raise KellerError(f"eta_{i} vanishes")
        out.append(eta)
    return out


def gamma_class(alg: MonomialAlgebra, ext: ExtTable, d: int | None = None) -> tuple[ExtElement, int]:
    """Generator of ``Ext^{d+1}(S_p, S_t)`` from the last term of the resolution of ``S_p``.

    Returns the class and its target index ``t``.
    """
    p = alg.n
    res = ext.resolutions[p]
    if not res.terminated:
        raise KellerError(f"S_{p} has projective dimension > {res.bound}")
    pd = res.length
    if d is not None and pd != d + 1:
        raise KellerError(f"S_{p} has projective dimension {pd}, expected {d + 1}")
    if pd == 0:
        raise KellerError(f"S_{p} is projective")
    if pd > ext.degree:
        raise KellerError(f"Ext table stops below degree {pd}")
    last = res.term(pd)
    if len(last) != 1:
        raise KellerError(f"degree-{pd} term of the resolution of S_{p} is not indecomposable")
    t = last[0]
    F = alg.field
    coords = F.zeros(ext.dim(pd, p, t))
    coords[0] = F.scalar(1)
    return ExtElement(pd, p, t, coords), t


def _as_input(x: ExtElement):
    return ((x.n, x.src, x.tgt), x.coords)


def proportionality(F: FieldSpec, v: np.ndarray, w: np.ndarray):
    """``c`` with ``v = c w`` if it exists (``w != 0``), else ``None``."""
    nz = np.flatnonzero(w)
    if not len(nz):
        return None
    c = F.reduce(np.array([v[nz[0]] * F.inv(w[nz[0]])], dtype=F.dtype))[0]
    if F.is_zero(F.reduce(v - c * w)):
        return c
    return None


@dataclass
class MEllReport:
    lengths: SequenceLengths
    scalar: object
    passed: bool
    value: list
    gamma: list
    gamma_target: int
    field: FieldSpec

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema_version": SCHEMA_VERSION,
            "lengths": self.lengths.to_json(),
            "ell": self.lengths.ell,
            "gamma_target": self.gamma_target,
            "value": [F.format(x) for x in self.value],
            "gamma": [F.format(x) for x in self.gamma],
            "scalar": None if self.scalar is None else F.format(self.scalar),
            "pass": self.passed,
        }


def check_m_ell_identity(B: BAlgebra, A: AInfinityStructure) -> MEllReport:
    """``m_l(eta_1, ..., eta_{l-1}, eta)`` must be a nonzero multiple of ``gamma``."""
    s = B.lengths
    ell, d = s.ell, s.d
    if A.k_max < ell:
        raise KellerError(f"need k_max >= {ell}, have {A.k_max}")
    if A.trust < d + 1:
        raise KellerError(f"need trusted degree >= {d + 1}, have {A.trust}")
    alg, ext, F = B.alg, A.ext, A.field
    etas = eta_classes(alg, ext)
    eta = yoneda_class_of_exact_sequence(alg, eta_sequence(B), ext)
    gamma, t = gamma_class(alg, ext, d)
    inputs = [_as_input(x) for x in etas[:ell - 1]] + [_as_input(eta)]
    _, value = A.evaluate(inputs)
    c = proportionality(F, value, gamma.coords)
    ok = c is not None and not F.is_zero(np.array([c], dtype=F.dtype))
    return MEllReport(s, c, ok, list(value), list(gamma.coords), t, F)


@dataclass
class VanishingReport:
    violations: list[dict] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "checked": self.checked,
                "violations": self.violations, "pass": self.passed}


def check_vanishing_groups(B: BAlgebra, ext: ExtTable) -> VanishingReport:
    """``Ext^2(S_{j+1}, S_i) = 0`` for ``1 <= i < j < l`` and ``Ext^{d+1}(S_p, S_i) = 0`` for ``1 < i < l``."""
    ell, d, p = B.ell, B.d, B.p
    if ext.degree < max(2, d + 1):
        raise KellerError(f"Ext table must reach degree {max(2, d + 1)}")
    rep = VanishingReport()
    for i in range(1, ell):
        for j in range(i + 1, ell):
            rep.checked += 1
            dim = ext.dim(2, j + 1, i)
            if dim:
                rep.violations.append({"group": f"Ext^2(S_{j + 1},S_{i})", "i": i, "j": j, "dim": dim})
    for i in range(2, ell):
        rep.checked += 1
        dim = ext.dim(d + 1, p, i)
        if dim:
            rep.violations.append({"group": f"Ext^{d + 1}(S_{p},S_{i})", "i": i, "dim": dim})
    return rep


# generation by degrees 0 and 1


@dataclass
class ClosureVector:
    block: tuple[int, int, int]
    coords: np.ndarray
    tree: dict


@dataclass
class GenerationReport:
    trusted_degree: int
    k_max: int
    dim_ext: dict[int, int]
    dim_closure: dict[int, int]
    history: list[dict[int, int]]
    witnesses: dict[int, list[dict]]
    seed: int | None

    @property
    def passed(self) -> bool:
        return all(self.dim_closure[n] == self.dim_ext[n] for n in self.dim_ext if n >= 2)

    @property
    def iterations(self) -> int:
        return len(self.history) - 1

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "trusted_degree": self.trusted_degree,
            "k_max": self.k_max,
            "seed": self.seed,
            "iterations": self.iterations,
            "history": [{str(n): v for n, v in sorted(h.items())} for h in self.history],
            "degrees": [
                {
                    "degree": n,
                    "dim_ext": self.dim_ext[n],
                    "dim_closure": self.dim_closure[n],
                    "pass": self.dim_closure[n] == self.dim_ext[n],
                    "witnesses": self.witnesses.get(n, []),
                }
                for n in sorted(self.dim_ext)
            ],
            "pass": self.passed,
        }


class _BlockSpan:
    """Incrementally maintained span inside one Ext block."""

    def __init__(self, F: FieldSpec, dim: int):
        self.F = F
        self.dim = dim
        self.vectors: list[ClosureVector] = []
        self._mat = F.zeros((0, dim))

    @property
    def full(self) -> bool:
        return len(self.vectors) == self.dim

    def add(self, cv: ClosureVector) -> bool:
        if self.full:
            return False
        m = np.concatenate([self._mat, cv.coords.reshape(1, -1)], axis=0)
        r, _, _ = rref(m.T.copy(), self.F)
        if r == len(self.vectors):
            return False
        self._mat = m
        self.vectors.append(cv)
        return True

    def express(self, target: np.ndarray):
        from .exactla import solve
        return solve(self._mat.T.copy(), target, self.F)


def generation_closure(A: AInfinityStructure, seed: int | None = 0, sample: int = 3,
                       max_iterations: int | None = None) -> GenerationReport:
    """Span of iterated ``m_k`` (``2 <= k <= k_max``) applied to degrees 0 and 1.

    Degree-0 classes are strict units, so only ``m_2`` sees them and it
    reproduces its other argument; the closure is therefore driven by degree 1.
    Tuples are evaluated on closure vectors, so each new vector carries a
    tree of operations ending in Ext^1 basis classes.
    """
    F, ext, D = A.field, A.ext, A.trust
    spans: dict[tuple[int, int, int], _BlockSpan] = {}
    for key, blk in ext.blocks.items():
        if key[0] <= D and blk:
            spans[key] = _BlockSpan(F, len(blk))
    for key, sp in spans.items():
        if key[0] <= 1:
            for e in ext.blocks[key]:
                v = F.zeros(len(ext.blocks[key]))
                v[e.index] = F.scalar(1)
                sp.add(ClosureVector(key, v, {"class": e.label}))

    def dims():
        out = {n: 0 for n in range(D + 1)}
        for (n, _, _), sp in spans.items():
            out[n] += len(sp.vectors)
        return out

    history = [dims()]
    done: set[tuple] = set()
    limit = max_iterations if max_iterations is not None else D + 1
    for _ in range(limit):
        pool = [(key, idx, sp.vectors[idx]) for key, sp in sorted(spans.items())
                if key[0] >= 1 for idx in range(len(sp.vectors))]
        by_tgt: dict[int, list] = {}
        for item in pool:
            by_tgt.setdefault(item[0][2], []).append(item)
        changed = False
        for k in range(2, A.k_max + 1):
            budget = D + k - 2
            found = []

            def rec(prefix, used):
                if len(prefix) == k:
                    found.append(tuple(prefix))
                    return
                left = k - len(prefix) - 1
                cands = by_tgt.get(prefix[-1][0][1], []) if prefix else pool
                for item in cands:
                    if used + item[0][0] + left <= budget:
                        prefix.append(item)
                        rec(prefix, used + item[0][0])
                        prefix.pop()

            rec([], 0)
            for tup in found:
                ident = tuple((it[0], it[1]) for it in tup)
                if ident in done:
                    continue
                done.add(ident)
                out_key = (sum(it[0][0] for it in tup) + 2 - k, tup[-1][0][1], tup[0][0][2])
                sp = spans.get(out_key)
                if sp is None or sp.full:
                    continue
                _, val = A.evaluate([(it[0], it[2].coords) for it in tup])
                if F.is_zero(val):
                    continue
                tree = {"op": f"m{k}", "inputs": [it[2].tree for it in tup]}
                if sp.add(ClosureVector(out_key, val, tree)):
                    changed = True
        history.append(dims())
        if not changed:
            break

    dim_ext = {n: ext.total_dim(n) for n in range(D + 1)}
    dim_closure = history[-1]
    rng = np.random.Generator(np.random.Philox(seed)) if seed is not None else None
    witnesses: dict[int, list[dict]] = {}
    for n in range(2, D + 1):
        classes = [e for e in ext.basis if e.n == n]
        if rng is not None and len(classes) > sample:
            pick = sorted(rng.choice(len(classes), size=sample, replace=False).tolist())
            classes = [classes[c] for c in pick]
        else:
            classes = classes[:sample]
        for e in classes:
            key = (e.n, e.src, e.tgt)
            sp = spans[key]
            target = F.zeros(sp.dim)
            target[e.index] = F.scalar(1)
            coef = sp.express(target) if sp.vectors else None
            if coef is None:
                witnesses.setdefault(n, []).append({"class": e.label, "tree": None})
                continue
            combo = [[F.format(c), sp.vectors[q].tree] for q, c in enumerate(coef) if c != 0]
            witnesses.setdefault(n, []).append({"class": e.label, "tree": combo})
    return GenerationReport(D, A.k_max, dim_ext, dim_closure, history, witnesses, seed)
