"""Minimal A-infinity structure on Ext by homotopy transfer.

Tree recursion over the contraction of the Hom complex::

    lambda_2 = mu(iota x1, iota x2)
    lambda_k = sum_{s+t=k} sign(s, t) mu(H_s, H_t),   H_1 = -iota,  H_l = h lambda_l
    m_k = pi lambda_k

All values are memoized by input tuple. Inputs are Ext basis classes;
``m_k(x1, ..., xk)`` behaves like the composite ``x1 o ... o xk`` (``xk``
first) and is zero unless ``src(x_i) == tgt(x_{i+1})`` for all ``i``.
Degree-0 classes (identities) are strict units.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from ..exactla import FieldSpec
from ..quiveralg.algebra import MonomialAlgebra
from ..resolution.minres import ExtBasis, ExtTable, ext_table
from .contraction import Contraction
from .hom_complex import HomComplex

SCHEMA_VERSION = 1

Tuple = tuple[ExtBasis, ...]

def _tree_sign(s: int, left_deg: int, right_op_deg: int) -> int:
    """``(-1)^(s+1)`` times the Koszul sign of ``H_s (x) H_t`` passing ``x_1..x_s``."""
    e = s + 1 + right_op_deg * left_deg
    return -1 if e % 2 else 1


def composable(xs: Sequence[ExtBasis]) -> bool:
    return all(xs[k].src == xs[k + 1].tgt for k in range(len(xs) - 1))


def output_degree(xs: Sequence[ExtBasis]) -> int:
    return sum(x.n for x in xs) + 2 - len(xs)


class AInfinityStructure:
    """Operations ``m_2..m_{k_max}`` on ``Ext^*`` of a monomial algebra.

    ``ext`` is the Ext table through the truncation degree ``N`` of the Hom
    complex; values with output degree above ``trust`` are computed but
    flagged untrusted.
    """

    def __init__(self, C: HomComplex, K: Contraction, k_max: int, trust: int):
        self.C = C
        self.K = K
        self.alg: MonomialAlgebra = C.alg
        self.field: FieldSpec = C.field
        self.ext: ExtTable = C.ext
        self.k_max = k_max
        self.trust = trust
        self._lam: dict[Tuple, np.ndarray | None] = {}
        self._hlam: dict[Tuple, np.ndarray | None] = {}
        self._m: dict[Tuple, np.ndarray | None] = {}
        self.overrides: dict[Tuple, np.ndarray] = {}

    @property
    def bound(self) -> int:
        return self.C.bound

    # tree recursion

    def _block(self, xs: Tuple, shift: int) -> tuple[int, int, int]:
        return (xs[-1].src, xs[0].tgt, sum(x.n for x in xs) + shift - len(xs))

    def _lambda(self, xs: Tuple) -> np.ndarray | None:
        if xs in self._lam:
            return self._lam[xs]
        F = self.field
        blk = self._block(xs, 2)
        out = None
        if blk[2] <= self.bound:
            acc = self.C.zeros(*blk)
            k = len(xs)
            for s in range(1, k):
                left, right = xs[:s], xs[s:]
                a = self._hlambda(left)
                if a is None:
                    continue
                b = self._hlambda(right)
                if b is None:
                    continue
                lb, rb = self._hblock(left), self._hblock(right)
                prod, _ = self.C.product(a, lb, b, rb)
                sign = _tree_sign(s, sum(x.n for x in left), 1 - (k - s) if k - s > 1 else 0)
                acc = acc + prod if sign == 1 else acc - prod
            acc = F.reduce(acc)
            if not F.is_zero(acc):
                out = acc
        self._lam[xs] = out
        return out

    def _hblock(self, xs: Tuple) -> tuple[int, int, int]:
        if len(xs) == 1:
            x = xs[0]
            return (x.src, x.tgt, x.n)
        return self._block(xs, 1)

    def _hlambda(self, xs: Tuple) -> np.ndarray | None:
        if xs in self._hlam:
            return self._hlam[xs]
        F = self.field
        if len(xs) == 1:
            x = xs[0]
            out = F.reduce(-self.K.iota(x.src, x.tgt, x.n)[:, x.index])
        else:
            lam = self._lambda(xs)
            out = None
            if lam is not None:
                j, i, n = self._block(xs, 2)
                out = F.reduce(F.matmul(self.K.h(j, i, n), lam.reshape(-1, 1))[:, 0])
            if out is not None and F.is_zero(out):
                out = None
        self._hlam[xs] = out
        return out

    # operations

    def output_block(self, xs: Sequence[ExtBasis]) -> tuple[int, int, int]:
        """``(n, src, tgt)`` of the Ext block containing ``m_k(xs)``."""
        return (output_degree(xs), xs[-1].src, xs[0].tgt)

    def is_trusted(self, xs: Sequence[ExtBasis]) -> bool:
        return output_degree(xs) <= self.trust

    def m(self, xs: Sequence[ExtBasis]) -> np.ndarray:
        """Coordinates of ``m_k(xs)`` in its Ext block (``k = len(xs)``)."""
        xs = tuple(xs)
        k = len(xs)
        if k < 2:
            raise ValueError("operations start at arity 2")
        if k > self.k_max:
            raise ValueError(f"arity {k} exceeds k_max = {self.k_max}")
        F = self.field
        n, src, tgt = self.output_block(xs)
        dim = self.ext.dim(n, src, tgt) if 0 <= n <= self.ext.degree else 0
        if xs in self.overrides:
            return self.overrides[xs]
        if not composable(xs) or dim == 0:
            return F.zeros(dim)
        if xs in self._m:
            val = self._m[xs]
            return F.zeros(dim) if val is None else val
        val = self._compute_m(xs)
        self._m[xs] = None if F.is_zero(val) else val
        return val

    def _compute_m(self, xs: Tuple) -> np.ndarray:
        F = self.field
        n, src, tgt = self.output_block(xs)
        zeros = F.zeros(self.ext.dim(n, src, tgt))
        if any(x.n == 0 for x in xs):
            if len(xs) > 2:
                return zeros
            # unit laws for m_2
            a, b = xs
            other = b if a.n == 0 else a
            out = zeros.copy()
            out[other.index] = F.scalar(1)
            return out
        lam = self._lambda(xs)
        if lam is None:
            return zeros
        return F.reduce(F.matmul(self.K.pi(src, tgt, n), lam.reshape(-1, 1))[:, 0])

    def evaluate(self, inputs: Sequence[tuple[tuple[int, int, int], np.ndarray]]) -> tuple[tuple[int, int, int], np.ndarray]:
        """Multilinear extension: ``inputs`` are ``((n, src, tgt), coords)`` pairs."""
        F = self.field
        blocks = [b for b, _ in inputs]
        xs0 = [self.ext.block(*b) for b in blocks]
        n = sum(b[0] for b in blocks) + 2 - len(blocks)
        ob = (n, blocks[-1][1], blocks[0][2])
        out = F.zeros(self.ext.dim(*ob) if 0 <= n <= self.ext.degree else 0)
        supports = [[k for k in np.flatnonzero(v)] for _, v in inputs]
        for choice in iproduct(*supports):
            coef = F.scalar(1)
            for (_, v), k in zip(inputs, choice):
                coef = coef * v[k]
            xs = tuple(xs0[p][k] for p, k in enumerate(choice))
            val = self.m(xs)
            if len(val):
                out = F.reduce(out + coef * val)
        return ob, out

    def perturbed(self, xs: Sequence[ExtBasis], delta: np.ndarray) -> "AInfinityStructure":
        """Copy sharing all caches, with ``m(xs)`` shifted by ``delta``."""
        other = AInfinityStructure.__new__(AInfinityStructure)
        other.__dict__.update(self.__dict__)
        other.overrides = dict(self.overrides)
        xs = tuple(xs)
        other.overrides[xs] = self.field.reduce(self.m(xs) + delta)
        return other

    def positive_basis(self) -> list[ExtBasis]:
        return [e for e in self.ext.basis if 1 <= e.n <= self.trust]

    def composable_tuples(self, k: int, max_output: int | None = None) -> Iterable[Tuple]:
        """Composable tuples of positive-degree basis classes with output degree <= ``max_output``."""
        top = self.trust if max_output is None else max_output
        by_tgt: dict[int, list[ExtBasis]] = {}
        for e in self.positive_basis():
            by_tgt.setdefault(e.tgt, []).append(e)
        budget = top + k - 2

        def rec(prefix, used):
            if len(prefix) == k:
                yield tuple(prefix)
                return
            left = k - len(prefix) - 1
            pool = by_tgt.get(prefix[-1].src, []) if prefix else self.positive_basis()
            for e in pool:
                if used + e.n + left <= budget:
                    prefix.append(e)
                    yield from rec(prefix, used + e.n)
                    prefix.pop()

        yield from rec([], 0)

    def to_json(self, nonzero_only: bool = True) -> dict:
        F = self.field
        ops = []
        for k in range(2, self.k_max + 1):
            for xs in self.composable_tuples(k):
                val = self.m(xs)
                nz = [(int(c), val[c]) for c in np.flatnonzero(val)]
                if nonzero_only and not nz:
                    continue
                n, src, tgt = self.output_block(xs)
                blk = self.ext.block(n, src, tgt)
                ops.append({
                    "k": k,
                    "inputs": [x.label for x in xs],
                    "output": [[blk[c].label, F.format(v)] for c, v in nz],
                })
        return {
            "schema_version": SCHEMA_VERSION,
            "field": F.to_json(),
            "k_max": self.k_max,
            "trusted_degree": self.trust,
            "truncation": self.bound,
            "pivot_rule": self.K.pivot_rule,
            "basis": [e.label for e in self.ext.basis if e.n <= self.trust],
            "operations": ops,
        }


def transfer_minimal_model(alg: MonomialAlgebra, degree: int, k_max: int,
                           pivot_rule: str = "leftmost", bound: int | None = None,
                           verify: bool = True) -> AInfinityStructure:
    """Minimal model on ``Ext^{<= degree}``; the Hom complex is cut at ``degree + 2``."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    N = bound if bound is not None else degree + 2
    ext = ext_table(alg, N, res_bound=N)
    C = HomComplex(ext, N)
    K = Contraction(C, pivot_rule, verify=verify)
    return AInfinityStructure(C, K, k_max, degree)
