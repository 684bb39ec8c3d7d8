"""Blockwise strong deformation retract of the Hom complex onto Ext.

For each block ``src -> tgt`` and degree ``n >= 1``:

* ``L^n`` is spanned by the pivot coordinates of ``d^n`` (leftmost pivots by
  default, or rightmost with ``pivot_rule="reversed"``); it is a complement
  of the cocycles ``Z^n``.
* ``rho`` reads the coefficient of the trivial path in the component
  ``P(src)_n -> P(tgt)_0``; it is an isomorphism ``H^n -> Ext^n``.
* ``iota`` sends an Ext basis class to the unique cocycle in the canonical
  kernel basis span with ``rho`` equal to that class.
* ``pi = rho (1 - E_L G d)`` with ``G`` a left inverse of ``d`` on ``L``.
* ``h`` solves ``d l = x - E_L G d x - iota pi x`` inside ``L^{n-1}``, negated.

Degree 0 carries only the identity maps: they are treated as strict units,
so there ``iota`` is the identity chain map and no ``pi`` is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactla import kernel_matrix, left_inverse, rref, solve
from .hom_complex import HomComplex, HomComplexError


class ContractionError(RuntimeError):
    pass


PIVOT_RULES = ("leftmost", "reversed")


@dataclass
class BlockContraction:
    src: int
    tgt: int
    iota: dict[int, np.ndarray] = dc_field(default_factory=dict)   # n -> (dim C^n, dim Ext^n)
    pi: dict[int, np.ndarray] = dc_field(default_factory=dict)     # n -> (dim Ext^n, dim C^n)
    h: dict[int, np.ndarray] = dc_field(default_factory=dict)      # n -> (dim C^{n-1}, dim C^n)


class Contraction:
    """``(iota, pi, h)`` for every block of a :class:`HomComplex`."""

    def __init__(self, C: HomComplex, pivot_rule: str = "leftmost", verify: bool = True):
        if pivot_rule not in PIVOT_RULES:
            raise ValueError(f"unknown pivot rule {pivot_rule!r}; expected one of {PIVOT_RULES}")
        self.C = C
        self.field = C.field
        self.pivot_rule = pivot_rule
        self.blocks: dict[tuple[int, int], BlockContraction] = {}
        for j in C.alg.vertices:
            for i in C.alg.vertices:
                self.blocks[(j, i)] = self._build(j, i)
                if verify:
                    self.verify_block(j, i)

    def _build(self, j: int, i: int) -> BlockContraction:
        C, F, N = self.C, self.field, self.C.bound
        rev = self.pivot_rule == "reversed"

        def perm(n):
            return np.arange(C.dim(j, i, n))[::-1] if rev else np.arange(C.dim(j, i, n))

        # work in (possibly reversed) coordinates, map back at the end
        D, lam, piv, ginv = {}, {}, {}, {}
        for n in range(N + 1):
            Dn = C.differential_matrix(j, i, n) if n < N else F.zeros((0, C.dim(j, i, n)))
            Dn = Dn[np.ix_(perm(n + 1), perm(n))] if n < N else Dn
            D[n] = Dn
            _, pivots, _ = rref(Dn, F)
            rows, inv = left_inverse(Dn[:, pivots], F)
            piv[n], ginv[n] = pivots, (rows, inv)
            dim = Dn.shape[1]
            L = F.zeros((dim, dim))
            if pivots:
                L[np.ix_(pivots, np.arange(dim))] = F.matmul(inv, Dn[rows, :])
            lam[n] = L
        out = BlockContraction(j, i)
        if j == i:
            out.iota[0] = C.unit(i)[perm(0)].reshape(-1, 1)
        for n in range(1, N + 1):
            dim = C.dim(j, i, n)
            rho = C.ext_projection(j, i, n)[:, perm(n)]
            e = rho.shape[0]
            Z = kernel_matrix(D[n], F)
            b = len(piv[n - 1])
            if Z.shape[1] - b != e:
                raise ContractionError(
                    f"H^{n} of block {j}->{i} has dimension {Z.shape[1] - b}, expected {e}")
            rz = F.matmul(rho, Z)
            y = solve(rz, F.eye(e), F)
            if y is None:
                raise ContractionError(f"rho is not onto Ext^{n} on block {j}->{i}")
            iota = F.matmul(Z, y)
            pi = F.matmul(rho, F.reduce(F.eye(dim) - lam[n]))
            resid = F.reduce(F.eye(dim) - lam[n] - F.matmul(iota, pi))
            rows, inv = ginv[n - 1]
            h = F.zeros((C.dim(j, i, n - 1), dim))
            if piv[n - 1]:
                h[piv[n - 1], :] = F.reduce(-F.matmul(inv, resid[rows, :]))
            elif not F.is_zero(resid):
                raise ContractionError(f"homotopy target is not a coboundary on block {j}->{i}")
            if rev:
                iota = iota[perm(n), :]
                pi = pi[:, perm(n)]
                h = h[np.ix_(perm(n - 1), perm(n))]
            out.iota[n], out.pi[n], out.h[n] = iota, pi, h
        if rev and 0 in out.iota:
            out.iota[0] = out.iota[0][perm(0), :]
        return out

    def verify_block(self, j: int, i: int) -> None:
        """Exact check of the retract identities on one block."""
        C, F, N = self.C, self.field, self.C.bound
        bc = self.blocks[(j, i)]

        def dmat(n):
            if n < 0 or n >= N:
                return F.zeros((C.dim(j, i, n + 1), C.dim(j, i, n)))
            return C.differential_matrix(j, i, n)

        def hmat(n):
            if n in bc.h:
                return bc.h[n]
            return F.zeros((C.dim(j, i, n - 1), C.dim(j, i, n)))

        for n in range(1, N + 1):
            e = bc.pi[n].shape[0]
            if not F.is_zero(F.reduce(F.matmul(bc.pi[n], bc.iota[n]) - F.eye(e))):
                raise ContractionError(f"pi iota != 1 on block {j}->{i}, degree {n}")
            if not F.is_zero(F.matmul(dmat(n), bc.iota[n])):
                raise ContractionError(f"iota is not a cocycle on block {j}->{i}, degree {n}")
            lhs = F.reduce(F.matmul(bc.iota[n], bc.pi[n]) - F.eye(C.dim(j, i, n)))
            rhs = F.matmul(dmat(n - 1), hmat(n))
            if n + 1 <= N:
                rhs = rhs + F.matmul(hmat(n + 1), dmat(n))
            if not F.is_zero(F.reduce(lhs - F.reduce(rhs))):
                raise ContractionError(f"iota pi - 1 != dh + hd on block {j}->{i}, degree {n}")
            if not F.is_zero(F.matmul(hmat(n), bc.iota[n])):
                raise ContractionError(f"h iota != 0 on block {j}->{i}, degree {n}")
            if n >= 2:
                if not F.is_zero(F.matmul(bc.pi[n - 1], hmat(n))):
                    raise ContractionError(f"pi h != 0 on block {j}->{i}, degree {n}")
                if not F.is_zero(F.matmul(hmat(n - 1), hmat(n))):
                    raise ContractionError(f"h h != 0 on block {j}->{i}, degree {n}")

    def iota(self, j: int, i: int, n: int) -> np.ndarray:
        bc = self.blocks[(j, i)]
        if n in bc.iota:
            return bc.iota[n]
        return self.field.zeros((self.C.dim(j, i, n), 0))

    def pi(self, j: int, i: int, n: int) -> np.ndarray:
        bc = self.blocks[(j, i)]
        if n not in bc.pi:
            raise HomComplexError(f"no projection in degree {n}")
        return bc.pi[n]

    def h(self, j: int, i: int, n: int) -> np.ndarray:
        bc = self.blocks[(j, i)]
        if n in bc.h:
            return bc.h[n]
        return self.field.zeros((self.C.dim(j, i, n - 1), self.C.dim(j, i, n)))


def contraction(C: HomComplex, pivot_rule: str = "leftmost", verify: bool = True) -> Contraction:
    return Contraction(C, pivot_rule, verify)
