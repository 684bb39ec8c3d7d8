"""Exact check of the Stasheff identities of an :class:`AInfinityStructure`.

For composable positive-degree basis tuples of arity ``k`` the residual is::

    sum_{r+s+t=k, s>=2, r+t>=1} (-1)^(r + s t + s (|x_1| + ... + |x_r|))
        m_{r+1+t}(x_1, ..., x_r, m_s(x_{r+1}, ..., x_{r+s}), ..., x_k)

and must vanish identically. Only tuples whose output lies in trusted
degrees are checked; all operations involved then lie in trusted degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ainfinity import SCHEMA_VERSION, AInfinityStructure


@dataclass
class StasheffReport:
    arities: list[int]
    checked: dict[int, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "arities": self.arities,
            "checked": {str(k): v for k, v in sorted(self.checked.items())},
            "failures": self.failures,
        }


def stasheff_residual(A: AInfinityStructure, xs):
    F = A.field
    k = len(xs)
    out_block = A.output_block(xs)
    acc = None
    for s in range(2, k):
        for r in range(0, k - s + 1):
            t = k - r - s
            inner = xs[r:r + s]
            val = A.m(inner)
            if not len(val) or F.is_zero(val):
                continue
            eps = r + s * t + s * sum(x.n for x in xs[:r])
            inputs = [((x.n, x.src, x.tgt), _unit(F, A, x)) for x in xs[:r]]
            inputs.append((A.output_block(inner), val))
            inputs += [((x.n, x.src, x.tgt), _unit(F, A, x)) for x in xs[r + s:]]
            _, term = A.evaluate(inputs)
            if acc is None:
                acc = F.zeros(len(term))
            acc = F.reduce(acc - term if eps % 2 else acc + term)
    if acc is None:
        acc = F.zeros(A.ext.dim(*out_block) if out_block[0] <= A.ext.degree else 0)
    return acc


def _unit(F, A, x):
    v = F.zeros(A.ext.dim(x.n, x.src, x.tgt))
    v[x.index] = F.scalar(1)
    return v


def check_stasheff(A: AInfinityStructure, max_arity: int | None = None,
                   max_failures: int = 20) -> StasheffReport:
    """Check arities ``3..max_arity`` (default ``k_max + 1``)."""
    top = A.k_max + 1 if max_arity is None else max_arity
    if top > A.k_max + 1:
        raise ValueError("identities above k_max + 1 involve operations that were not built")
    rep = StasheffReport(list(range(3, top + 1)))
    F = A.field
    for k in range(3, top + 1):
        n = 0
        for xs in A.composable_tuples(k):
            n += 1
            res = stasheff_residual(A, xs)
            if not F.is_zero(res):
                if len(rep.failures) < max_failures:
                    rep.failures.append({
                        "arity": k,
                        "inputs": [x.label for x in xs],
                        "residual": [F.format(v) for v in res],
                    })
                else:
                    break
        rep.checked[k] = n
    return rep
