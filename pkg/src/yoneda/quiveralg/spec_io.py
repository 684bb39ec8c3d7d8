"""Algebra specifications as JSON documents.

``{"field": {"kind": "prime", "p": 32003}, "algebra": {...}}`` where the
algebra is one of ``{"kind": "kupisch_linear", "c": [...]}``,
``{"kind": "kupisch_cyclic", "c": [...]}`` or
``{"kind": "monomial", "vertices": n, "arrows": [[s, t], ...], "relations": [[arrow, ...], ...]}``.
"""

from __future__ import annotations

from typing import Any

from ..exactla import FieldSpec
from .algebra import (
    AlgebraError,
    MonomialAlgebra,
    Quiver,
    make_monomial,
    make_nakayama_cyclic,
    make_nakayama_linear,
)


def field_from_json(doc: Any) -> FieldSpec:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise AlgebraError("field must be an object with a 'kind'")
    kind = doc["kind"]
    try:
        if kind == "prime":
            return FieldSpec.prime(int(doc.get("p", 32003)))
        if kind == "rational":
            return FieldSpec.rational()
    except (TypeError, ValueError) as exc:
        raise AlgebraError(f"bad field: {exc}") from None
    raise AlgebraError(f"unknown field kind {kind!r}")


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise AlgebraError(f"{what} must be a list of integers")
    return list(x)


def algebra_from_json(doc: Any, field: FieldSpec | None = None) -> MonomialAlgebra:
    """Build the algebra; an explicit ``field`` overrides the document's."""
    if not isinstance(doc, dict) or "algebra" not in doc:
        raise AlgebraError("specification needs an 'algebra' object")
    if field is None:
        field = field_from_json(doc["field"]) if "field" in doc else FieldSpec.prime()
    a = doc["algebra"]
    if not isinstance(a, dict):
        raise AlgebraError("'algebra' must be an object")
    kind = a.get("kind")
    if kind == "kupisch_linear":
        return make_nakayama_linear(_int_list(a.get("c"), "c"), field)
    if kind == "kupisch_cyclic":
        return make_nakayama_cyclic(_int_list(a.get("c"), "c"), field)
    if kind == "monomial":
        n = a.get("vertices")
        if not isinstance(n, int) or n < 1:
            raise AlgebraError("'vertices' must be a positive integer")
        arrows = a.get("arrows", [])
        if not isinstance(arrows, list):
            raise AlgebraError("'arrows' must be a list of [source, target] pairs")
        arr = []
        for e in arrows:
            pair = _int_list(e, "arrow")
            if len(pair) != 2:
                raise AlgebraError("each arrow is a [source, target] pair")
            arr.append(tuple(pair))
        rels = [_int_list(r, "relation") for r in a.get("relations", [])]
        return make_monomial(Quiver(n, tuple(arr)), rels, field)
    raise AlgebraError(f"unknown algebra kind {kind!r}")


def algebra_to_json(alg: MonomialAlgebra) -> dict:
    if alg.kupisch is not None:
        kind = "kupisch_linear" if alg.kupisch.shape == "linear" else "kupisch_cyclic"
        body = {"kind": kind, "c": list(alg.kupisch.c)}
    else:
        body = {
            "kind": "monomial",
            "vertices": alg.n,
            "arrows": [list(a) for a in alg.quiver.arrows],
            "relations": [list(r) for r in alg.relations],
        }
    return {"field": alg.field.to_json(), "algebra": body}
