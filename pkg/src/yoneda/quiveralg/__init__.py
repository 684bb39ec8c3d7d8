"""Quivers, monomial and Nakayama algebras, modules and AR sequences."""

from .algebra import (
    AlgebraError,
    KupischSeries,
    MonomialAlgebra,
    Path,
    Quiver,
    make_monomial,
    make_nakayama_cyclic,
    make_nakayama_linear,
    minimalize,
    truncated_polynomial,
)
from .spec_io import algebra_from_json, algebra_to_json, field_from_json
from .ar import ar_translate, ar_translate_sequence, minimal_presentation
from .module import (
    ExactSequence,
    IntervalModule,
    Module,
    ModuleError,
    ModuleMap,
    composition_series,
    injective_module,
    interval_map,
    map_from_generators,
    projective_module,
    projective_sum,
    short_exact,
)

__all__ = [
    "algebra_from_json", "algebra_to_json", "field_from_json",
    "AlgebraError", "ExactSequence", "IntervalModule", "KupischSeries", "Module", "ModuleError",
    "ModuleMap", "MonomialAlgebra", "Path", "Quiver", "ar_translate", "ar_translate_sequence",
    "composition_series", "injective_module", "interval_map", "make_monomial", "make_nakayama_cyclic",
    "make_nakayama_linear", "map_from_generators", "minimal_presentation", "minimalize",
    "projective_module", "projective_sum", "short_exact", "truncated_polynomial",
]
