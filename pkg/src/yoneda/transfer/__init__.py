"""Hom-complex DG algebra, contraction onto Ext, and the transferred A-infinity structure."""

from .ainfinity import (
    SCHEMA_VERSION,
    AInfinityStructure,
    composable,
    output_degree,
    transfer_minimal_model,
)
from .contraction import PIVOT_RULES, BlockContraction, Contraction, ContractionError, contraction
from .hom_complex import BasisElement, HomComplex, HomComplexError, hom_complex
from .stasheff import StasheffReport, check_stasheff, stasheff_residual

__all__ = [
    "SCHEMA_VERSION", "AInfinityStructure", "composable", "output_degree", "transfer_minimal_model",
    "PIVOT_RULES", "BlockContraction", "Contraction", "ContractionError", "contraction",
    "BasisElement", "HomComplex", "HomComplexError", "hom_complex",
    "StasheffReport", "check_stasheff", "stasheff_residual",
]
