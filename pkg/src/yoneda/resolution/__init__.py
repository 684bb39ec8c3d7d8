"""Minimal resolutions, Ext tables, combinatorial chains and Yoneda classes."""

from ..quiveralg.module import ExactSequence as ExactSequenceData
from .chains import Chain, bardzell_chains, chain_counts
from .minres import ExtBasis, ExtTable, Resolution, ResolutionError, ext_table, minimal_resolution
from .yoneda import ExtElement, exact_sequence_of_class, yoneda_class_of_exact_sequence

__all__ = [
    "Chain", "ExactSequenceData", "ExtBasis", "ExtElement", "ExtTable", "Resolution",
    "ResolutionError", "bardzell_chains", "chain_counts", "ext_table", "minimal_resolution",
    "yoneda_class_of_exact_sequence",
    "exact_sequence_of_class",
]
