"""Exact linear algebra over Q and GF(p)."""

from .field import DEFAULT_PRIME, FieldSpec
from .kernels import BACKEND
from .linalg import (
    independent_columns,
    kernel_basis,
    kernel_matrix,
    left_inverse,
    rank,
    row_basis,
    rref,
    solve,
    span_equal,
)

__all__ = [
    "BACKEND",
    "DEFAULT_PRIME",
    "FieldSpec",
    "independent_columns",
    "kernel_basis",
    "kernel_matrix",
    "left_inverse",
    "rank",
    "row_basis",
    "rref",
    "solve",
    "span_equal",
]
