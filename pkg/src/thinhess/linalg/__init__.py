"""Exact dense linear algebra over :mod:`thinhess.field` fields."""

from .echelon import IncrementalReducer, nullspace, rref
from .matrix import Matrix, Vector, mat_inverse, mat_mul
from .poly import FieldRoots, Polynomial, char_poly, min_poly, roots_in_field
from .subspace import (
    Shape,
    Subspace,
    has_constant_row_sum,
    is_diagonal,
    is_hessenberg,
    is_lower_bidiagonal,
    is_upper_bidiagonal,
    is_upper_triangular,
    shape_predicates,
    span,
    subspace_ops,
)

__all__ = [
    "FieldRoots",
    "IncrementalReducer",
    "Matrix",
    "Polynomial",
    "Shape",
    "Subspace",
    "Vector",
    "char_poly",
    "has_constant_row_sum",
    "is_diagonal",
    "is_hessenberg",
    "is_lower_bidiagonal",
    "is_upper_bidiagonal",
    "is_upper_triangular",
    "mat_inverse",
    "mat_mul",
    "min_poly",
    "nullspace",
    "roots_in_field",
    "rref",
    "shape_predicates",
    "span",
    "subspace_ops",
]
