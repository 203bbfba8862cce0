"""Exact construction, representation and recognition of thin Hessenberg pairs and systems."""

from .bases import (
    BasisKind,
    BasisMatrix,
    RepresentationPair,
    SplitDecomposition,
    closed_form_representation,
    is_split_basis,
    is_standard_basis,
    make_basis,
    represent,
    split_decomposition,
    transition_P,
    transition_P_star,
    transition_T,
    transition_T_star,
    transition_Z,
    transition_Z_star,
)
from .errors import THError
from .field import GF, QQ, parse_field_spec
from .linalg import Matrix, Polynomial, Subspace
from .recognize import (
    IsomorphismWitness,
    MatrixPair,
    RecognitionReport,
    dual_eigenvalues_from_triangular,
    extract_parameter_array,
    is_multiplicity_free,
    isomorphic,
    recognize_th_pair,
    th_orderings,
)
from .thcore import (
    ParameterArray,
    THSystem,
    build_canonical_system,
    dual_parameter_array,
    dual_system,
    nu_from_idempotents,
    nu_from_parameters,
    primitive_idempotents,
    validate_parameter_array,
)

__version__ = "0.1.0"

__all__ = [
    "BasisKind",
    "BasisMatrix",
    "GF",
    "IsomorphismWitness",
    "Matrix",
    "MatrixPair",
    "ParameterArray",
    "Polynomial",
    "QQ",
    "RecognitionReport",
    "RepresentationPair",
    "SplitDecomposition",
    "Subspace",
    "THError",
    "THSystem",
    "build_canonical_system",
    "closed_form_representation",
    "dual_eigenvalues_from_triangular",
    "dual_parameter_array",
    "dual_system",
    "extract_parameter_array",
    "is_multiplicity_free",
    "is_split_basis",
    "is_standard_basis",
    "isomorphic",
    "make_basis",
    "nu_from_idempotents",
    "nu_from_parameters",
    "parse_field_spec",
    "primitive_idempotents",
    "recognize_th_pair",
    "represent",
    "split_decomposition",
    "th_orderings",
    "transition_P",
    "transition_P_star",
    "transition_T",
    "transition_T_star",
    "transition_Z",
    "transition_Z_star",
    "validate_parameter_array",
]
