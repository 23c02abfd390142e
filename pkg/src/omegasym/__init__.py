"""Exact ω-symplectic linear algebra and polynomial ω-Hamiltonian vector fields."""

from .form import (
    DarbouxTransform,
    SymplecticForm,
    darboux_basis,
    evaluate,
    is_minus_identity_square,
    random_form,
    standard_form,
    validate_form,
)
from .group import GroupClass, classify, is_lambda_symplectic_polymap, lambda_of, random_member, sigma
from .hamfield import (
    FieldCheck,
    HamiltonianField,
    adapted_form_for_skew,
    construct_family,
    field_from_hamiltonian,
    is_hamiltonian_field,
    linear_field_check,
    pushforward,
    recover_hamiltonian,
)
from .liealg import (
    HamiltonianMatrix,
    conjugate_to_standard,
    exp_check,
    from_symmetric,
    is_hamiltonian_matrix,
    to_symmetric,
)
from .poly import MultiPoly, PolyMatrix, PolyVectorField
from .ratmat import RationalMatrix

__all__ = [
    "DarbouxTransform",
    "FieldCheck",
    "GroupClass",
    "HamiltonianField",
    "HamiltonianMatrix",
    "MultiPoly",
    "PolyMatrix",
    "PolyVectorField",
    "RationalMatrix",
    "SymplecticForm",
    "adapted_form_for_skew",
    "classify",
    "conjugate_to_standard",
    "construct_family",
    "darboux_basis",
    "evaluate",
    "exp_check",
    "field_from_hamiltonian",
    "from_symmetric",
    "is_hamiltonian_field",
    "is_hamiltonian_matrix",
    "is_lambda_symplectic_polymap",
    "is_minus_identity_square",
    "lambda_of",
    "linear_field_check",
    "pushforward",
    "random_form",
    "random_member",
    "recover_hamiltonian",
    "sigma",
    "standard_form",
    "to_symmetric",
    "validate_form",
]

__version__ = "0.1.0"
