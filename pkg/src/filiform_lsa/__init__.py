"""Exact cohomology and left-symmetric structures on filiform Lie algebras."""

from .affine import (
    AffineVerdict,
    CentralExtension,
    LsaProduct,
    affine_structure,
    central_extension,
    find_affine_class,
    h2_tags,
    is_affine_cocycle,
    lsa_on_quotient,
    verify_lsa,
)
from .cohomology import (
    ADJOINT,
    TRIVIAL,
    Cochain,
    betti_numbers,
    coboundary_matrix,
    cohomology,
    conjecture_checks,
    is_coboundary,
    is_cocycle,
    omega_cochain,
)
from .exact_linalg import Matrix, QuadraticNumber, format_scalar, parse_scalar
from .filiform import (
    ClassLabel,
    FiliformParams,
    build_algebra,
    build_algebra_psi,
    classify,
    extended_class,
    find_witness,
    index_set,
    jacobi_polynomials,
    property_flags,
    psi_cochain,
    standard_graded,
    table_classes,
    to_adapted,
)
from .lie_core import (
    LieAlgebra,
    NotALieAlgebra,
    change_basis,
    derivation_basis,
    find_nonsingular_derivation,
    is_filiform,
    jacobi_defects,
)

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "QuadraticNumber",
    "format_scalar",
    "parse_scalar",
    "AffineVerdict",
    "CentralExtension",
    "LsaProduct",
    "affine_structure",
    "central_extension",
    "find_affine_class",
    "h2_tags",
    "is_affine_cocycle",
    "lsa_on_quotient",
    "verify_lsa",
    "ADJOINT",
    "TRIVIAL",
    "Cochain",
    "betti_numbers",
    "coboundary_matrix",
    "cohomology",
    "conjecture_checks",
    "is_coboundary",
    "is_cocycle",
    "omega_cochain",
    "ClassLabel",
    "FiliformParams",
    "build_algebra",
    "build_algebra_psi",
    "classify",
    "extended_class",
    "find_witness",
    "index_set",
    "jacobi_polynomials",
    "property_flags",
    "psi_cochain",
    "standard_graded",
    "table_classes",
    "to_adapted",
    "LieAlgebra",
    "NotALieAlgebra",
    "change_basis",
    "derivation_basis",
    "find_nonsingular_derivation",
    "is_filiform",
    "jacobi_defects",
]
