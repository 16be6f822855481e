"""Exact construction and analysis of monodromy tuples over cyclotomic fields."""

from .errors import (
    MonodromyError,
    ParseError,
    PreconditionError,
    RootOutsideFieldError,
    ShapeError,
    SingularMatrixError,
)
from .exactfield import (
    Polynomial,
    Scalar,
    cyclotomic_polynomial,
    euler_phi,
    parse_rational,
    root_of_unity,
    scalar_arith,
    zeta,
)
from .linalg import (
    Matrix,
    SpectrumSpec,
    Subspace,
    algebra_dimension,
    char_poly,
    companion,
    kernel_basis,
    krylov_cyclic_vector,
    poly_from_roots,
    rank,
    rref,
    subspace_intersect,
    sylvester_kernel,
)
from .rigid import (
    AnalysisReport,
    MonodromyTuple,
    PseudoReflection,
    SharedFrame,
    StableSubspace,
    analyze,
    beukers_irreducible,
    classify_pseudo_reflection,
    common_eigenvalue_from_invariant_subspace,
    common_line_or_hyperplane,
    is_pseudo_reflection,
    rigidity_index,
    shared_frame,
    simultaneous_conjugator,
)
from .levelt import (
    HYPERGEOMETRIC_LABELS,
    HypergeometricParams,
    hypergeometric_tuple,
    levelt_construct,
    levelt_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "MonodromyError",
    "ParseError",
    "PreconditionError",
    "RootOutsideFieldError",
    "ShapeError",
    "SingularMatrixError",
    "Polynomial",
    "Scalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "parse_rational",
    "root_of_unity",
    "scalar_arith",
    "zeta",
    "Matrix",
    "SpectrumSpec",
    "Subspace",
    "algebra_dimension",
    "char_poly",
    "companion",
    "kernel_basis",
    "krylov_cyclic_vector",
    "poly_from_roots",
    "rank",
    "rref",
    "subspace_intersect",
    "sylvester_kernel",
    "AnalysisReport",
    "MonodromyTuple",
    "PseudoReflection",
    "SharedFrame",
    "StableSubspace",
    "analyze",
    "beukers_irreducible",
    "classify_pseudo_reflection",
    "common_eigenvalue_from_invariant_subspace",
    "common_line_or_hyperplane",
    "is_pseudo_reflection",
    "rigidity_index",
    "shared_frame",
    "simultaneous_conjugator",
    "HYPERGEOMETRIC_LABELS",
    "HypergeometricParams",
    "hypergeometric_tuple",
    "levelt_construct",
    "levelt_normalize",
]
