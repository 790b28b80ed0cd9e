"""
magic-fiber - certified pseudo-Anosov dilatations on the magic manifold.

This library computes the fibered-face invariants of the magic manifold N,
the closed monodromies obtained by filling N along -3/2, -1/2 and 2, and
certified brackets of their dilatations, from which it assembles minimal
dilatation tables and upper bounds for the minimal dilatation in each genus.

Example (a cone class):
    >>> from magic_fiber import FiberedClass, fiber_type, largest_real_root, teichmuller_poly
    >>> fiber_type(FiberedClass(18, 17, 7)).genus
    8
    >>> root = largest_real_root(teichmuller_poly(18, 17, 7), width_bits=30)

Example (a minimal-dilatation table row):
    >>> from magic_fiber import min_lambda
    >>> row = min_lambda("-3/2", 5)
    >>> str(row.argmin)
    '(A,7,1)'
"""

from .cache import RootCache
from .config import CacheConfig, EngineConfig, PrecisionConfig, parse_width
from .exceptions import (
    CacheError,
    ConsistencyError,
    DomainError,
    EscalationError,
    MagicFiberError,
    UndecidableComparisonError,
    UnknownSuiteError,
)
from .fillings import (
    Family,
    FamilyClass,
    HyperbolicityStatus,
    HyperbolicityVerdict,
    capped_orientable,
    capped_singularity_data,
    closed_genus,
    dilatation,
    filling_slopes,
    has_one_prong,
    hyperbolicity,
    necessary_condition,
    one_cusp_filled_fiber,
    to_fibered_class,
)
from .homology import (
    FiberedClass,
    FiberType,
    SingularityData,
    Slope,
    Torus,
    boundary_counts,
    boundary_slopes,
    check_cone,
    euler_poincare_defect,
    fiber_type,
    orientability_identity_check,
    orientable,
    singularity_data,
    thurston_norm,
)
from .polynomial import IntPolynomial
from .polyroot import (
    Comparison,
    RootEngine,
    RootInterval,
    compare_roots,
    factor_check,
    largest_real_root,
    pair_poly,
    root_log,
    teichmuller_poly,
)
from .tables import (
    ClaimStatus,
    EmptyTable,
    MinTableRow,
    UpperBound,
    VerificationReport,
    candidate_set,
    concavity_check,
    delta_upper_bound,
    ent_face_scan,
    hironaka_bound,
    magic_ent_scan,
    min_lambda,
    normalized_entropy,
    verify_claims,
)

__version__ = "0.1.0"

__all__ = [
    # Homology of N
    "Torus",
    "FiberedClass",
    "Slope",
    "FiberType",
    "SingularityData",
    "check_cone",
    "thurston_norm",
    "boundary_counts",
    "boundary_slopes",
    "fiber_type",
    "singularity_data",
    "euler_poincare_defect",
    "orientable",
    "orientability_identity_check",
    # Polynomials and roots
    "IntPolynomial",
    "Comparison",
    "RootEngine",
    "RootInterval",
    "teichmuller_poly",
    "pair_poly",
    "factor_check",
    "largest_real_root",
    "compare_roots",
    "root_log",
    # Fillings
    "Family",
    "FamilyClass",
    "HyperbolicityStatus",
    "HyperbolicityVerdict",
    "to_fibered_class",
    "closed_genus",
    "one_cusp_filled_fiber",
    "has_one_prong",
    "capped_orientable",
    "capped_singularity_data",
    "filling_slopes",
    "necessary_condition",
    "hyperbolicity",
    "dilatation",
    # Tables
    "MinTableRow",
    "EmptyTable",
    "UpperBound",
    "ClaimStatus",
    "VerificationReport",
    "candidate_set",
    "min_lambda",
    "hironaka_bound",
    "delta_upper_bound",
    "ent_face_scan",
    "normalized_entropy",
    "magic_ent_scan",
    "concavity_check",
    "verify_claims",
    # Exceptions
    "MagicFiberError",
    "DomainError",
    "ConsistencyError",
    "EscalationError",
    "UndecidableComparisonError",
    "UnknownSuiteError",
    "CacheError",
    # Configuration
    "PrecisionConfig",
    "CacheConfig",
    "EngineConfig",
    "parse_width",
    "RootCache",
    # Version
    "__version__",
]
