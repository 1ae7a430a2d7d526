"""corrset: membership, decomposition and realization for bipartite
correlation vectors.

The package decides whether a vector of four correlators belongs to the
classical or the quantum correlation set, decomposes quantum-set members
into at most three extremal generators, synthesizes explicit states and
observables realizing them, and ships independent brute-force oracles and
grid scans to verify its own claims.  See README.md for a tour.
"""

from .checks import (
    ScanResult,
    angle_sum_max_scan,
    classical_vertices,
    classical_weights,
    curvature_expression,
    curvature_positivity_scan,
    deterministic_strategy_vectors,
    ghz_contradiction,
    lvt_oracle,
    lvt_oracle_batch,
)
from .corrvec import (
    DEFAULT_TOLERANCE,
    CanonicalForm,
    CorrelationVector,
    SymmetryOp,
    canonicalize,
    full_symmetry_group,
    is_s_ordered,
    vectors_to_array,
)
from .errors import (
    BisectionError,
    CorrSetError,
    DimensionError,
    DomainError,
    InternalCheckError,
    InvariantViolationError,
    NonFiniteInputError,
    NotInQuantumSetError,
    NotOnBoundaryError,
    NotSOrderedError,
    OutOfBoxError,
    PreconditionError,
)
from .geometry import (
    AngleVector,
    Decomposition,
    GeneratorPoint,
    angle_transport,
    arcsine_sum,
    boundary_to_generator,
    decompose,
    face_decompose,
    generator_values,
    reduce_angle,
)
from .membership import (
    CLASSICAL_BOUND,
    QUANTUM_BOUND,
    TSIRELSON_BOUND,
    MembershipReport,
    arcsine_combinations,
    chsh_combinations,
    chsh_max,
    classical_margins,
    evaluate,
    in_classical,
    in_quantum,
    mu,
    mu_array,
    mu_inverse,
    mu_inverse_array,
    quantum_margins,
)
from .quantum import (
    PhaseParams,
    Realization,
    expectation,
    realize_generator,
    realize_mixture,
    sample_correlations,
    sample_quantum,
)

__version__ = "0.1.0"

__all__ = [
    "AngleVector",
    "BisectionError",
    "CLASSICAL_BOUND",
    "CanonicalForm",
    "CorrSetError",
    "CorrelationVector",
    "DEFAULT_TOLERANCE",
    "Decomposition",
    "DimensionError",
    "DomainError",
    "GeneratorPoint",
    "InternalCheckError",
    "InvariantViolationError",
    "MembershipReport",
    "NonFiniteInputError",
    "NotInQuantumSetError",
    "NotOnBoundaryError",
    "NotSOrderedError",
    "OutOfBoxError",
    "PhaseParams",
    "PreconditionError",
    "QUANTUM_BOUND",
    "Realization",
    "ScanResult",
    "SymmetryOp",
    "TSIRELSON_BOUND",
    "angle_sum_max_scan",
    "angle_transport",
    "arcsine_combinations",
    "arcsine_sum",
    "boundary_to_generator",
    "canonicalize",
    "chsh_combinations",
    "chsh_max",
    "classical_margins",
    "classical_vertices",
    "classical_weights",
    "curvature_expression",
    "curvature_positivity_scan",
    "decompose",
    "deterministic_strategy_vectors",
    "evaluate",
    "expectation",
    "face_decompose",
    "full_symmetry_group",
    "generator_values",
    "ghz_contradiction",
    "in_classical",
    "in_quantum",
    "is_s_ordered",
    "lvt_oracle",
    "lvt_oracle_batch",
    "mu",
    "mu_array",
    "mu_inverse",
    "mu_inverse_array",
    "quantum_margins",
    "realize_generator",
    "realize_mixture",
    "reduce_angle",
    "sample_correlations",
    "sample_quantum",
    "vectors_to_array",
]
