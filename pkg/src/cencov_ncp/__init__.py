"""Finite groupoid convolution algebras, states, Markov kernels, GNS spaces,
and the generalized Cramer-Rao bound, with JSON file formats and a CLI."""

from .errors import (
    AssociativityViolation,
    BadMeasure,
    BadWeight,
    CencovNcpError,
    CoherenceViolation,
    DegenerateState,
    DimensionMismatch,
    FoliumViolation,
    GroupoidMismatch,
    GroupoidViolation,
    HomomorphismViolation,
    IntervalExceeded,
    InvalidDensity,
    InvalidState,
    InverseViolation,
    NoConvergence,
    NonTracePreserving,
    NonUniformP,
    NormalizationLost,
    NotAGroup,
    NotCongruent,
    NotHermitian,
    NotPairGroupoid,
    NotSelfAdjoint,
    NotSquare,
    PositivityLost,
    RowSumViolation,
    SchemaError,
    SupportBoundary,
    UnitViolation,
    UnknownOutcome,
    ZeroInformation,
)
from .groupoid import (
    FiniteGroupoid,
    GroupoidSpec,
    cyclic_group_groupoid,
    disjoint_union,
    group_groupoid,
    modular_function,
    pair_groupoid,
    pair_structure,
    product,
    trivial_groupoid,
    validate,
)
from .algebra import (
    AlgebraElement,
    add,
    convolve,
    delta_element,
    element_from_dict,
    element_from_matrix,
    fundamental_rep_pair,
    left_regular_rep,
    scale,
    star,
    unit_element,
)
from .states import (
    DensityMatrix,
    State,
    StateReport,
    check_state,
    classical_state,
    density_from_state,
    expectation,
    fiber_gram,
    make_density,
    make_state,
    outcome_distribution,
    state_from_density,
)
from .channels import (
    ClassicalKernel,
    KernelReport,
    QuantumKernel,
    check_ncp_morphism,
    choi_matrix,
    choi_to_kernel,
    compose,
    cp_verdict,
    embed_classical,
    identity_kernel,
    kernel_from_matrix_map,
    kernel_to_cp_map,
    pull_observable,
    push_state,
    validate_kernel,
)
from .gns import GnsSpace, build_gns, cyclic_vector, gns_inner, gns_represent, gram_matrix
from .estimation import (
    CongruenceReport,
    CramerRaoAudit,
    Estimator,
    StatisticalModel,
    UnbiasednessReport,
    check_unbiased,
    classical_fisher_rao,
    coin_model,
    congruent_invariance,
    cramer_rao_audit,
    cramer_rao_bound,
    derivative_vector,
    fisher_metric,
    qubit_z_model,
    riesz_representer,
)

__version__ = "0.1.0"
