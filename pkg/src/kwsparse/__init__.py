"""Spectral graph sparsification driven by k-wise independent sampling."""

from .derand import CandidateReport, DerandConfig, derandomized_sparsify, derived_constants
from .errors import (
    KwsparseError,
    ParseError,
    DuplicateEdge,
    SelfLoop,
    NonPositiveWeight,
    IndexOutOfRange,
    OutOfRange,
    LengthMismatch,
    EmptyGraph,
    Disconnected,
    NoConvergence,
    NotPSD,
    KernelMismatch,
    SeedOutOfRange,
    EnumerationOverflow,
    TooLarge,
    ZeroProbabilityEdge,
    InsufficientCoins,
    ExhaustedSeeds,
)
from .graph import (
    RoundedMultigraph,
    WeightedGraph,
    components,
    girth,
    is_connected,
    laplacian,
    max_weighted_degree,
    parse_edge_list,
    round_to_multigraph,
    serialize_edge_list,
)
from .kwise import KWiseSpace, build_space, check_kwise_bruteforce, sample_at, sample_block, seed_count
from .linalg import (
    approximation_error,
    jacobi_eigh,
    perturbed_pseudoinverse,
    pinv_sqrt,
    pseudoinverse,
    spectral_approx_check,
)
from .lowerbound import (
    PartitionDistribution,
    ThreeWiseCompleteDistribution,
    disconnection_probability,
    exact_joint_distribution,
    independence_order,
    moore_bound_check,
)
from .resistance import ResistanceTable, effective_resistances_approx, effective_resistances_exact
from .sparsify import SparsifyParams, plan_sparsify, sparsify_random, sparsify_with_seed
from .verify import Verdict, VerifierParams, gamma_for_alpha, verify

__version__ = "0.1.0"

__all__ = [
    "approximation_error",
    "build_space",
    "CandidateReport",
    "check_kwise_bruteforce",
    "components",
    "DerandConfig",
    "derandomized_sparsify",
    "derived_constants",
    "Disconnected",
    "disconnection_probability",
    "DuplicateEdge",
    "effective_resistances_approx",
    "effective_resistances_exact",
    "EmptyGraph",
    "EnumerationOverflow",
    "exact_joint_distribution",
    "ExhaustedSeeds",
    "gamma_for_alpha",
    "girth",
    "independence_order",
    "IndexOutOfRange",
    "InsufficientCoins",
    "is_connected",
    "jacobi_eigh",
    "KernelMismatch",
    "KWiseSpace",
    "KwsparseError",
    "laplacian",
    "LengthMismatch",
    "max_weighted_degree",
    "moore_bound_check",
    "NoConvergence",
    "NonPositiveWeight",
    "NotPSD",
    "OutOfRange",
    "parse_edge_list",
    "ParseError",
    "PartitionDistribution",
    "perturbed_pseudoinverse",
    "pinv_sqrt",
    "plan_sparsify",
    "pseudoinverse",
    "ResistanceTable",
    "round_to_multigraph",
    "RoundedMultigraph",
    "sample_at",
    "sample_block",
    "seed_count",
    "SeedOutOfRange",
    "SelfLoop",
    "serialize_edge_list",
    "sparsify_random",
    "sparsify_with_seed",
    "SparsifyParams",
    "spectral_approx_check",
    "ThreeWiseCompleteDistribution",
    "TooLarge",
    "Verdict",
    "VerifierParams",
    "verify",
    "WeightedGraph",
    "ZeroProbabilityEdge",
]
