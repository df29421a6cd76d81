"""Lebesgue functions and constants for Lagrange interpolation at equally
spaced nodes of a simplex, with the decomposition identities, reduction
inequalities, and closed-form bounds that govern their growth."""

from .bounds import (
    BoundReport,
    Theorem2Bound,
    bos_bound,
    mu_cap,
    rate_envelope,
    theorem2_bound,
    turetskii_asymptote,
)
from .decomposition import (
    DeltaVector,
    NodeOffset,
    PartitionSums,
    ReductionCheck,
    check_lemma15,
    check_lemma16,
    check_reduction_step,
    check_theorem1,
    delta_vector,
    offsets_of,
    partition_sums,
    region_table,
    term_factor,
)
from .errors import (
    BudgetExceededError,
    DomainError,
    HypothesisError,
    MissingNodeError,
    PartitionError,
    PoleError,
    ResourceLimitError,
)
from .lemmas import (
    IdentityCheck,
    c0_constant,
    lemma3,
    lemma4_dstar,
    lemma5_dstarstar,
    lemma6_dtriplestar,
    lemma7_monotone,
    lemma17_phi,
    lemma18_phi_small,
    lemma19_powsum,
    lemma25_upsilon,
)
from .maximize import (
    MaxConfig,
    MaximizationResult,
    default_config,
    maximize_lebesgue,
    maximize_on_edge,
)
from .simplex import (
    DEFAULT_NODE_CAP,
    NodeSet,
    as_barycentric,
    basis_sum,
    enumerate_multi_indices,
    fundamental_poly,
    interpolate,
    lebesgue_function,
    node_of,
)
from .specfun import GAMMA_POLE, SignedLog, digamma, gbinom, log_gamma, signed_gamma

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Theorem2Bound",
    "bos_bound",
    "mu_cap",
    "rate_envelope",
    "theorem2_bound",
    "turetskii_asymptote",
    "DeltaVector",
    "NodeOffset",
    "PartitionSums",
    "ReductionCheck",
    "check_lemma15",
    "check_lemma16",
    "check_reduction_step",
    "check_theorem1",
    "delta_vector",
    "offsets_of",
    "partition_sums",
    "region_table",
    "term_factor",
    "BudgetExceededError",
    "DomainError",
    "HypothesisError",
    "MissingNodeError",
    "PartitionError",
    "PoleError",
    "ResourceLimitError",
    "IdentityCheck",
    "c0_constant",
    "lemma3",
    "lemma4_dstar",
    "lemma5_dstarstar",
    "lemma6_dtriplestar",
    "lemma7_monotone",
    "lemma17_phi",
    "lemma18_phi_small",
    "lemma19_powsum",
    "lemma25_upsilon",
    "MaxConfig",
    "MaximizationResult",
    "default_config",
    "maximize_lebesgue",
    "maximize_on_edge",
    "DEFAULT_NODE_CAP",
    "NodeSet",
    "as_barycentric",
    "basis_sum",
    "enumerate_multi_indices",
    "fundamental_poly",
    "interpolate",
    "lebesgue_function",
    "node_of",
    "GAMMA_POLE",
    "SignedLog",
    "digamma",
    "gbinom",
    "log_gamma",
    "signed_gamma",
]
