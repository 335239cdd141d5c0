"""Conclusive classification of pure quantum states.

Decide when a partitioned set of pure states admits zero-error
classification, build measurement strategies that realize it, bracket the
best average success probability between a numerical search and a
closed-form bound, dilate strategies to unitaries, and verify them by
sampling.
"""
from .bounds import (
    BoundReport,
    average_failure_lower_bound,
    bound_report,
    idp_limit,
    jaeger_shimony,
    pairwise_failure_bound,
    success_upper_bound,
)
from .ensemble import (
    ClassifiedEnsemble,
    EnsembleMember,
    PureState,
    gram_matrix,
    parse_ensemble,
    serialize_ensemble,
)
from .feasibility import (
    Decomposition,
    FeasibilityReport,
    classifiable_states,
    decompose,
    is_conclusively_classifiable,
)
from .montecarlo import SimulationResult, simulate
from .numerics import (
    HermitianEigenDecomposition,
    complete_to_unitary,
    hermitian_eig,
    project_onto_span,
    psd_sqrt,
)
from .optimizer import (
    OptimizationConfig,
    OptimizedStrategy,
    bracket_optimum,
    optimize_classification,
)
from .strategy import (
    ClassificationStrategy,
    Dilation,
    StrategyValidation,
    construct_projective_strategy,
    construct_single_state_strategy,
    neumark_dilation,
    parse_strategy,
    serialize_strategy,
    validate_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ClassificationStrategy",
    "ClassifiedEnsemble",
    "Decomposition",
    "Dilation",
    "EnsembleMember",
    "FeasibilityReport",
    "HermitianEigenDecomposition",
    "OptimizationConfig",
    "OptimizedStrategy",
    "PureState",
    "SimulationResult",
    "StrategyValidation",
    "average_failure_lower_bound",
    "bound_report",
    "bracket_optimum",
    "classifiable_states",
    "complete_to_unitary",
    "construct_projective_strategy",
    "construct_single_state_strategy",
    "decompose",
    "gram_matrix",
    "hermitian_eig",
    "idp_limit",
    "is_conclusively_classifiable",
    "jaeger_shimony",
    "neumark_dilation",
    "optimize_classification",
    "pairwise_failure_bound",
    "parse_ensemble",
    "parse_strategy",
    "project_onto_span",
    "psd_sqrt",
    "serialize_ensemble",
    "serialize_strategy",
    "simulate",
    "success_upper_bound",
    "validate_strategy",
]
