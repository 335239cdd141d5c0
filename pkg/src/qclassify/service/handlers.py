"""Operation handlers shared by the HTTP service and the CLI.

Each handler takes core objects and returns a plain JSON-serializable dict;
the CLI prints these directly and the service wraps them in response
models. Domain failures surface as ValueError with the documented message.
"""
from __future__ import annotations

import numpy as np

from ..bounds import bound_report
from ..ensemble import ClassifiedEnsemble, EnsembleMember, PureState, ensemble_to_doc
from ..feasibility import classifiable_states
from ..montecarlo import simulate
from ..optimizer import OptimizationConfig, optimize_classification
from ..strategy import (
    ClassificationStrategy,
    StrategyValidation,
    construct_projective_strategy,
    construct_single_state_strategy,
    strategy_to_doc,
    validate_strategy,
)


def _validation_doc(v: StrategyValidation) -> dict:
    return {
        "complete": v.complete,
        "no_error": v.no_error,
        "max_completeness_defect": v.max_completeness_defect,
        "max_cross_class_probability": v.max_cross_class_probability,
        "per_state_success": list(v.per_state_success),
        "average_success": v.average_success,
        "average_failure": v.average_failure,
    }


def handle_check(e: ClassifiedEnsemble) -> dict:
    report = classifiable_states(e)
    return {
        "feasible": report.feasible,
        "per_state": [
            {
                "state_index": s.state_index,
                "class": s.class_label,
                "classifiable": s.classifiable,
                "residual_weight_sq": s.residual_weight_sq,
            }
            for s in report.per_state
        ],
    }


def handle_construct(
    e: ClassifiedEnsemble,
    state_index: int | None = None,
    tolerance: float | None = None,
) -> dict:
    if state_index is None:
        strat = construct_projective_strategy(e)
    else:
        strat = construct_single_state_strategy(e, state_index)
    validation = validate_strategy(e, strat, **_tol_kw(tolerance))
    return {"strategy": strategy_to_doc(strat), "validation": _validation_doc(validation)}


def handle_bound(e: ClassifiedEnsemble) -> dict:
    report = bound_report(e)
    return {
        "pairwise": [
            {"state_a": a, "state_b": b, "min_failure_product": value}
            for a, b, value in report.pairwise_min_failure_products
        ],
        "failure_lower_bound": report.failure_lower_bound,
        "success_upper_bound": report.success_upper_bound,
        "success_upper_bound_unclamped": report.success_upper_bound_unclamped,
    }


def handle_optimize(
    e: ClassifiedEnsemble,
    cfg: OptimizationConfig | None = None,
    tolerance: float | None = None,
) -> dict:
    result = optimize_classification(e, cfg)
    validation = validate_strategy(e, result.strategy, **_tol_kw(tolerance))
    return {
        "strategy": strategy_to_doc(result.strategy),
        "success_lower_bound": result.success_lower_bound,
        "upper_bound_reference": result.upper_bound_reference,
        "converged": result.converged,
        "validation": _validation_doc(validation),
    }


def handle_simulate(
    e: ClassifiedEnsemble,
    strat: ClassificationStrategy | None,
    trials: int,
    seed: int,
) -> dict:
    if strat is None:
        strat = construct_projective_strategy(e)
    result = simulate(e, strat, trials, seed)
    return {
        "trials": result.trials,
        "counts": result.counts.tolist(),
        "empirical_success": result.empirical_success,
        "predicted_success": result.predicted_success,
        "max_deviation_sigma": result.max_deviation_sigma,
        "exact_cells_consistent": result.exact_cells_consistent,
    }


def bb84_ensemble() -> ClassifiedEnsemble:
    """Four equiprobable qubit states in two classes by encoded bit: bit 0
    as |0> or |+>, bit 1 as |1> or |->."""
    inv = 1.0 / np.sqrt(2.0)
    states = [
        (np.array([1.0, 0.0], dtype=complex), 1),
        (np.array([inv, inv], dtype=complex), 1),
        (np.array([0.0, 1.0], dtype=complex), 2),
        (np.array([inv, -inv], dtype=complex), 2),
    ]
    members = tuple(
        EnsembleMember(state=PureState(amps), prior=0.25, class_label=label)
        for amps, label in states
    )
    return ClassifiedEnsemble(dim=2, n_classes=2, members=members)


def handle_bb84(cfg: OptimizationConfig | None = None) -> dict:
    e = bb84_ensemble()
    feasibility = handle_check(e)
    bound = handle_bound(e)
    cfg = cfg or OptimizationConfig(restarts=2, max_iterations=200)
    result = optimize_classification(e, cfg)
    return {
        "ensemble": ensemble_to_doc(e),
        "feasibility": feasibility,
        "bound": bound,
        "bracket": {
            "success_lower_bound": result.success_lower_bound,
            "success_upper_bound": result.upper_bound_reference,
        },
        "conclusion": (
            "Every intercepted state lies in the span of the opposite bit's "
            "states, so no measurement can conclusively identify the encoded "
            "bit: an eavesdropper obtains no conclusive information."
        ),
    }


def _tol_kw(tolerance: float | None) -> dict:
    return {} if tolerance is None else {"tolerance": tolerance}
