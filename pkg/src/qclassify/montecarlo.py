"""Sampled verification of a classification strategy.

Repeatedly prepares a member drawn by the priors, measures it with the
strategy's outcome distribution, and compares empirical frequencies with
the Born-rule predictions.

RNG: numpy's Philox 4x64 counter-based bit generator (numpy.random.Philox),
wrapped in numpy.random.Generator. The call schedule is fixed: one
multinomial draw for the member counts, then one outcome multinomial per
member in ensemble order, so counts are reproducible given the seed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import ClassifiedEnsemble
from .strategy import ClassificationStrategy, validate_strategy

# probabilities below this are impossible-by-construction rounding residue;
# they are truncated to zero before sampling and the rest renormalized
PROBABILITY_FLOOR = 1e-8


@dataclass(frozen=True)
class SimulationResult:
    """counts[member][outcome] with outcomes 1..n followed by failure."""

    trials: int
    counts: np.ndarray
    empirical_success: float
    predicted_success: float
    max_deviation_sigma: float
    exact_cells_consistent: bool


def simulate(
    e: ClassifiedEnsemble,
    s: ClassificationStrategy,
    trials: int,
    seed: int,
) -> SimulationResult:
    """Sample `trials` preparations and measurements, deterministically in
    the seed.

    max_deviation_sigma is the largest |empirical - predicted| frequency
    deviation in binomial sigma units (sigma from the predicted probability
    and that member's trial count); cells with predicted probability 0 or 1
    are instead required to agree exactly and tracked by
    exact_cells_consistent.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    validation = validate_strategy(e, s)
    if not (validation.complete and validation.no_error):
        raise ValueError("strategy failed validation")
    n_outcomes = e.n_classes + 1
    prob_table = np.zeros((e.size, n_outcomes))
    for idx, m in enumerate(e.members):
        probs = s.outcome_probabilities(m.state.amplitudes)
        probs = np.where(probs < PROBABILITY_FLOOR, 0.0, probs)
        probs = np.maximum(probs, 0.0)
        prob_table[idx] = probs / probs.sum()
    priors = np.array([m.prior for m in e.members])
    rng = np.random.Generator(np.random.Philox(seed))
    member_counts = rng.multinomial(trials, priors / priors.sum())
    counts = np.zeros((e.size, n_outcomes), dtype=np.int64)
    for idx in range(e.size):
        if member_counts[idx]:
            counts[idx] = rng.multinomial(member_counts[idx], prob_table[idx])
    success = 0
    for idx, m in enumerate(e.members):
        success += counts[idx, m.class_label - 1]
    predicted = float(
        sum(m.prior * prob_table[idx, m.class_label - 1] for idx, m in enumerate(e.members))
    )
    max_sigma = 0.0
    exact_ok = True
    for idx in range(e.size):
        t_member = int(member_counts[idx])
        if t_member == 0:
            continue
        for outcome in range(n_outcomes):
            p = prob_table[idx, outcome]
            freq = counts[idx, outcome] / t_member
            if p == 0.0 or p == 1.0:
                exact_ok = exact_ok and freq == p
                continue
            sigma = np.sqrt(p * (1.0 - p) / t_member)
            max_sigma = max(max_sigma, abs(freq - p) / sigma)
    return SimulationResult(
        trials=trials,
        counts=counts,
        empirical_success=float(success / trials),
        predicted_success=predicted,
        max_deviation_sigma=float(max_sigma),
        exact_cells_consistent=bool(exact_ok),
    )
