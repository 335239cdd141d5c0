"""Closed-form failure and success bounds for conclusive classification.

For any two members in different classes, unitarity of the dilated
measurement forces sqrt(gamma_a gamma_b) >= |<psi_a|psi_b>| on their failure
probabilities gamma. Prior-weighting and summing over ordered class pairs
gives a lower bound on the average failure probability

    Q >= sum_{i != j} sum_{k,l}
         sqrt(eta_ik eta_jl / ((N - m_i)(N - m_j))) |<psi_ik|psi_jl>|

and hence the success upper bound P <= 1 - Q_min. The double class sum runs
over ORDERED pairs (i, j), counting each unordered state pair twice.

Two-state specials: the equal-prior limit 1 - s and the unequal-prior
optimum, both functions of the overlap magnitude s only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensemble import ClassifiedEnsemble

PRIOR_SUM_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """Pairwise overlap bounds plus the aggregated failure/success bounds.

    success_upper_bound is clamped into [0, 1] defensively; the raw value is
    kept alongside (the clamp is provably never needed: by AM-GM each sum
    term is at most the average of its two prior shares, so the total stays
    within [0, 1]).
    """

    pairwise_min_failure_products: tuple[tuple[int, int, float], ...]
    failure_lower_bound: float
    success_upper_bound: float
    success_upper_bound_unclamped: float


def pairwise_failure_bound(e: ClassifiedEnsemble) -> dict[tuple[int, int], float]:
    """|<psi_a|psi_b>| for every unordered cross-class pair (a < b).

    Each value lower-bounds sqrt(gamma_a gamma_b) for any conclusive
    strategy. Same-class pairs are excluded.
    """
    out: dict[tuple[int, int], float] = {}
    for a in range(e.size):
        for b in range(a + 1, e.size):
            if e.members[a].class_label == e.members[b].class_label:
                continue
            overlap = abs(
                np.vdot(e.members[a].state.amplitudes, e.members[b].state.amplitudes)
            )
            out[(a, b)] = float(overlap)
    return out


def average_failure_lower_bound(e: ClassifiedEnsemble) -> float:
    """Prior-weighted cross-class overlap sum over ordered class pairs."""
    total_states = e.size
    sizes = {label: e.class_size(label) for label in range(1, e.n_classes + 1)}
    q_min = 0.0
    for a in range(total_states):
        for b in range(total_states):
            ma, mb = e.members[a], e.members[b]
            if a == b or ma.class_label == mb.class_label:
                continue
            weight = math.sqrt(
                ma.prior
                * mb.prior
                / ((total_states - sizes[ma.class_label]) * (total_states - sizes[mb.class_label]))
            )
            q_min += weight * abs(np.vdot(ma.state.amplitudes, mb.state.amplitudes))
    return float(q_min)


def success_upper_bound(e: ClassifiedEnsemble) -> float:
    return bound_report(e).success_upper_bound


def bound_report(e: ClassifiedEnsemble) -> BoundReport:
    q_min = average_failure_lower_bound(e)
    raw = 1.0 - q_min
    pairs = tuple(
        (a, b, value) for (a, b), value in sorted(pairwise_failure_bound(e).items())
    )
    return BoundReport(
        pairwise_min_failure_products=pairs,
        failure_lower_bound=q_min,
        success_upper_bound=min(1.0, max(0.0, raw)),
        success_upper_bound_unclamped=raw,
    )


def idp_limit(overlap: float) -> float:
    """Best average success for two equiprobable states with overlap s: 1 - s."""
    if not 0.0 <= overlap <= 1.0:
        raise ValueError("overlap must lie in [0, 1]")
    return 1.0 - overlap


def jaeger_shimony(p: float, q: float, overlap: float) -> float:
    """Best average success for two states with priors p >= q and overlap s.

    Derivation: minimize the average failure p*g1 + q*g2 over failure
    probabilities subject to g1*g2 >= s^2 and 0 <= g_i <= 1. On the active
    constraint g1*g2 = s^2 the stationary point g1 = sqrt(q/p)*s,
    g2 = sqrt(p/q)*s is admissible only while g2 <= 1, i.e. s <= sqrt(q/p),
    giving P = 1 - 2*sqrt(p*q)*s. Beyond that the optimum sits at the corner
    g2 = 1, g1 = s^2, giving P = p*(1 - s^2).
    """
    if abs(p + q - 1.0) > PRIOR_SUM_TOL:
        raise ValueError("priors do not sum to 1")
    if not (p >= q > 0.0):
        raise ValueError("priors must satisfy p >= q > 0")
    if not 0.0 <= overlap <= 1.0:
        raise ValueError("overlap must lie in [0, 1]")
    if overlap <= math.sqrt(q / p):
        return 1.0 - 2.0 * math.sqrt(p * q) * overlap
    return p * (1.0 - overlap**2)
