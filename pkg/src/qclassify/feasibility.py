"""Feasibility of conclusive classification.

A member admits a conclusive detector exactly when it is not contained in
the span of the states belonging to the other classes; the ensemble admits
conclusive classification exactly when at least one member does.

Each member is decomposed as

    psi = sum_a C_a psi_a  +  d * psi_perp

where the sum runs over all members outside psi's class and psi_perp is a
unit vector orthogonal to every one of them. |d|^2 > 0 is classifiability.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import ClassifiedEnsemble, PureState
from .numerics import RANK_TOL


@dataclass(frozen=True)
class Decomposition:
    """Expansion of one member over the other classes' states plus an
    orthogonal residual.

    coefficient_indices holds the member indices the coefficients refer to
    (all members outside the state's class, in ensemble order). When the
    residual vanishes (d = 0) residual_direction is None.
    """

    state_index: int
    coefficient_indices: tuple[int, ...]
    coefficients: np.ndarray
    residual_weight: complex
    residual_direction: PureState | None


@dataclass(frozen=True)
class StateFeasibility:
    state_index: int
    class_label: int
    classifiable: bool
    residual_weight_sq: float


@dataclass(frozen=True)
class FeasibilityReport:
    per_state: tuple[StateFeasibility, ...]
    feasible: bool


def decompose(e: ClassifiedEnsemble, idx: int) -> Decomposition:
    """Decompose member idx against the span of all other classes' states.

    Coefficients are the minimum-norm least-squares expansion (unique even
    when the complement set is linearly dependent). The residual direction
    is reported only when the residual norm exceeds RANK_TOL.
    """
    if not 0 <= idx < e.size:
        raise IndexError("state index out of range")
    member = e.members[idx]
    target = member.state.amplitudes
    comp_indices = tuple(
        a for a, m in enumerate(e.members) if m.class_label != member.class_label
    )
    comp = np.column_stack([e.members[a].state.amplitudes for a in comp_indices])
    u, s, vh = np.linalg.svd(comp, full_matrices=False)
    rank = int(np.sum(s > RANK_TOL))
    u_r, s_r, vh_r = u[:, :rank], s[:rank], vh[:rank]
    overlaps = u_r.conj().T @ target
    projection = u_r @ overlaps
    residual = target - projection
    coeffs = vh_r.conj().T @ (overlaps / s_r) if rank else np.zeros(comp.shape[1], dtype=complex)
    norm = float(np.linalg.norm(residual))
    if norm > RANK_TOL:
        direction = PureState(residual / norm)
        weight = complex(norm)
    else:
        direction = None
        weight = 0j
    return Decomposition(
        state_index=idx,
        coefficient_indices=comp_indices,
        coefficients=coeffs,
        residual_weight=weight,
        residual_direction=direction,
    )


def classifiable_states(e: ClassifiedEnsemble) -> FeasibilityReport:
    """Decompose every member and flag the ones with a nonzero residual."""
    entries = []
    for idx, member in enumerate(e.members):
        dec = decompose(e, idx)
        weight_sq = float(abs(dec.residual_weight) ** 2)
        entries.append(
            StateFeasibility(
                state_index=idx,
                class_label=member.class_label,
                classifiable=weight_sq > RANK_TOL**2,
                residual_weight_sq=weight_sq,
            )
        )
    return FeasibilityReport(
        per_state=tuple(entries), feasible=any(s.classifiable for s in entries)
    )


def is_conclusively_classifiable(e: ClassifiedEnsemble) -> bool:
    return classifiable_states(e).feasible


def class_support_basis(e: ClassifiedEnsemble, label: int) -> np.ndarray:
    """Orthonormal basis (columns) of the orthocomplement of the span of all
    states outside class `label`.

    Any detector for class `label` must annihilate every state outside the
    class, so (by positivity of the detection probability form) its operator
    is supported on exactly this subspace.
    """
    others = e.states_outside_class(label)
    if not others:
        return np.eye(e.dim, dtype=complex)
    u, s, _ = np.linalg.svd(np.column_stack(others), full_matrices=True)
    rank = int(np.sum(s > RANK_TOL))
    return u[:, rank:]
