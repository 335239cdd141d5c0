"""Measurement strategies for conclusive classification.

A strategy is a set of detection operators A_1..A_n plus a failure operator
A_I on the system space, satisfying the completeness relation

    A_I^+ A_I + sum_m A_m^+ A_m = I

and, for a valid conclusive strategy, the no-error condition: outcome m has
zero probability on every state outside class m. Strategies are stored at
the operator (Kraus) level; the positive elements A^+A are derived on
demand.

The dilation realizes a strategy as one unitary on system x ancilla with
ancilla dimension n+1: the joint state starts in ancilla level 0, and a
projective ancilla readout after the unitary reproduces the strategy's
outcome distribution. Ancilla level m hosts the class-m outcome; level 0
doubles as the failure outcome.

Strategy file format (UTF-8 JSON):
    {"dim": d, "class_operators": [matrix, ...], "failure_operator": matrix}
where a matrix is a nested list of [re, im] pairs, row-major.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .ensemble import ClassifiedEnsemble
from .feasibility import class_support_basis, decompose
from .numerics import RANK_TOL, complete_to_unitary, hermitian_eig, psd_sqrt

COMPLETENESS_TOL = 1e-8
LEAKAGE_TOL = 1e-8


@dataclass(frozen=True)
class ClassificationStrategy:
    """Detection operators per class plus the failure operator, all d x d."""

    dim: int
    class_operators: tuple[np.ndarray, ...]
    failure_operator: np.ndarray

    @property
    def n_classes(self) -> int:
        return len(self.class_operators)

    def completeness_defect(self) -> float:
        total = self.failure_operator.conj().T @ self.failure_operator
        for a in self.class_operators:
            total = total + a.conj().T @ a
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def outcome_probabilities(self, state: np.ndarray) -> np.ndarray:
        """Probabilities of outcomes 1..n followed by failure."""
        probs = [float(np.linalg.norm(a @ state) ** 2) for a in self.class_operators]
        probs.append(float(np.linalg.norm(self.failure_operator @ state) ** 2))
        return np.array(probs)


@dataclass(frozen=True)
class StrategyValidation:
    complete: bool
    no_error: bool
    max_completeness_defect: float
    max_cross_class_probability: float
    per_state_success: tuple[float, ...]
    average_success: float
    average_failure: float


@dataclass(frozen=True)
class Dilation:
    """Unitary realization of a strategy on system x ancilla."""

    system_dim: int
    ancilla_dim: int
    unitary: np.ndarray
    ancilla_ready_index: int
    outcome_basis: tuple[int, ...]

    def outcome_distribution(self, state: np.ndarray) -> np.ndarray:
        """Born probabilities of the ancilla readout for a system state
        prepared with the ancilla in the ready level.

        Joint index convention: index = ancilla_level * system_dim + i.
        """
        d = self.system_dim
        joint = np.zeros(d * self.ancilla_dim, dtype=complex)
        start = self.ancilla_ready_index * d
        joint[start : start + d] = np.asarray(state, dtype=complex)
        out = self.unitary @ joint
        blocks = out.reshape(self.ancilla_dim, d)
        return np.array(
            [float(np.linalg.norm(blocks[level]) ** 2) for level in self.outcome_basis]
        )

    def failure_branch(self, state: np.ndarray) -> np.ndarray:
        """Unnormalized system state on the failure outcome."""
        d = self.system_dim
        joint = np.zeros(d * self.ancilla_dim, dtype=complex)
        start = self.ancilla_ready_index * d
        joint[start : start + d] = np.asarray(state, dtype=complex)
        out = self.unitary @ joint
        return out.reshape(self.ancilla_dim, d)[self.outcome_basis[-1]]


def validate_strategy(
    e: ClassifiedEnsemble,
    s: ClassificationStrategy,
    tolerance: float = LEAKAGE_TOL,
) -> StrategyValidation:
    """Check completeness and the no-error condition; compute success rates.

    no_error holds iff every cross-class outcome probability is at most
    `tolerance`. average_failure is the prior-weighted failure probability,
    so average_success + average_failure accounts for all probability only
    when leakage is negligible.
    """
    if s.dim != e.dim or s.n_classes != e.n_classes:
        raise ValueError("dimension mismatch")
    defect = s.completeness_defect()
    per_state_success = []
    cross_max = 0.0
    p_avg = 0.0
    q_avg = 0.0
    for m in e.members:
        probs = s.outcome_probabilities(m.state.amplitudes)
        own = float(probs[m.class_label - 1])
        leak = max(
            (float(probs[c]) for c in range(e.n_classes) if c != m.class_label - 1),
            default=0.0,
        )
        cross_max = max(cross_max, leak)
        per_state_success.append(own)
        p_avg += m.prior * own
        q_avg += m.prior * float(probs[-1])
    return StrategyValidation(
        complete=defect <= tolerance,
        no_error=cross_max <= tolerance,
        max_completeness_defect=defect,
        max_cross_class_probability=cross_max,
        per_state_success=tuple(per_state_success),
        average_success=p_avg,
        average_failure=q_avg,
    )


def construct_single_state_strategy(
    e: ClassifiedEnsemble, idx: int
) -> ClassificationStrategy:
    """One-detector strategy built from member idx's orthogonal residual.

    The detector for idx's class is the rank-one projector onto psi_perp,
    every other class gets the zero operator, and the failure operator is
    the PSD square root of the completeness remainder. The target member is
    detected with probability |d|^2; wrong-class outcomes are impossible
    because psi_perp is orthogonal to every other-class state.
    """
    dec = decompose(e, idx)
    if dec.residual_direction is None:
        raise ValueError("state lies in complement span")
    label = e.members[idx].class_label
    perp = dec.residual_direction.amplitudes
    detector = np.outer(perp, perp.conj())
    ops = [
        detector if c == label else np.zeros((e.dim, e.dim), dtype=complex)
        for c in range(1, e.n_classes + 1)
    ]
    failure = psd_sqrt(np.eye(e.dim) - detector.conj().T @ detector)
    return ClassificationStrategy(
        dim=e.dim, class_operators=tuple(ops), failure_operator=failure
    )


def construct_projective_strategy(e: ClassifiedEnsemble) -> ClassificationStrategy:
    """Multi-detector strategy from the per-class support projectors.

    For each class m, Pi_m projects onto the orthocomplement of the span of
    all other classes' states. The projectors are jointly scaled by
    c = 1 / max(1, lambda_max(sum Pi_m)) so the failure remainder stays PSD.
    """
    projectors = []
    total = np.zeros((e.dim, e.dim), dtype=complex)
    any_support = False
    for label in range(1, e.n_classes + 1):
        q = class_support_basis(e, label)
        pi = q @ q.conj().T
        projectors.append(pi)
        total = total + pi
        if q.shape[1]:
            any_support = True
    # a class support can be nonzero while containing no state component;
    # feasibility requires some member to overlap its own class support
    overlap = 0.0
    for m in e.members:
        pi = projectors[m.class_label - 1]
        overlap = max(overlap, float(np.real(np.vdot(m.state.amplitudes, pi @ m.state.amplitudes))))
    if not any_support or overlap <= RANK_TOL**2:
        raise ValueError("infeasible ensemble")
    top = float(hermitian_eig(total).eigenvalues[-1])
    c = 1.0 / max(1.0, top)
    ops = [np.sqrt(c) * pi for pi in projectors]
    failure = psd_sqrt(np.eye(e.dim) - c * total)
    return ClassificationStrategy(
        dim=e.dim, class_operators=tuple(ops), failure_operator=failure
    )


def neumark_dilation(s: ClassificationStrategy) -> Dilation:
    """Extend a strategy to a unitary on system x (n+1)-level ancilla.

    The map V|chi> = sum_m (A_m|chi>)|level m> + (A_I|chi>)|level 0> is an
    isometry by completeness; it occupies the first d columns of the joint
    space (ancilla level 0 is the ready state) and is completed to a full
    unitary. A polar correction absorbs the completeness defect before
    completion.
    """
    if s.completeness_defect() > COMPLETENESS_TOL:
        raise ValueError("not a measurement")
    d = s.dim
    n = s.n_classes
    ancilla_dim = n + 1
    v = np.zeros((d * ancilla_dim, d), dtype=complex)
    v[0:d, :] = s.failure_operator
    for m, a in enumerate(s.class_operators, start=1):
        v[m * d : (m + 1) * d, :] = a
    # polar correction: V (V^+V)^(-1/2) is exactly isometric
    gram = v.conj().T @ v
    dec = hermitian_eig(gram)
    inv_root = (dec.eigenvectors * (1.0 / np.sqrt(np.maximum(dec.eigenvalues, 1e-30)))) @ dec.eigenvectors.conj().T
    u = complete_to_unitary(v @ inv_root)
    return Dilation(
        system_dim=d,
        ancilla_dim=ancilla_dim,
        unitary=u,
        ancilla_ready_index=0,
        outcome_basis=tuple(range(1, n + 1)) + (0,),
    )


def strategy_to_doc(s: ClassificationStrategy) -> dict:
    def encode(matrix: np.ndarray) -> list:
        return [[[float(x.real), float(x.imag)] for x in row] for row in matrix]

    return {
        "dim": s.dim,
        "class_operators": [encode(a) for a in s.class_operators],
        "failure_operator": encode(s.failure_operator),
    }


def serialize_strategy(s: ClassificationStrategy) -> str:
    return json.dumps(strategy_to_doc(s))


def parse_strategy(text: str | bytes) -> ClassificationStrategy:
    """Parse the JSON strategy format; matrices must be d x d."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"parse error at line {exc.lineno}") from exc
    return strategy_from_doc(doc)


def strategy_from_doc(doc: object) -> ClassificationStrategy:
    """Build a strategy from already-decoded JSON data; matrices d x d."""
    if not isinstance(doc, dict) or set(doc) != {"dim", "class_operators", "failure_operator"}:
        raise ValueError("parse error")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError("parse error")

    def decode(raw: object) -> np.ndarray:
        if not isinstance(raw, list) or len(raw) != dim:
            raise ValueError("dimension mismatch")
        matrix = np.zeros((dim, dim), dtype=complex)
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != dim:
                raise ValueError("dimension mismatch")
            for j, pair in enumerate(row):
                if (
                    not isinstance(pair, list)
                    or len(pair) != 2
                    or not all(
                        isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair
                    )
                ):
                    raise ValueError("parse error")
                matrix[i, j] = complex(pair[0], pair[1])
        return matrix

    raw_ops = doc["class_operators"]
    if not isinstance(raw_ops, list) or not raw_ops:
        raise ValueError("parse error")
    ops = tuple(decode(raw) for raw in raw_ops)
    failure = decode(doc["failure_operator"])
    return ClassificationStrategy(dim=dim, class_operators=ops, failure_operator=failure)
