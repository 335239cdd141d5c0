"""Shared fixtures and generators for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

from qclassify.ensemble import ClassifiedEnsemble, EnsembleMember, PureState


def ket(*amps: complex) -> np.ndarray:
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)


KET0 = ket(1, 0)
KET1 = ket(0, 1)
KET_PLUS = ket(1, 1)
KET_MINUS = ket(1, -1)

BB84_JSON = """
{"dim": 2, "classes": 2, "states": [
  {"amplitudes": [[1.0, 0.0], [0.0, 0.0]], "prior": 0.25, "class": 1},
  {"amplitudes": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]], "prior": 0.25, "class": 1},
  {"amplitudes": [[0.0, 0.0], [1.0, 0.0]], "prior": 0.25, "class": 2},
  {"amplitudes": [[0.7071067811865476, 0.0], [-0.7071067811865476, 0.0]], "prior": 0.25, "class": 2}
]}
"""


def build_ensemble(
    states: list[np.ndarray], priors: list[float], labels: list[int], n: int
) -> ClassifiedEnsemble:
    members = tuple(
        EnsembleMember(state=PureState(s), prior=float(p), class_label=int(c))
        for s, p, c in zip(states, priors, labels)
    )
    return ClassifiedEnsemble(dim=states[0].shape[0], n_classes=n, members=members)


def two_state_ensemble(p: float, overlap: float) -> ClassifiedEnsemble:
    states = [ket(1, 0), ket(overlap, np.sqrt(1.0 - overlap**2))]
    return build_ensemble(states, [p, 1.0 - p], [1, 2], 2)


def bb84_states() -> list[np.ndarray]:
    return [KET0, KET_PLUS, KET1, KET_MINUS]


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_ensemble(
    rng: np.random.Generator,
    max_dim: int = 4,
    max_states: int = 5,
    require_feasible: bool = False,
    singleton_target: bool = False,
):
    """Random ensemble; optionally retried until feasible.

    With singleton_target, also returns the index of a classifiable member
    whose class has exactly one member (None otherwise).
    """
    from qclassify.feasibility import classifiable_states

    while True:
        dim = int(rng.integers(2, max_dim + 1))
        size = int(rng.integers(2, max_states + 1))
        n = int(rng.integers(2, min(size, 4) + 1))
        labels = list(range(1, n + 1)) + [
            int(rng.integers(1, n + 1)) for _ in range(size - n)
        ]
        rng.shuffle(labels)
        states = [random_state(rng, dim) for _ in range(size)]
        priors = rng.dirichlet(np.ones(size)).tolist()
        e = build_ensemble(states, priors, labels, n)
        if not require_feasible and not singleton_target:
            return e
        report = classifiable_states(e)
        if not report.feasible:
            continue
        if not singleton_target:
            return e
        counts = {c: labels.count(c) for c in range(1, n + 1)}
        target = next(
            (
                s.state_index
                for s in report.per_state
                if s.classifiable and counts[e.members[s.state_index].class_label] == 1
            ),
            None,
        )
        if target is not None:
            return e, target


@pytest.fixture
def bb84(request) -> ClassifiedEnsemble:
    from qclassify.ensemble import parse_ensemble

    return parse_ensemble(BB84_JSON)
