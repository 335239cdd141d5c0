"""Feasibility decisions and decompositions."""
from __future__ import annotations

import numpy as np
import pytest

from qclassify.ensemble import gram_matrix
from qclassify.feasibility import (
    class_support_basis,
    classifiable_states,
    decompose,
    is_conclusively_classifiable,
)

from conftest import (
    KET0,
    KET1,
    KET_MINUS,
    KET_PLUS,
    build_ensemble,
    ket,
    random_ensemble,
    random_state,
)


def reconstruct(e, dec):
    out = np.zeros(e.dim, dtype=complex)
    for pos, a in enumerate(dec.coefficient_indices):
        out += dec.coefficients[pos] * e.members[a].state.amplitudes
    if dec.residual_direction is not None:
        out += dec.residual_weight * dec.residual_direction.amplitudes
    return out


class TestDecompose:
    def test_orthogonal_split_example(self):
        e = build_ensemble([KET_PLUS, KET0], [0.5, 0.5], [1, 2], 2)
        dec = decompose(e, 0)
        assert dec.coefficient_indices == (1,)
        assert abs(dec.coefficients[0] - 1 / np.sqrt(2)) <= 1e-12
        assert abs(abs(dec.residual_weight) - 1 / np.sqrt(2)) <= 1e-12
        assert abs(abs(np.vdot(KET1, dec.residual_direction.amplitudes)) - 1) <= 1e-12

    def test_bb84_state_in_complement_span(self, bb84):
        dec = decompose(bb84, 0)
        assert dec.residual_direction is None
        assert dec.residual_weight == 0
        # |0> = 1*|1> + sqrt(2)*|->
        assert dec.coefficient_indices == (2, 3)
        assert np.allclose(dec.coefficients, [1.0, np.sqrt(2.0)], atol=1e-9)
        assert np.max(np.abs(reconstruct(bb84, dec) - KET0)) <= 1e-8

    def test_complement_spans_space(self):
        e = build_ensemble([KET_PLUS, KET0, KET1], [0.4, 0.3, 0.3], [1, 2, 2], 2)
        dec = decompose(e, 0)
        assert dec.residual_direction is None

    def test_index_bounds(self, bb84):
        with pytest.raises(IndexError):
            decompose(bb84, 4)

    def test_reconstruction_and_orthogonality(self):
        rng = np.random.Generator(np.random.Philox(31))
        for _ in range(25):
            e = random_ensemble(rng)
            for idx in range(e.size):
                dec = decompose(e, idx)
                target = e.members[idx].state.amplitudes
                assert np.max(np.abs(reconstruct(e, dec) - target)) <= 1e-8
                if dec.residual_direction is not None:
                    perp = dec.residual_direction.amplitudes
                    for a in dec.coefficient_indices:
                        assert abs(np.vdot(e.members[a].state.amplitudes, perp)) <= 1e-9

    def test_weight_matches_projection_deficit(self):
        rng = np.random.Generator(np.random.Philox(32))
        for _ in range(20):
            e = random_ensemble(rng)
            for idx in range(e.size):
                dec = decompose(e, idx)
                others = e.states_outside_class(e.members[idx].class_label)
                from qclassify.numerics import project_onto_span

                proj, _ = project_onto_span(others, e.members[idx].state.amplitudes)
                expected = 1.0 - float(np.linalg.norm(proj)) ** 2
                assert abs(abs(dec.residual_weight) ** 2 - expected) <= 1e-9


class TestClassifiableStates:
    def test_bb84_infeasible(self, bb84):
        report = classifiable_states(bb84)
        assert not report.feasible
        assert all(not s.classifiable for s in report.per_state)
        assert all(s.residual_weight_sq <= 1e-18 for s in report.per_state)

    def test_orthonormal_singletons(self):
        e = build_ensemble([ket(1, 0, 0), ket(0, 1, 0)], [0.5, 0.5], [1, 2], 2)
        report = classifiable_states(e)
        assert report.feasible
        assert all(s.classifiable for s in report.per_state)

    def test_partial_classifiability(self):
        e = build_ensemble([KET0, KET1, KET_PLUS], [0.4, 0.3, 0.3], [1, 2, 2], 2)
        report = classifiable_states(e)
        flags = [s.classifiable for s in report.per_state]
        assert flags == [False, True, True]
        assert report.feasible

    def test_duplicate_state_infeasible(self):
        e = build_ensemble([KET_PLUS, KET_PLUS], [0.5, 0.5], [1, 2], 2)
        assert not is_conclusively_classifiable(e)

    def test_two_orthogonal_states(self):
        e = build_ensemble([KET0, KET1], [0.5, 0.5], [1, 2], 2)
        assert is_conclusively_classifiable(e)

    def test_singleton_classes_reduce_to_linear_independence(self):
        # all-singleton classes: every state classifiable iff states linearly
        # independent (Gram rank = N)
        rng = np.random.Generator(np.random.Philox(33))
        for _ in range(40):
            d = int(rng.integers(2, 5))
            size = int(rng.integers(2, min(d + 1, 4) + 1))
            if rng.random() < 0.5:
                states = [random_state(rng, d) for _ in range(size)]
            else:
                # force dependence: last state inside the span of the others
                states = [random_state(rng, d) for _ in range(size - 1)]
                coeffs = rng.standard_normal(size - 1) + 1j * rng.standard_normal(size - 1)
                mix = sum(c * s for c, s in zip(coeffs, states))
                if np.linalg.norm(mix) < 1e-9:
                    continue
                states.append(mix / np.linalg.norm(mix))
            priors = rng.dirichlet(np.ones(size)).tolist()
            e = build_ensemble(states, priors, list(range(1, size + 1)), size)
            g = gram_matrix(e)
            rank = int(np.sum(np.linalg.svd(g, compute_uv=False) > 1e-9))
            all_classifiable = all(s.classifiable for s in classifiable_states(e).per_state)
            assert all_classifiable == (rank == size)

    def test_unitary_invariance(self):
        rng = np.random.Generator(np.random.Philox(34))
        for _ in range(10):
            e = random_ensemble(rng)
            x = rng.standard_normal((e.dim, e.dim)) + 1j * rng.standard_normal((e.dim, e.dim))
            u, _ = np.linalg.qr(x)
            rotated = build_ensemble(
                [u @ m.state.amplitudes for m in e.members],
                [m.prior for m in e.members],
                [m.class_label for m in e.members],
                e.n_classes,
            )
            f1 = [s.classifiable for s in classifiable_states(e).per_state]
            f2 = [s.classifiable for s in classifiable_states(rotated).per_state]
            assert f1 == f2


class TestClassSupportBasis:
    def test_support_orthogonal_to_other_classes(self):
        rng = np.random.Generator(np.random.Philox(35))
        for _ in range(10):
            e = random_ensemble(rng)
            for label in range(1, e.n_classes + 1):
                q = class_support_basis(e, label)
                for other in e.states_outside_class(label):
                    assert np.max(np.abs(q.conj().T @ other)) <= 1e-9 if q.shape[1] else True

    def test_whole_space_complement(self):
        e = build_ensemble([KET0, KET1, KET_PLUS], [0.4, 0.3, 0.3], [1, 2, 2], 2)
        assert class_support_basis(e, 1).shape == (2, 0)
        q2 = class_support_basis(e, 2)
        assert q2.shape == (2, 1)
        assert abs(abs(np.vdot(q2[:, 0], KET1)) - 1) <= 1e-12
