"""Kernel operations: span projection, eigendecomposition, PSD sqrt,
unitary completion."""
from __future__ import annotations

import numpy as np
import pytest

from qclassify.numerics import (
    complete_to_unitary,
    hermitian_eig,
    project_onto_span,
    psd_sqrt,
)

from conftest import KET0, KET1, KET_PLUS, ket, random_state


class TestProjectOntoSpan:
    def test_empty_basis(self):
        proj, resid = project_onto_span([], KET0)
        assert np.allclose(proj, 0)
        assert np.allclose(resid, KET0)

    def test_target_in_span(self):
        proj, resid = project_onto_span([KET0], KET0)
        assert np.allclose(proj, KET0, atol=1e-12)
        assert np.linalg.norm(resid) < 1e-12

    def test_orthogonal_split(self):
        proj, resid = project_onto_span([KET0], KET_PLUS)
        assert np.allclose(proj, KET0 / np.sqrt(2), atol=1e-12)
        assert np.allclose(resid, KET1 / np.sqrt(2), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            project_onto_span([KET0], ket(1, 0, 0))
        with pytest.raises(ValueError, match="dimension mismatch"):
            project_onto_span([KET0, ket(1, 0, 0)], KET0)

    def test_rank_deficient_basis(self):
        # duplicated direction must not break the projector
        proj, resid = project_onto_span([KET0, KET0, 2 * KET0], KET_PLUS)
        assert np.allclose(proj, KET0 / np.sqrt(2), atol=1e-12)

    def test_residual_orthogonality_and_pythagoras(self):
        rng = np.random.Generator(np.random.Philox(11))
        for _ in range(40):
            d = int(rng.integers(2, 7))
            k = int(rng.integers(1, d + 1))
            basis = [random_state(rng, d) for _ in range(k)]
            target = random_state(rng, d)
            proj, resid = project_onto_span(basis, target)
            assert np.allclose(proj + resid, target, atol=1e-12)
            for b in basis:
                assert abs(np.vdot(b, resid)) < 1e-10
            total = np.linalg.norm(proj) ** 2 + np.linalg.norm(resid) ** 2
            assert abs(total - np.linalg.norm(target) ** 2) < 1e-10


class TestHermitianEig:
    def test_identity(self):
        dec = hermitian_eig(np.eye(2))
        assert np.allclose(dec.eigenvalues, [1, 1])

    def test_diagonal(self):
        dec = hermitian_eig(np.diag([0.0, 1.0]))
        assert np.allclose(dec.eigenvalues, [0, 1])
        assert np.allclose(np.abs(dec.eigenvectors), np.eye(2), atol=1e-12)

    def test_plus_projector(self):
        proj = np.outer(KET_PLUS, KET_PLUS.conj())
        dec = hermitian_eig(proj)
        assert np.allclose(dec.eigenvalues, [0, 1], atol=1e-12)

    def test_not_hermitian(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_eigenvalues_ascending_and_orthonormal(self):
        rng = np.random.Generator(np.random.Philox(12))
        for _ in range(30):
            d = int(rng.integers(2, 9))
            x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            m = (x + x.conj().T) / 2
            dec = hermitian_eig(m)
            w, v = dec.eigenvalues, dec.eigenvectors
            assert np.all(np.diff(w) >= -1e-12)
            assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10
            assert np.max(np.abs(m @ v - v * w)) <= 1e-9
            assert np.max(np.abs((v * w) @ v.conj().T - m)) <= 1e-8


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(psd_sqrt(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(psd_sqrt(np.diag([4.0, 0.0])), np.diag([2.0, 0.0]))

    def test_projector_is_own_root(self):
        proj = np.outer(KET_PLUS, KET_PLUS.conj())
        assert np.allclose(psd_sqrt(proj), proj, atol=1e-12)

    def test_not_psd(self):
        with pytest.raises(ValueError, match="not PSD"):
            psd_sqrt(np.diag([1.0, -1e-9]))

    def test_clamps_rounding_noise(self):
        root = psd_sqrt(np.diag([1.0, -5e-11]))
        assert np.allclose(root, np.diag([1.0, 0.0]), atol=1e-5)

    def test_square_recovers_input(self):
        rng = np.random.Generator(np.random.Philox(13))
        for _ in range(30):
            d = int(rng.integers(2, 7))
            x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            m = x @ x.conj().T / d
            root = psd_sqrt(m)
            assert np.max(np.abs(root @ root - m)) <= 1e-8
            assert np.max(np.abs(root - root.conj().T)) <= 1e-12


class TestCompleteToUnitary:
    def test_full_unitary_unchanged(self):
        u = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        assert np.allclose(complete_to_unitary(u), u)

    def test_single_standard_column(self):
        u = complete_to_unitary(KET0.reshape(2, 1))
        assert u.shape == (2, 2)
        assert np.allclose(u[:, 0], KET0)
        assert np.max(np.abs(u.conj().T @ u - np.eye(2))) <= 1e-9

    def test_single_superposition_column(self):
        u = complete_to_unitary(KET_PLUS.reshape(2, 1))
        assert abs(abs(np.linalg.det(u)) - 1.0) <= 1e-9

    def test_not_an_isometry(self):
        with pytest.raises(ValueError, match="not an isometry"):
            complete_to_unitary(np.array([[1.0], [1.0]], dtype=complex))
        with pytest.raises(ValueError, match="not an isometry"):
            complete_to_unitary(np.ones((2, 3), dtype=complex))

    def test_random_isometries(self):
        rng = np.random.Generator(np.random.Philox(14))
        for _ in range(30):
            d = int(rng.integers(2, 7))
            k = int(rng.integers(1, d + 1))
            x = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
            q, _ = np.linalg.qr(x)
            u = complete_to_unitary(q)
            assert u.shape == (d, d)
            assert np.max(np.abs(u[:, :k] - q)) == 0.0
            assert np.max(np.abs(u.conj().T @ u - np.eye(d))) <= 1e-9
