"""Dense complex-matrix kernel: span projection, Hermitian eigendecomposition,
PSD square root, and completion of an isometry to a unitary.

All functions are pure and operate on immutable inputs; matrices are
numpy.ndarray with dtype complex128, row-major.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# A unit-norm vector counts as inside a span iff its residual norm <= RANK_TOL.
# Absolute tolerance is scale-appropriate because states are O(1)-normalized.
RANK_TOL = 1e-9

HERMITIAN_TOL = 1e-10
ISOMETRY_TOL = 1e-9
COMPLETION_SKIP_TOL = 1e-8


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    """Eigenvalues ascending; eigenvectors as orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_complex(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex)


def orthonormal_span_basis(vectors: list[np.ndarray]) -> np.ndarray:
    """Orthonormal basis (columns) of span(vectors), rank-truncated.

    Singular directions with singular value <= RANK_TOL are dropped.
    Returns a d x r matrix; r = 0 gives a d x 0 matrix.
    """
    if not vectors:
        raise ValueError("dimension mismatch")
    cols = [_as_complex(np.ravel(v)) for v in vectors]
    d = cols[0].shape[0]
    if any(c.shape[0] != d for c in cols):
        raise ValueError("dimension mismatch")
    b = np.column_stack(cols)
    u, s, _ = np.linalg.svd(b, full_matrices=False)
    rank = int(np.sum(s > RANK_TOL))
    return u[:, :rank]


def project_onto_span(
    basis_vectors: list[np.ndarray], target: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Split target into a component inside span(basis_vectors) and an
    orthogonal residual.

    The basis list may be empty (projection is then zero). Raises
    ValueError("dimension mismatch") when vector lengths disagree.
    """
    t = _as_complex(np.ravel(target))
    if not basis_vectors:
        return np.zeros_like(t), t.copy()
    q = orthonormal_span_basis(list(basis_vectors))
    if q.shape[0] != t.shape[0]:
        raise ValueError("dimension mismatch")
    projection = q @ (q.conj().T @ t)
    residual = t - projection
    return projection, residual


def hermitian_eig(m: np.ndarray) -> HermitianEigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = _as_complex(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("dimension mismatch")
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
        raise ValueError("not Hermitian")
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return HermitianEigenDecomposition(eigenvalues=w, eigenvectors=v)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Positive semidefinite square root of a Hermitian PSD matrix.

    Eigenvalues in [-1e-10, 0) are clamped to 0 as rounding noise; anything
    below that window raises ValueError("not PSD").
    """
    dec = hermitian_eig(m)
    w = dec.eigenvalues
    if w[0] < -HERMITIAN_TOL:
        raise ValueError("not PSD")
    w = np.maximum(w, 0.0)
    v = dec.eigenvectors
    root = (v * np.sqrt(w)) @ v.conj().T
    return (root + root.conj().T) / 2


def complete_to_unitary(isometry_columns: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full unitary matrix.

    The first `cols` columns of the result equal the input. Completion picks
    standard basis vectors in order, Gram-Schmidt orthogonalized against the
    columns accepted so far; candidates whose post-projection norm is <= 1e-8
    are skipped.
    """
    v = _as_complex(isometry_columns)
    if v.ndim != 2:
        raise ValueError("not an isometry")
    rows, cols = v.shape
    if cols > rows:
        raise ValueError("not an isometry")
    defect = np.max(np.abs(v.conj().T @ v - np.eye(cols))) if cols else 0.0
    if defect > ISOMETRY_TOL:
        raise ValueError("not an isometry")
    columns = [v[:, j] for j in range(cols)]
    for j in range(rows):
        if len(columns) == rows:
            break
        cand = np.zeros(rows, dtype=complex)
        cand[j] = 1.0
        # two orthogonalization passes keep the completion orthonormal
        for _ in range(2):
            for c in columns:
                cand = cand - c * np.vdot(c, cand)
        norm = np.linalg.norm(cand)
        if norm <= COMPLETION_SKIP_TOL:
            continue
        columns.append(cand / norm)
    u = np.column_stack(columns)
    if u.shape != (rows, rows):
        raise ValueError("not an isometry")
    return u
