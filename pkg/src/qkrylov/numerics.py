"""Dense complex linear algebra: Hermitian eigendecomposition, modified
Gram-Schmidt orthonormalization, numerical rank, and principal angles
between subspaces.

All functions are pure and operate on plain numpy arrays; state vectors are
1-d complex arrays, matrices are 2-d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

DEFAULT_RANK_TOL = 1e-10
DEFAULT_EIG_TOL = 1e-8
HERMITICITY_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a
    Hermitian matrix, so that H = V diag(eigenvalues) V^dagger."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def spectral_range(self) -> float:
        return float(self.eigenvalues[-1] - self.eigenvalues[0])

    def reconstruct(self) -> np.ndarray:
        """V diag(eigenvalues) V^dagger, for consistency checks."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest entrywise deviation of a matrix from its conjugate transpose."""
    matrix = np.asarray(matrix)
    return float(np.abs(matrix - matrix.conj().T).max())


def eigendecompose_hermitian(matrix: np.ndarray, rtol: float = HERMITICITY_RTOL) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix.

    Parameters
    ----------
    matrix : (n, n) array_like
        Must be square and Hermitian within ``rtol * max|matrix|``.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues ascending, eigenvector columns orthonormal.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"matrix must be square, got shape {matrix.shape}")
    scale = float(np.abs(matrix).max()) if matrix.size else 0.0
    defect = hermiticity_defect(matrix)
    if scale > 0.0 and defect > rtol * scale:
        raise ValueError(
            "matrix is not Hermitian: max |M - M^dagger| = "
            f"{defect:.3e} exceeds {rtol:g} * max|M| = {rtol * scale:.3e}"
        )
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def gram_schmidt(vectors, tol: float = DEFAULT_RANK_TOL) -> list[np.ndarray]:
    """Orthonormalize vectors with modified Gram-Schmidt plus one full
    re-orthogonalization pass.

    A vector is dropped when the residual left after projecting out the
    vectors accepted so far has norm <= tol times its own pre-projection
    norm (zero vectors are always dropped). Output order follows the input
    order of the survivors; an empty input yields an empty list.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    basis: list[np.ndarray] = []
    dim: int | None = None
    for vec in vectors:
        vec = np.asarray(vec, dtype=complex)
        if vec.ndim != 1:
            raise ValueError("inputs must be 1-d vectors")
        if dim is None:
            dim = vec.shape[0]
        elif vec.shape[0] != dim:
            raise ValueError(f"vector dimensions differ: {vec.shape[0]} != {dim}")
        norm0 = float(np.linalg.norm(vec))
        if norm0 == 0.0:
            continue
        residual = vec.copy()
        for _ in range(2):  # second pass restores orthogonality near dependence
            for q in basis:
                residual -= np.vdot(q, residual) * q
        rnorm = float(np.linalg.norm(residual))
        if rnorm > tol * norm0:
            basis.append(residual / rnorm)
    return basis


def numerical_rank(vectors, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of vectors surviving gram_schmidt at the given tolerance."""
    return len(gram_schmidt(vectors, tol))


def principal_angles(a_vectors, b_vectors, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Principal angles between span(A) and span(B) in radians, ascending.

    Each list is orthonormalized internally first, so linearly dependent
    inputs are fine. Angles come from the combined cosine/sine formulation
    (singular values of the cross-Gram matrix, clamped into [0, 1], with the
    sine-based correction for small angles), which resolves angles far below
    the ~1e-8 floor a plain arccos would hit in double precision.
    """
    qa = gram_schmidt(a_vectors, tol)
    qb = gram_schmidt(b_vectors, tol)
    if not qa or not qb:
        raise ValueError("each input must span at least one dimension")
    if qa[0].shape[0] != qb[0].shape[0]:
        raise ValueError(
            f"ambient dimensions differ: {qa[0].shape[0]} != {qb[0].shape[0]}"
        )
    angles = subspace_angles(np.column_stack(qa), np.column_stack(qb))
    return np.sort(angles)


def spans_equal(a_vectors, b_vectors, angle_tol: float = 1e-8, tol: float = DEFAULT_RANK_TOL) -> bool:
    """True when both spans have equal dimension and all principal angles
    are at most angle_tol."""
    qa = gram_schmidt(a_vectors, tol)
    qb = gram_schmidt(b_vectors, tol)
    if len(qa) != len(qb):
        return False
    return float(principal_angles(qa, qb, tol).max()) <= angle_tol


def eigenvalue_clusters(eigenvalues: np.ndarray, eig_tol: float = DEFAULT_EIG_TOL) -> list[tuple[int, int]]:
    """Group ascending eigenvalues into clusters of numerically equal values.

    A new cluster opens when the gap to the previous eigenvalue exceeds
    ``eig_tol * max(1, spectral range)``. Returns half-open index ranges
    (start, stop) covering the input.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.ndim != 1 or eigenvalues.size == 0:
        raise ValueError("eigenvalues must be a nonempty 1-d array")
    if np.any(np.diff(eigenvalues) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    gap_tol = eig_tol * max(1.0, float(eigenvalues[-1] - eigenvalues[0]))
    clusters: list[tuple[int, int]] = []
    start = 0
    for i in range(1, eigenvalues.size):
        if eigenvalues[i] - eigenvalues[i - 1] > gap_tol:
            clusters.append((start, i))
            start = i
    clusters.append((start, eigenvalues.size))
    return clusters
