"""Exact quantum state evolution exp(-iHt)|psi> through the spectral
decomposition of H, plus random initial-state generation."""

from __future__ import annotations

import numpy as np

from .numerics import SpectralDecomposition, eigendecompose_hermitian


class Propagator:
    """Time evolution under a fixed Hermitian generator.

    The eigendecomposition is computed once at construction; each evolve
    call then costs two matrix-vector products, which makes sweeping over
    thousands of times cheap. Instances are immutable and safe to share
    across threads.
    """

    def __init__(self, hamiltonian: np.ndarray | None = None, *, spectral: SpectralDecomposition | None = None):
        if (hamiltonian is None) == (spectral is None):
            raise ValueError("provide exactly one of hamiltonian or spectral")
        if spectral is None:
            spectral = eigendecompose_hermitian(hamiltonian)
        self.spectral = spectral

    @property
    def dim(self) -> int:
        return self.spectral.dim

    def evolve(self, psi: np.ndarray, t: float) -> np.ndarray:
        """Return exp(-iHt) psi; negative t is allowed."""
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (self.dim,):
            raise ValueError(f"state has shape {psi.shape}, expected ({self.dim},)")
        if not np.isfinite(t):
            raise ValueError(f"time must be finite, got {t!r}")
        v = self.spectral.eigenvectors
        amplitudes = v.conj().T @ psi
        return v @ (np.exp(-1j * self.spectral.eigenvalues * t) * amplitudes)


def apply_global_phase(psi: np.ndarray, alpha: float) -> np.ndarray:
    """Multiply every amplitude by exp(i*alpha)."""
    return np.asarray(psi, dtype=complex) * np.exp(1j * alpha)


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector uniform on the complex sphere: normalized complex
    Gaussian, drawn from the caller's generator."""
    if dim < 1:
        raise ValueError(f"dim must be at least 1, got {dim}")
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_state(dim: int, seed: int) -> np.ndarray:
    """Haar-random unit vector, deterministic for a fixed seed."""
    return haar_state(dim, np.random.default_rng(seed))


def basis_state(dim: int, index: int = 0) -> np.ndarray:
    """Computational basis vector e_index."""
    if not 0 <= index < dim:
        raise ValueError(f"index {index} out of range for dim {dim}")
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec
