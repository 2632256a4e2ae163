"""Verification machinery: reconstruction-error experiments, distinct
eigenvalue counting, effective dimension of the sampled space, and the
phase-invariance check that underpins measurability."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import Propagator, apply_global_phase, haar_state
from .krylov import sampled_basis
from .numerics import (
    DEFAULT_EIG_TOL,
    DEFAULT_RANK_TOL,
    SpectralDecomposition,
    eigenvalue_clusters,
    gram_schmidt,
    principal_angles,
)

#: Overlap threshold below which two consecutive samples count as fully
#: distinguishable.
LAMBDA_DEFAULT = 1.0 / math.sqrt(2.0)


@dataclass
class ReconstructionReport:
    """Averaged reconstruction errors of time-evolved states against the
    orthonormalized sampled basis, per approximation order l = 0..m.

    r_curve rows are (l, r_mean, r_std); r_std (spread across all
    state/time pairs) is an extension beyond the mean curve.
    """

    hamiltonian_name: str
    m: int
    d: int
    r_curve: list[tuple[int, float, float]]
    n_states: int
    n_times: int
    seed: int


@dataclass
class EffectiveDimensionCurve:
    """Effective dimension swept over total evolution times, with the grade
    m and distinct-eigenvalue count d for the saturation line."""

    T_values: np.ndarray
    m_eff_values: np.ndarray
    lam: float
    m: int
    d: int


def reconstruct(w_vectors, target: np.ndarray, l: int) -> np.ndarray:
    """Projection of target onto the first l orthonormal basis vectors
    (the l-th approximation; l = 0 gives the zero vector)."""
    w_vectors = list(w_vectors)
    if not 0 <= l <= len(w_vectors):
        raise ValueError(f"l must lie in [0, {len(w_vectors)}], got {l}")
    target = np.asarray(target, dtype=complex)
    out = np.zeros_like(target)
    for w in w_vectors[:l]:
        out += np.vdot(w, target) * w
    return out


def count_distinct_eigenvalues(spectral: SpectralDecomposition, eig_tol: float = DEFAULT_EIG_TOL) -> int:
    """Number of eigenvalue clusters at the given relative tolerance."""
    return len(eigenvalue_clusters(spectral.eigenvalues, eig_tol))


def reconstruction_error_experiment(
    hamiltonian: np.ndarray,
    n_states: int = 10,
    n_times: int = 25,
    t_max: float = 10.0,
    seed: int = 42,
    dt: float | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
    eig_tol: float = DEFAULT_EIG_TOL,
    name: str = "",
) -> ReconstructionReport:
    """Average reconstruction errors over random initial states and times.

    For each Haar-random initial state the sampled basis is built and
    orthonormalized, n_times random evolution times are drawn uniformly from
    (0, t_max], and the error ||u_l - psi(tau)|| of the l-th approximation is
    recorded for l = 0..m. Errors are averaged over times first, then over
    states; the standard deviation is taken across all state/time pairs.

    States whose grade falls below the maximum use their full basis for the
    larger l (the projection cannot grow past the available vectors).
    """
    if n_states < 1 or n_times < 1:
        raise ValueError("n_states and n_times must be at least 1")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    prop = Propagator(hamiltonian)
    rng = np.random.default_rng(seed)
    grid = None
    if dt is not None:
        from .krylov import default_time_grid

        grid = default_time_grid(prop.dim, dt)

    per_state_errors: list[np.ndarray] = []  # each (n_times, m_x + 1)
    grades: list[int] = []
    for _ in range(n_states):
        psi0 = haar_state(prop.dim, rng)
        basis = sampled_basis(prop, psi0, time_grid=grid, tol=rank_tol)
        w = gram_schmidt(basis.vectors, rank_tol)
        m_x = len(w)
        grades.append(m_x)
        taus = t_max * (1.0 - rng.random(n_times))  # uniform on (0, t_max]
        errs = np.empty((n_times, m_x + 1))
        for k, tau in enumerate(taus):
            psi_t = prop.evolve(psi0, float(tau))
            partial = np.zeros_like(psi_t)
            errs[k, 0] = float(np.linalg.norm(partial - psi_t))
            for j, wv in enumerate(w):
                partial = partial + np.vdot(wv, psi_t) * wv
                errs[k, j + 1] = float(np.linalg.norm(partial - psi_t))
        per_state_errors.append(errs)

    m = max(grades)
    r_curve: list[tuple[int, float, float]] = []
    for l in range(m + 1):
        state_means = []
        pooled = []
        for errs in per_state_errors:
            col = errs[:, min(l, errs.shape[1] - 1)]
            state_means.append(float(col.mean()))
            pooled.append(col)
        r_mean = float(np.mean(state_means))
        r_std = float(np.concatenate(pooled).std())
        r_curve.append((l, r_mean, r_std))

    d = count_distinct_eigenvalues(prop.spectral, eig_tol)
    return ReconstructionReport(
        hamiltonian_name=name,
        m=m,
        d=d,
        r_curve=r_curve,
        n_states=n_states,
        n_times=n_times,
        seed=seed,
    )


def effective_dimension(
    prop: Propagator,
    psi0: np.ndarray,
    T: float,
    m: int,
    lam: float = LAMBDA_DEFAULT,
    theta_offset: int = 0,
) -> float:
    """Interpolated count of numerically distinguishable evolved samples.

    Samples the evolution at theta_i = (i + theta_offset) * T / m for
    i = 1..m and scores each consecutive pair by its squared overlap: pairs
    below the threshold lam add a full dimension, pairs above interpolate
    linearly down to zero as the overlap approaches 1. The first sample
    always contributes 1, so the result lies in [1, m].

    theta_offset=1 selects the shifted grid variant (i + 1) * T / m.
    """
    if T <= 0.0:
        raise ValueError("T must be positive")
    if m < 1:
        raise ValueError("m must be at least 1")
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    samples = [prop.evolve(psi0, (i + theta_offset) * T / m) for i in range(1, m + 1)]
    total = 1.0
    for i in range(m - 1):
        overlap = abs(np.vdot(samples[i], samples[i + 1])) ** 2
        if overlap < lam:
            total += 1.0
        else:
            total += 1.0 - (overlap - lam) / (1.0 - lam)
    return total


def effective_dimension_sweep(
    prop: Propagator,
    psi0: np.ndarray,
    T_grid,
    lam: float = LAMBDA_DEFAULT,
    rank_tol: float = DEFAULT_RANK_TOL,
    eig_tol: float = DEFAULT_EIG_TOL,
    theta_offset: int = 0,
) -> EffectiveDimensionCurve:
    """Effective dimension at every T in the grid, with the grade m (from
    the sampled basis of psi0) and distinct-eigenvalue count d attached."""
    T_grid = np.asarray(T_grid, dtype=float)
    if T_grid.ndim != 1 or T_grid.size == 0:
        raise ValueError("T grid must be a nonempty 1-d array")
    m = sampled_basis(prop, psi0, tol=rank_tol).grade
    d = count_distinct_eigenvalues(prop.spectral, eig_tol)
    values = np.array(
        [effective_dimension(prop, psi0, float(T), m, lam, theta_offset) for T in T_grid]
    )
    return EffectiveDimensionCurve(T_values=T_grid, m_eff_values=values, lam=lam, m=m, d=d)


def phase_invariance_check(
    prop: Propagator,
    psi0: np.ndarray,
    time_grid=None,
    seed: int = 0,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> float:
    """Max principal angle between the sampled span and the same set of
    samples with an independent uniform random phase on every vector.

    Scalar factors cannot change a span, so this must vanish to rounding
    level; it is what makes the basis recoverable from measurements that
    are blind to global phase.
    """
    basis = sampled_basis(prop, psi0, time_grid=time_grid, tol=rank_tol)
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=basis.grade)
    phased = [apply_global_phase(g, alpha) for g, alpha in zip(basis.vectors, phases)]
    return float(principal_angles(basis.vectors, phased, rank_tol).max())
