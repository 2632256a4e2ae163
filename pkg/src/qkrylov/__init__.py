"""Measurable Krylov spaces for quantum time evolution.

Builds the sampled basis of time-evolved states, the classical power basis,
the Lanczos chain, and the eigen-cluster basis of a Hermitian generator, and
verifies that they span the same invariant subspace whose dimension equals
the number of distinct eigenvalues.
"""

from .analysis import (
    EffectiveDimensionCurve,
    LAMBDA_DEFAULT,
    ReconstructionReport,
    count_distinct_eigenvalues,
    effective_dimension,
    effective_dimension_sweep,
    phase_invariance_check,
    reconstruct,
    reconstruction_error_experiment,
)
from .evolution import Propagator, apply_global_phase, basis_state, haar_state, random_state
from .hamiltonian import (
    BUILTIN_ORDER,
    EXPECTED_KRYLOV_DIMENSION,
    HamiltonianSpec,
    build_hamiltonian,
    builtin_hamiltonian,
    display_name,
    load_hamiltonian_spec,
    parse_hamiltonian_spec,
    pauli_string_matrix,
    single_site_pauli,
)
from .krylov import (
    BasisSet,
    DEFAULT_DT,
    LanczosData,
    default_time_grid,
    eigen_cluster_basis,
    lanczos,
    partial_sum_basis,
    power_basis,
    power_iterates,
    sampled_basis,
    spread_complexity,
    vandermonde_matrix,
)
from .numerics import (
    DEFAULT_EIG_TOL,
    DEFAULT_RANK_TOL,
    SpectralDecomposition,
    eigendecompose_hermitian,
    eigenvalue_clusters,
    gram_schmidt,
    numerical_rank,
    principal_angles,
    spans_equal,
)

__version__ = "0.1.0"
