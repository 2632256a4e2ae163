import math

import numpy as np
import pytest

import qkrylov as qk


class TestReconstruct:
    def test_order_zero_is_zero_vector(self):
        w = [qk.basis_state(4, 0), qk.basis_state(4, 1)]
        out = qk.reconstruct(w, qk.random_state(4, 1), 0)
        assert np.array_equal(out, np.zeros(4, dtype=complex))

    def test_order_beyond_basis_rejected(self):
        w = [qk.basis_state(4, 0)]
        with pytest.raises(ValueError, match="l must lie"):
            qk.reconstruct(w, qk.random_state(4, 1), 2)

    def test_orthogonal_target_annihilated(self):
        w = [qk.basis_state(4, 0), qk.basis_state(4, 1)]
        target = qk.basis_state(4, 3)
        assert np.linalg.norm(qk.reconstruct(w, target, 2)) <= 1e-12

    def test_full_order_recovers_evolved_state(self, builtin_props):
        prop = builtin_props["H3"]
        psi0 = qk.random_state(16, 61)
        basis = qk.sampled_basis(prop, psi0)
        w = qk.gram_schmidt(basis.vectors)
        target = prop.evolve(psi0, 6.123)
        residual = np.linalg.norm(qk.reconstruct(w, target, len(w)) - target)
        assert residual <= 1e-8


class TestCountDistinctEigenvalues:
    def test_identity_is_fully_degenerate(self):
        spec = qk.eigendecompose_hermitian(np.eye(4))
        assert qk.count_distinct_eigenvalues(spec) == 1

    def test_two_site_x_field(self, builtin_props):
        assert qk.count_distinct_eigenvalues(builtin_props["H2"].spectral) == 3

    def test_second_ising_nondegenerate(self, builtin_props):
        assert qk.count_distinct_eigenvalues(builtin_props["HI2"].spectral) == 16

    @pytest.mark.parametrize("shift", [-4.0, 0.37, 110.0])
    def test_invariant_under_spectral_shift(self, builtin_matrices, shift):
        matrix = builtin_matrices["HI3"]
        base = qk.count_distinct_eigenvalues(qk.eigendecompose_hermitian(matrix))
        shifted = qk.count_distinct_eigenvalues(
            qk.eigendecompose_hermitian(matrix + shift * np.eye(16))
        )
        assert base == shifted == 15


class TestReconstructionExperiment:
    def test_single_site_curve(self, builtin_matrices):
        report = qk.reconstruction_error_experiment(builtin_matrices["H1"], seed=7, name="H1")
        assert report.m == 2
        assert report.d == 2
        ls, means, stds = zip(*report.r_curve)
        assert ls == (0, 1, 2)
        assert abs(means[0] - 1.0) <= 1e-12
        assert means[2] <= 1e-8
        assert all(s >= 0.0 for s in stds)

    def test_mean_curve_non_increasing(self, builtin_matrices):
        report = qk.reconstruction_error_experiment(builtin_matrices["HI1"], seed=8)
        means = [row[1] for row in report.r_curve]
        assert all(a >= b - 1e-14 for a, b in zip(means, means[1:]))
        assert report.m == 9

    def test_deterministic_for_fixed_seed(self, builtin_matrices):
        r1 = qk.reconstruction_error_experiment(builtin_matrices["H2"], seed=9)
        r2 = qk.reconstruction_error_experiment(builtin_matrices["H2"], seed=9)
        assert r1.r_curve == r2.r_curve

    def test_parameter_validation(self, builtin_matrices):
        with pytest.raises(ValueError):
            qk.reconstruction_error_experiment(builtin_matrices["H1"], n_states=0)
        with pytest.raises(ValueError):
            qk.reconstruction_error_experiment(builtin_matrices["H1"], t_max=0.0)


class TestEffectiveDimension:
    def test_stationary_evolution_gives_one(self):
        prop = qk.Propagator(np.zeros((8, 8)))
        psi0 = qk.random_state(8, 62)
        assert qk.effective_dimension(prop, psi0, T=3.0, m=4) == pytest.approx(1.0, abs=1e-12)

    def test_distinguishable_samples_give_full_count(self, builtin_props):
        # all consecutive overlaps fall below the threshold at this T
        prop = builtin_props["H4"]
        psi0 = qk.random_state(16, 63)
        value = qk.effective_dimension(prop, psi0, T=10.0, m=5)
        assert value == pytest.approx(5.0, abs=1e-12)

    def test_single_site_recurrence_collapses_dimension(self, builtin_props):
        # at T = 4*pi both samples are global-phase copies of the start state
        prop = builtin_props["H1"]
        psi0 = qk.random_state(16, 64)
        value = qk.effective_dimension(prop, psi0, T=4.0 * np.pi, m=2)
        assert abs(value - 1.0) <= 1e-6

    def test_invariant_under_global_phase(self, builtin_props):
        prop = builtin_props["H2"]
        psi0 = qk.random_state(16, 65)
        a = qk.effective_dimension(prop, psi0, T=5.0, m=3)
        b = qk.effective_dimension(prop, qk.apply_global_phase(psi0, 1.1), T=5.0, m=3)
        assert abs(a - b) <= 1e-12

    def test_shifted_grid_matches_default(self, builtin_props):
        # consecutive overlaps depend only on the sample spacing T/m, so the
        # shifted-grid variant must agree identically
        prop = builtin_props["H3"]
        psi0 = qk.random_state(16, 66)
        for T in (2.0, 4.0 * np.pi, 17.3):
            a = qk.effective_dimension(prop, psi0, T=T, m=4, theta_offset=0)
            b = qk.effective_dimension(prop, psi0, T=T, m=4, theta_offset=1)
            assert abs(a - b) <= 1e-10

    def test_parameter_validation(self, builtin_props):
        psi0 = qk.random_state(16, 1)
        with pytest.raises(ValueError, match="T"):
            qk.effective_dimension(builtin_props["H1"], psi0, T=0.0, m=2)
        with pytest.raises(ValueError, match="m"):
            qk.effective_dimension(builtin_props["H1"], psi0, T=1.0, m=0)
        with pytest.raises(ValueError, match="lam"):
            qk.effective_dimension(builtin_props["H1"], psi0, T=1.0, m=2, lam=1.0)


class TestEffectiveDimensionSweep:
    def test_values_bounded_by_grade(self, builtin_props):
        prop = builtin_props["H2"]
        psi0 = qk.random_state(16, 67)
        curve = qk.effective_dimension_sweep(prop, psi0, np.linspace(0.5, 20.0, 40))
        assert curve.m == 3
        assert curve.d == 3
        assert np.all(curve.m_eff_values >= 1.0 - 1e-12)
        assert np.all(curve.m_eff_values <= curve.m + 1e-12)

    def test_single_site_dip_at_full_period(self, builtin_props):
        prop = builtin_props["H1"]
        psi0 = qk.random_state(16, 68)
        grid = np.array([2.0, np.pi, 4.0 * np.pi, 15.0])
        curve = qk.effective_dimension_sweep(prop, psi0, grid)
        dip = curve.m_eff_values[2]
        assert abs(dip - 1.0) <= 1e-6
        assert curve.m_eff_values[3] > dip

    def test_commensurate_time_reduces_dimension(self, builtin_props):
        # the three-sample grid aligns with the spectrum's 2*pi recurrence at
        # T = 6*pi, so the effective dimension drops there
        prop = builtin_props["H2"]
        psi0 = qk.random_state(16, 69)
        curve = qk.effective_dimension_sweep(prop, psi0, np.array([5.0 * np.pi, 6.0 * np.pi]))
        assert curve.m_eff_values[1] < curve.m_eff_values[0]

    def test_empty_grid_rejected(self, builtin_props):
        with pytest.raises(ValueError, match="grid"):
            qk.effective_dimension_sweep(builtin_props["H1"], qk.random_state(16, 1), [])


class TestPhaseInvariance:
    @pytest.mark.parametrize("seed", range(5))
    def test_all_qubit_x_field(self, builtin_props, seed):
        psi0 = qk.random_state(16, 70)
        angle = qk.phase_invariance_check(builtin_props["H4"], psi0, seed=seed)
        assert angle <= 1e-10

    def test_single_vector_span(self, builtin_props):
        prop = builtin_props["H2"]
        psi0 = prop.spectral.eigenvectors[:, 2]  # stationary: one-vector basis
        assert qk.phase_invariance_check(prop, psi0, seed=3) <= 1e-10

    def test_full_dimension_ising(self, builtin_props):
        psi0 = qk.random_state(16, 71)
        assert qk.phase_invariance_check(builtin_props["HI2"], psi0, seed=1) <= 1e-10
