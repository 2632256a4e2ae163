import numpy as np
import pytest

import qkrylov as qk
from oracles import random_hermitian


@pytest.fixture
def generic_prop():
    return qk.Propagator(random_hermitian(6, np.random.default_rng(77)))


class TestPropagator:
    def test_time_zero_is_identity(self, generic_prop):
        psi0 = qk.random_state(6, 1)
        assert np.linalg.norm(generic_prop.evolve(psi0, 0.0) - psi0) <= 1e-12

    @pytest.mark.parametrize("t", [0.1, 1.7, -3.2, 25.0])
    def test_norm_preserved(self, generic_prop, t):
        psi0 = qk.random_state(6, 2)
        assert abs(np.linalg.norm(generic_prop.evolve(psi0, t)) - 1.0) <= 1e-12

    def test_group_law(self, generic_prop):
        psi0 = qk.random_state(6, 3)
        t1, t2 = 0.8, 2.3
        once = generic_prop.evolve(psi0, t1 + t2)
        twice = generic_prop.evolve(generic_prop.evolve(psi0, t1), t2)
        assert np.linalg.norm(once - twice) <= 1e-10

    def test_negative_time_inverts(self, generic_prop):
        psi0 = qk.random_state(6, 4)
        back = generic_prop.evolve(generic_prop.evolve(psi0, 1.9), -1.9)
        assert np.linalg.norm(back - psi0) <= 1e-10

    def test_energy_conserved(self):
        h = random_hermitian(6, np.random.default_rng(78))
        prop = qk.Propagator(h)
        psi0 = qk.random_state(6, 5)
        e0 = np.vdot(psi0, h @ psi0).real
        for t in (0.5, 3.1, 12.0):
            psi_t = prop.evolve(psi0, t)
            assert abs(np.vdot(psi_t, h @ psi_t).real - e0) <= 1e-10

    def test_single_site_x_field_periodicity(self, builtin_props):
        # both eigenphases at t = 2*pi equal -1, so the full period is 4*pi
        prop = builtin_props["H1"]
        psi0 = qk.random_state(16, 6)
        assert np.linalg.norm(prop.evolve(psi0, 2.0 * np.pi) + psi0) <= 1e-10
        assert np.linalg.norm(prop.evolve(psi0, 4.0 * np.pi) - psi0) <= 1e-10

    def test_dimension_mismatch_rejected(self, generic_prop):
        with pytest.raises(ValueError, match="shape"):
            generic_prop.evolve(np.zeros(5, dtype=complex), 1.0)

    def test_nonfinite_time_rejected(self, generic_prop):
        with pytest.raises(ValueError, match="finite"):
            generic_prop.evolve(qk.random_state(6, 7), float("inf"))

    def test_constructor_needs_exactly_one_source(self):
        with pytest.raises(ValueError, match="exactly one"):
            qk.Propagator()


class TestGlobalPhase:
    def test_zero_phase_is_identity(self):
        psi = qk.random_state(4, 8)
        assert np.array_equal(qk.apply_global_phase(psi, 0.0), psi)

    def test_pi_flips_sign(self):
        e1 = np.zeros(3, dtype=complex)
        e1[0] = 1.0
        assert np.linalg.norm(qk.apply_global_phase(e1, np.pi) + e1) <= 1e-12

    def test_norm_unchanged(self):
        psi = qk.random_state(5, 9)
        assert abs(np.linalg.norm(qk.apply_global_phase(psi, 1.234)) - 1.0) <= 1e-12

    def test_per_vector_phases_preserve_span(self, builtin_props):
        prop = builtin_props["H2"]
        psi0 = qk.random_state(16, 10)
        basis = qk.sampled_basis(prop, psi0)
        rng = np.random.default_rng(11)
        phased = [qk.apply_global_phase(g, rng.uniform(0, 2 * np.pi)) for g in basis.vectors]
        assert qk.principal_angles(basis.vectors, phased).max() <= 1e-10


class TestRandomState:
    def test_unit_norm(self):
        for seed in range(5):
            assert abs(np.linalg.norm(qk.random_state(8, seed)) - 1.0) <= 1e-12

    def test_deterministic(self):
        assert np.array_equal(qk.random_state(8, 123), qk.random_state(8, 123))

    def test_zero_dim_rejected(self):
        with pytest.raises(ValueError, match="dim"):
            qk.random_state(0, 1)

    def test_uniform_on_sphere(self):
        # mean squared overlap with a fixed axis must be 1/dim
        rng = np.random.default_rng(99)
        overlaps = [abs(qk.haar_state(2, rng)[0]) ** 2 for _ in range(10_000)]
        assert abs(np.mean(overlaps) - 0.5) <= 0.02

    def test_basis_state(self):
        e2 = qk.basis_state(4, 2)
        assert e2[2] == 1.0 and np.linalg.norm(e2) == 1.0
        with pytest.raises(ValueError, match="range"):
            qk.basis_state(4, 4)
