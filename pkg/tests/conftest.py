import pytest

import qkrylov as qk


@pytest.fixture(scope="session")
def builtin_matrices():
    return {name: qk.build_hamiltonian(qk.builtin_hamiltonian(name)) for name in qk.BUILTIN_ORDER}


@pytest.fixture(scope="session")
def builtin_props(builtin_matrices):
    return {name: qk.Propagator(matrix) for name, matrix in builtin_matrices.items()}
