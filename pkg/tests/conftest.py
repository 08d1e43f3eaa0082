import numpy as np
import pytest

from catsize import (
    FluxQubitParams,
    charge_basis,
    current_operator,
    current_states_2d,
    eig_hermitian,
    flux_qubit_hamiltonian,
)


@pytest.fixture(scope="session")
def flux_standard():
    """Standard working point: E_J/E_C = 20, alpha = 1, f = 0.5, delta_n = 6."""
    params = FluxQubitParams(20.0, 1.0, 0.5, 6)
    basis = charge_basis(6)
    hamiltonian = flux_qubit_hamiltonian(params, basis)
    eig = eig_hermitian(hamiltonian)
    i_op = current_operator(params, basis)
    pair = current_states_2d(eig, i_op)
    return params, basis, eig, i_op, pair


@pytest.fixture()
def rng():
    return np.random.default_rng(20260808)
