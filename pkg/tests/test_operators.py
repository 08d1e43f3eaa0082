import math
import warnings

import numpy as np
import pytest

from catsize import (
    FluxQubitParams,
    LinearOperator,
    OperatorSet,
    ParameterError,
    basis_state,
    boson_basis,
    boson_hop,
    charge_basis,
    charging_hamiltonian,
    current_operator,
    fermion_basis,
    fermion_hop,
    fermion_operator_set,
    flux_qubit_hamiltonian,
    flux_qubit_operator_set,
    josephson_hamiltonian,
    number_op,
    pair_hop,
    rotated_two_mode_operator_set,
    two_mode_operator_set,
)

PHI0 = 2.0 * math.pi  # flux quantum in units where 2*pi*E_J/Phi_0 = 1


def apply_to(op, basis, config):
    return op.apply(basis_state(basis, config)).amplitudes


class TestPairHop:
    def test_moves_one_pair(self):
        basis = charge_basis(1)
        out = apply_to(pair_hop(basis, 1, 2), basis, (0, 0, 0))
        expected = basis_state(basis, (1, -1, 0)).amplitudes
        assert np.array_equal(out, expected)

    def test_truncation_boundary_drops_image(self):
        basis = charge_basis(1)
        out = apply_to(pair_hop(basis, 1, 2), basis, (1, 0, -1))
        assert np.all(out == 0.0)

    def test_adjoint_is_reverse_hop(self):
        basis = charge_basis(2)
        forward = pair_hop(basis, 1, 2).to_dense()
        reverse = pair_hop(basis, 2, 1).to_dense()
        assert np.array_equal(forward.conj().T, reverse)

    def test_round_trip_is_identity_on_interior(self):
        basis = charge_basis(2)
        product = (pair_hop(basis, 1, 2) @ pair_hop(basis, 2, 1)).to_dense()
        off_diagonal = product - np.diag(np.diagonal(product))
        assert np.abs(off_diagonal).max() == 0.0
        for idx, (n1, n2, _) in enumerate(basis.configs):
            interior = abs(n1 - 1) <= 2 and abs(n2 + 1) <= 2
            assert product[idx, idx] == (1.0 if interior else 0.0)

    def test_parameter_errors(self):
        basis = charge_basis(1)
        with pytest.raises(ParameterError):
            pair_hop(basis, 2, 2)
        with pytest.raises(ParameterError):
            pair_hop(basis, 0, 1)
        with pytest.raises(ParameterError):
            pair_hop(boson_basis(2), 1, 2)


class TestNumberOp:
    def test_diagonal_occupation(self):
        basis = charge_basis(2)
        out = apply_to(number_op(basis, 1), basis, (2, -1, -1))
        expected = 2.0 * basis_state(basis, (2, -1, -1)).amplitudes
        assert np.array_equal(out, expected)

    def test_charge_constraint(self):
        basis = charge_basis(2)
        n3 = number_op(basis, 3).to_dense()
        combined = -number_op(basis, 1).to_dense() - number_op(basis, 2).to_dense()
        assert np.array_equal(n3, combined)

    def test_trace_vanishes_on_symmetric_window(self):
        basis = charge_basis(1)
        # oracle: direct enumeration of the occupation values
        assert sum(cfg[0] for cfg in basis.configs) == 0
        assert np.trace(number_op(basis, 1).to_dense()) == 0.0

    def test_bad_index(self):
        with pytest.raises(ParameterError):
            number_op(charge_basis(1), 4)


class TestBosonHop:
    def test_ladder_amplitude(self):
        basis = boson_basis(2)
        out = apply_to(boson_hop(basis, 2, 1), basis, (2, 0))
        expected = math.sqrt(2.0) * basis_state(basis, (1, 1)).amplitudes
        assert np.allclose(out, expected, atol=0.0)

    def test_empty_source_annihilates(self):
        basis = boson_basis(2)
        out = apply_to(boson_hop(basis, 2, 1), basis, (0, 2))
        assert np.all(out == 0.0)

    def test_double_application(self):
        basis = boson_basis(2)
        hop = boson_hop(basis, 2, 1)
        out = (hop @ hop).apply(basis_state(basis, (2, 0))).amplitudes
        expected = 2.0 * basis_state(basis, (0, 2)).amplitudes
        assert np.allclose(out, expected, atol=1e-15)

    def test_same_mode_rejected(self):
        with pytest.raises(ParameterError):
            boson_hop(boson_basis(2), 1, 1)


def jordan_wigner_hop(m_modes, n_particles, i, j):
    """Independent sign oracle: c_i^dag c_j built from Pauli strings on the
    full 2^M space, then projected onto the fixed-N sector in lexicographic
    configuration order (occupation 1 encoded as the second basis state)."""
    create = np.array([[0.0, 0.0], [1.0, 0.0]])
    annihilate = create.T
    parity = np.diag([1.0, -1.0])
    eye = np.eye(2)

    def site_operator(op, site):
        factors = [parity] * (site - 1) + [op] + [eye] * (m_modes - site)
        full = factors[0]
        for factor in factors[1:]:
            full = np.kron(full, factor)
        return full

    full = site_operator(create, i) @ site_operator(annihilate, j)
    basis = fermion_basis(m_modes, n_particles)
    positions = []
    for cfg in basis.configs:
        pos = 0
        for bit in cfg:
            pos = 2 * pos + bit
        positions.append(pos)
    return full[np.ix_(positions, positions)]


class TestFermionHop:
    def test_single_particle_sign(self):
        basis = fermion_basis(2, 1)
        out = apply_to(fermion_hop(basis, 2, 1), basis, (1, 0))
        expected = basis_state(basis, (0, 1)).amplitudes
        assert np.array_equal(out, expected)

    def test_pauli_blocked(self):
        basis = fermion_basis(2, 1)
        out = apply_to(fermion_hop(basis, 2, 1), basis, (0, 1))
        assert np.all(out == 0.0)

    def test_adjoint_consistency(self):
        basis = fermion_basis(4, 2)
        for i, j in ((1, 2), (1, 4), (3, 2)):
            forward = fermion_hop(basis, i, j).to_dense()
            reverse = fermion_hop(basis, j, i).to_dense()
            assert np.array_equal(forward.conj().T, reverse)

    @pytest.mark.parametrize(("m", "n"), [(3, 1), (4, 2), (5, 3)])
    def test_signs_match_jordan_wigner_oracle(self, m, n):
        basis = fermion_basis(m, n)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i == j:
                    continue
                ours = fermion_hop(basis, i, j).to_dense().real
                oracle = jordan_wigner_hop(m, n, i, j)
                assert np.array_equal(ours, oracle), (i, j)


class TestFluxQubitParams:
    def test_validation(self):
        with pytest.raises(ParameterError):
            FluxQubitParams(0.0)
        with pytest.raises(ParameterError):
            FluxQubitParams(10.0, alpha=0.0)
        with pytest.raises(ParameterError):
            FluxQubitParams(10.0, delta_n=0)

    def test_alpha_above_one_warns(self):
        with pytest.warns(UserWarning):
            FluxQubitParams(10.0, alpha=1.2)

    def test_theta(self):
        assert FluxQubitParams(10.0, f=0.5).theta == pytest.approx(math.pi)


class TestJosephsonHamiltonian:
    def test_real_at_half_frustration(self):
        h = josephson_hamiltonian(FluxQubitParams(20.0, 1.0, 0.5, 3)).to_dense()
        assert np.abs(h.imag).max() < 1e-14
        assert np.abs(h - h.T).max() < 1e-14

    def test_hermitian_for_generic_params(self):
        for f, alpha in ((0.13, 0.7), (0.48, 1.0), (0.91, 0.55)):
            op = josephson_hamiltonian(FluxQubitParams(7.0, alpha, f, 3))
            assert op.hermiticity_defect() < 1e-14

    def test_ring_broken_in_small_alpha_limit(self):
        basis = charge_basis(2)
        params = FluxQubitParams(10.0, 1e-12, 0.3, 2)
        full = josephson_hamiltonian(params, basis).to_dense()
        two_junctions = (
            pair_hop(basis, 2, 1).to_dense() + pair_hop(basis, 3, 2).to_dense()
        )
        broken = -0.5 * (two_junctions + two_junctions.conj().T)
        assert np.abs(full - broken).max() < 1e-12

    def test_basis_mismatch_rejected(self):
        with pytest.raises(ParameterError):
            josephson_hamiltonian(FluxQubitParams(10.0, delta_n=3), charge_basis(2))


class TestChargingHamiltonian:
    def test_zero_charge_config(self):
        basis = charge_basis(1)
        h = charging_hamiltonian(FluxQubitParams(8.0, 1.0, 0.5, 1), basis).to_dense()
        assert h[basis.index_of((0, 0, 0)), basis.index_of((0, 0, 0))] == 0.0

    def test_hand_computed_entries(self):
        # E_J/E_C = 8, alpha = 1: diag = 0.5 * (n1^2 + n3^2 - (n1-n3)^2/3)
        basis = charge_basis(2)
        h = charging_hamiltonian(FluxQubitParams(8.0, 1.0, 0.5, 2), basis).to_dense()
        assert h[basis.index_of((1, 0, -1)), basis.index_of((1, 0, -1))] == pytest.approx(
            1.0 / 3.0, abs=1e-15
        )
        assert h[basis.index_of((1, 1, -2)), basis.index_of((1, 1, -2))] == pytest.approx(
            1.0, abs=1e-15
        )

    def test_diagonal_symmetries(self):
        basis = charge_basis(2)
        h = charging_hamiltonian(FluxQubitParams(5.0, 0.8, 0.5, 2), basis).to_dense()
        diag = {cfg: h[i, i].real for i, cfg in enumerate(basis.configs)}
        for n1, n2, n3 in basis.configs:
            # swapping n1 <-> n3 keeps n2 and the total charge; the image
            # may leave the truncation window, compare only when present
            if (n3, n2, n1) in diag:
                assert diag[(n1, n2, n3)] == pytest.approx(diag[(n3, n2, n1)], abs=1e-14)
            assert diag[(n1, n2, n3)] == pytest.approx(diag[(-n1, -n2, -n3)], abs=1e-14)

    def test_positive_semidefinite(self):
        basis = charge_basis(3)
        h = charging_hamiltonian(FluxQubitParams(5.0, 1.0, 0.5, 3), basis).to_dense()
        assert np.diagonal(h).real.min() >= 0.0


class TestCurrentOperator:
    def test_zero_diagonal_and_hermitian(self):
        op = current_operator(FluxQubitParams(20.0, 0.8, 0.37, 4))
        dense = op.to_dense()
        assert np.abs(np.diagonal(dense)).max() == 0.0
        assert op.hermiticity_defect() < 1e-14

    def test_hellmann_feynman_finite_difference(self):
        # oracle: central difference of the ground energy in frustration
        delta_n, f0, h = 6, 0.45, 1e-5
        basis = charge_basis(delta_n)
        params = FluxQubitParams(20.0, 1.0, f0, delta_n)
        hamiltonian = flux_qubit_hamiltonian(params, basis)
        _, vectors = np.linalg.eigh(hamiltonian.to_dense())
        ground = vectors[:, 0]
        expectation = np.vdot(ground, current_operator(params, basis).matrix @ ground).real

        def ground_energy(f):
            hp = flux_qubit_hamiltonian(FluxQubitParams(20.0, 1.0, f, delta_n), basis)
            return np.linalg.eigvalsh(hp.to_dense())[0]

        derivative = -(ground_energy(f0 + h) - ground_energy(f0 - h)) / (2.0 * h * PHI0)
        assert abs(expectation - derivative) / abs(derivative) < 1e-6

    def test_junction_currents_agree_in_eigenstates(self):
        # charge conservation: the current is the same through every junction
        delta_n = 4
        basis = charge_basis(delta_n)
        params = FluxQubitParams(15.0, 0.9, 0.41, delta_n)
        _, vectors = np.linalg.eigh(flux_qubit_hamiltonian(params, basis).to_dense())
        ground = vectors[:, 0]
        phase = np.exp(1j * params.theta)
        junctions = [
            0.5j * (pair_hop(basis, 2, 1).matrix - pair_hop(basis, 1, 2).matrix),
            0.5j * (pair_hop(basis, 3, 2).matrix - pair_hop(basis, 2, 3).matrix),
            0.5j
            * params.alpha
            * (phase * pair_hop(basis, 1, 3).matrix
               - np.conj(phase) * pair_hop(basis, 3, 1).matrix),
        ]
        values = [np.vdot(ground, j @ ground).real for j in junctions]
        assert max(values) - min(values) < 1e-12
        loop = np.vdot(ground, current_operator(params, basis).matrix @ ground).real
        assert loop == pytest.approx(np.mean(values), abs=1e-12)


class TestHamiltonianSpectrum:
    def test_periodic_in_frustration(self):
        basis = charge_basis(3)
        for f in (0.1, 0.5, 0.73):
            e1 = np.linalg.eigvalsh(
                flux_qubit_hamiltonian(FluxQubitParams(20.0, 1.0, f, 3), basis).to_dense()
            )
            e2 = np.linalg.eigvalsh(
                flux_qubit_hamiltonian(FluxQubitParams(20.0, 1.0, f + 1.0, 3), basis).to_dense()
            )
            assert np.abs(e1 - e2).max() < 1e-10 * max(1.0, np.abs(e1).max())

    def test_reflection_symmetric_about_half(self):
        basis = charge_basis(3)
        for f in (0.2, 0.35, 0.48):
            e1 = np.linalg.eigvalsh(
                flux_qubit_hamiltonian(FluxQubitParams(20.0, 1.0, f, 3), basis).to_dense()
            )
            e2 = np.linalg.eigvalsh(
                flux_qubit_hamiltonian(FluxQubitParams(20.0, 1.0, 1.0 - f, 3), basis).to_dense()
            )
            assert np.abs(e1 - e2).max() < 1e-10 * max(1.0, np.abs(e1).max())

    def test_full_hamiltonian_hermitian(self):
        op = flux_qubit_hamiltonian(FluxQubitParams(12.0, 0.85, 0.21, 3))
        assert op.hermiticity_defect() < 1e-14


class TestLinearOperatorContract:
    def test_hermitian_flag_verified(self):
        basis = boson_basis(1)
        with pytest.raises(ParameterError):
            LinearOperator(basis, boson_hop(basis, 2, 1).matrix, hermitian=True)

    def test_shape_checked(self):
        basis = boson_basis(2)
        with pytest.raises(ParameterError):
            LinearOperator(basis, boson_hop(boson_basis(3), 2, 1).matrix)

    def test_scalar_algebra_keeps_hermitian_flag(self):
        basis = charge_basis(1)
        n1 = number_op(basis, 1)
        assert (2.0 * n1).hermitian
        assert not (1j * n1).hermitian
        assert (n1 + number_op(basis, 2)).hermitian


class TestOperatorSets:
    def test_flux_qubit_sizes_and_labels(self):
        basis = charge_basis(1)
        full = flux_qubit_operator_set(basis)
        assert len(full) == 9 and full.label == "hops_and_numbers"
        hops = flux_qubit_operator_set(basis, "hops_only")
        assert len(hops) == 6 and hops.label == "hops_only"
        with pytest.raises(ParameterError):
            flux_qubit_operator_set(basis, "everything")

    def test_two_mode_sets(self):
        basis = boson_basis(3)
        assert len(two_mode_operator_set(basis)) == 2
        assert len(two_mode_operator_set(basis, include_numbers=True)) == 4

    def test_fermion_set_size(self):
        assert len(fermion_operator_set(fermion_basis(4, 2))) == 12

    def test_empty_set_rejected(self):
        with pytest.raises(ParameterError):
            OperatorSet(())

    def test_rotated_identity_matches_bilinears(self):
        basis = boson_basis(4)
        rotated = rotated_two_mode_operator_set(basis, np.eye(2))
        plain = two_mode_operator_set(basis, include_numbers=True)
        plain_mats = {op.matrix.toarray().tobytes() for op in plain}
        for op in rotated:
            assert op.matrix.toarray().tobytes() in plain_mats

    def test_rotated_requires_unitary(self):
        with pytest.raises(ParameterError):
            rotated_two_mode_operator_set(boson_basis(2), np.array([[1.0, 1.0], [0.0, 1.0]]))
