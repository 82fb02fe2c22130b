"""
Tests for labeled registers, operators and the linear algebra core.
"""

import math

import numpy as np
import pytest

from pylandauer.gates import cnot, elementary_gate, partial_swap
from pylandauer.msc.Errors import (CompositionError, LabelError, ShapeError,
                                   ValidationError)
from pylandauer.qstate import (PAULI, DensityOperator, Observable,
                               QuantumChannel, QubitRegister,
                               UnitaryOperator, apply_channel, basis_state,
                               eigh, embed, evolve, expectation, fidelity,
                               maximally_mixed, partial_trace, pauli,
                               process_distance, pure_state,
                               random_density_operator, random_unitary,
                               reorder_matrix, tensor_compose, trace_distance)
from pylandauer.nmrsim import phase_damping_channel


def thermal(p0: float, label: str = 'R') -> DensityOperator:
    return DensityOperator.on([label], np.diag([p0, 1 - p0]))


BELL = pure_state(['R', 'S'], np.array([1, 0, 0, 1]) / math.sqrt(2))
PLUS = pure_state(['A'], np.array([1, 1]) / math.sqrt(2))


class TestQubitRegister:
    """Label bookkeeping and canonical order."""

    def test_canonical_order(self):
        assert QubitRegister(('S', 'A', 'R')).labels == ('A', 'R', 'S')

    def test_dimension(self):
        assert QubitRegister.of('A', 'R', 'S').dimension == 8

    def test_duplicate_labels_rejected(self):
        with pytest.raises(LabelError):
            QubitRegister(('R', 'R'))

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            QubitRegister.of('R', 'S').position('A')

    def test_reorder_matrix_swaps_factors(self):
        a = np.diag([1.0, 2.0])
        b = np.diag([3.0, 5.0])
        reordered = reorder_matrix(np.kron(a, b), ('S', 'R'), ('R', 'S'))
        np.testing.assert_allclose(reordered, np.kron(b, a))


class TestOperators:
    """Construction-time validation."""

    def test_non_hermitian_state_rejected(self):
        with pytest.raises(ValidationError):
            DensityOperator.on(['S'], [[0.5, 0.5], [0.0, 0.5]])

    def test_wrong_trace_rejected(self):
        with pytest.raises(ValidationError):
            DensityOperator.on(['S'], np.eye(2))

    def test_negative_state_rejected(self):
        with pytest.raises(ValidationError):
            DensityOperator.on(['S'], np.diag([1.2, -0.2]))

    def test_non_unitary_rejected(self):
        with pytest.raises(ValidationError):
            UnitaryOperator.on(['S'], [[1, 1], [0, 1]])

    def test_incomplete_channel_rejected(self):
        with pytest.raises(ValidationError):
            QuantumChannel.on(['S'], [0.5 * PAULI['i']])

    def test_shape_must_match_register(self):
        with pytest.raises(ShapeError):
            Observable.on(['R', 'S'], np.eye(2))

    def test_matrices_are_read_only(self):
        state = maximally_mixed(['S'])
        with pytest.raises(ValueError):
            state.matrix[0, 0] = 1.0


class TestTensorCompose:
    """Products on the union register."""

    def test_mixed_times_mixed(self):
        rho = tensor_compose(maximally_mixed(['R']), maximally_mixed(['S']))
        np.testing.assert_allclose(rho.matrix, np.eye(4) / 4)

    def test_basis_product(self):
        rho = tensor_compose(basis_state(['R'], '0'), basis_state(['S'], '1'))
        np.testing.assert_allclose(rho.matrix,
                                   basis_state(['R', 'S'], '01').matrix)

    def test_thermal_times_mixed(self):
        rho = tensor_compose(thermal(0.9), maximally_mixed(['S']))
        np.testing.assert_allclose(np.diag(rho.matrix).real,
                                   [0.45, 0.45, 0.05, 0.05])

    def test_argument_order_is_irrelevant(self):
        a = tensor_compose(thermal(0.9), thermal(0.7, 'S'))
        b = tensor_compose(thermal(0.7, 'S'), thermal(0.9))
        assert a.labels == b.labels == ('R', 'S')
        np.testing.assert_array_equal(a.matrix, b.matrix)

    def test_overlapping_labels(self):
        with pytest.raises(CompositionError):
            tensor_compose(maximally_mixed(['R']), maximally_mixed(['R']))


class TestPartialTrace:
    """Reduction to label subsets."""

    def test_product_factor_recovered(self, rng):
        rho_a = random_density_operator(['A'], rng)
        rho_r = random_density_operator(['R'], rng)
        joint = tensor_compose(rho_a, rho_r)
        np.testing.assert_allclose(partial_trace(joint, ['A']).matrix,
                                   rho_a.matrix, atol=1e-14)
        np.testing.assert_allclose(partial_trace(joint, ['R']).matrix,
                                   rho_r.matrix, atol=1e-14)

    def test_bell_marginal_is_mixed(self):
        np.testing.assert_allclose(partial_trace(BELL, ['R']).matrix,
                                   np.eye(2) / 2, atol=1e-15)

    def test_cnot_output_marginal(self):
        joint = evolve(tensor_compose(thermal(0.9), maximally_mixed(['S'])),
                       cnot('S', 'R'))
        np.testing.assert_allclose(partial_trace(joint, ['R']).matrix,
                                   np.eye(2) / 2, atol=1e-15)

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            partial_trace(BELL, ['A'])

    def test_empty_keep(self):
        with pytest.raises(LabelError):
            partial_trace(BELL, [])


class TestEvolve:
    """Unitary evolution with automatic embedding."""

    def test_identity(self, rng):
        rho = random_density_operator(['R', 'S'], rng)
        identity = UnitaryOperator.on(['R', 'S'], np.eye(4))
        np.testing.assert_allclose(evolve(rho, identity).matrix, rho.matrix)

    def test_hadamard_on_zero(self):
        out = evolve(basis_state(['A'], '0'), elementary_gate('H', 'A'))
        np.testing.assert_allclose(out.matrix, PLUS.matrix, atol=1e-15)

    def test_swap_exchanges_factors(self, rng):
        rho_r = random_density_operator(['R'], rng)
        rho_s = random_density_operator(['S'], rng)
        out = evolve(tensor_compose(rho_r, rho_s), partial_swap(math.pi))
        expected = tensor_compose(DensityOperator.on(['R'], rho_s.matrix),
                                  DensityOperator.on(['S'], rho_r.matrix))
        np.testing.assert_allclose(out.matrix, expected.matrix, atol=1e-14)

    def test_embedding_into_larger_register(self, rng):
        rho = random_density_operator(['A', 'R', 'S'], rng)
        x_s = elementary_gate('X', 'S')
        full = UnitaryOperator.on(['A', 'R', 'S'],
                                  np.kron(np.eye(4), PAULI['x']))
        np.testing.assert_allclose(evolve(rho, x_s).matrix,
                                   evolve(rho, full).matrix, atol=1e-14)

    def test_spectrum_preserved(self, rng):
        for _ in range(20):
            rho = random_density_operator(['A', 'R', 'S'], rng)
            u = random_unitary(['A', 'R', 'S'], rng)
            out = evolve(rho, u)
            assert np.trace(out.matrix).real == pytest.approx(1, abs=1e-10)
            np.testing.assert_allclose(out.eigenvalues(), rho.eigenvalues(),
                                       atol=1e-10)

    def test_foreign_labels(self):
        with pytest.raises(ShapeError):
            evolve(maximally_mixed(['S']), cnot('S', 'R'))


class TestApplyChannel:
    """Kraus maps."""

    def test_full_dephasing(self):
        out = apply_channel(PLUS, phase_damping_channel('A', 0.0))
        np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-15)

    def test_identity_channel(self, rng):
        rho = random_density_operator(['A'], rng)
        identity = QuantumChannel.on(['A'], [PAULI['i']])
        np.testing.assert_allclose(apply_channel(rho, identity).matrix,
                                   rho.matrix)

    def test_half_decay(self):
        out = apply_channel(PLUS, phase_damping_channel('A', 0.5))
        assert out.matrix[0, 1].real == pytest.approx(0.25, abs=1e-15)
        assert out.matrix[0, 0].real == pytest.approx(0.5, abs=1e-15)

    def test_unitary_channel_equals_evolve(self, rng):
        rho = random_density_operator(['R', 'S'], rng)
        u = random_unitary(['R', 'S'], rng)
        np.testing.assert_allclose(
            apply_channel(rho, QuantumChannel.from_unitary(u)).matrix,
            evolve(rho, u).matrix, atol=1e-14)


class TestExpectation:
    """Real expectation values of Hermitian observables."""

    def test_sigma_x_on_plus(self):
        assert expectation(PLUS, pauli('x', 'A')) == pytest.approx(1)

    def test_sigma_z_on_mixed(self):
        assert expectation(maximally_mixed(['S']),
                           pauli('z', 'S')) == pytest.approx(0, abs=1e-15)

    def test_non_hermitian(self):
        from pylandauer.qstate import Operator
        with pytest.raises(ValidationError):
            expectation(PLUS, Operator.on(['A'], [[0, 1], [0, 0]]))

    def test_eigenbasis_cross_check(self, rng):
        rho = random_density_operator(['R', 'S'], rng)
        matrix = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        obs = Observable.on(['R', 'S'], (matrix + matrix.conj().T) / 2)
        values, vectors = eigh(obs)
        direct = sum(values[i] * (vectors[:, i].conj() @ rho.matrix
                                  @ vectors[:, i]).real for i in range(4))
        assert expectation(rho, obs) == pytest.approx(direct, abs=1e-10)

    def test_pauli_bounded(self, rng):
        rho = random_density_operator(['A'], rng)
        for kind in 'xyz':
            assert abs(expectation(rho, pauli(kind, 'A'))) <= 1 + 1e-12


class TestEigh:
    """Eigen-decomposition."""

    def test_sigma_z(self):
        values, vectors = eigh(pauli('z', 'S'))
        np.testing.assert_allclose(values, [-1, 1])
        assert abs(vectors[1, 0]) == pytest.approx(1)

    def test_degenerate_identity(self):
        values, vectors = eigh(Observable.on(['S'], np.eye(2)))
        np.testing.assert_allclose(values, [1, 1])
        np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(2),
                                   atol=1e-12)

    def test_reservoir_hamiltonian(self, gap):
        values, _ = eigh(Observable.on(['R'], np.diag([0.0, gap])))
        np.testing.assert_allclose(values, [0.0, gap])

    def test_reconstruction(self, rng):
        matrix = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        obs = Observable.on(['A', 'R', 'S'], (matrix + matrix.conj().T) / 2)
        values, vectors = eigh(obs)
        np.testing.assert_allclose((vectors * values) @ vectors.conj().T,
                                   obs.matrix, atol=1e-10)


class TestDistances:
    """Fidelity, trace distance and process distance."""

    def test_identical_states(self, rng):
        rho = random_density_operator(['R', 'S'], rng)
        assert fidelity(rho, rho) == pytest.approx(1, abs=1e-10)
        assert trace_distance(rho, rho) == pytest.approx(0, abs=1e-12)

    def test_orthogonal_states(self):
        zero, one = basis_state(['S'], '0'), basis_state(['S'], '1')
        assert fidelity(zero, one) == pytest.approx(0, abs=1e-12)
        assert trace_distance(zero, one) == pytest.approx(1)

    def test_process_distance_ignores_global_phase(self, rng):
        u = random_unitary(['R', 'S'], rng)
        v = UnitaryOperator(u.register, np.exp(0.3j) * u.matrix)
        assert process_distance(u, v) == pytest.approx(0, abs=1e-12)

    def test_embed_identity_padding(self):
        x = embed(elementary_gate('X', 'R'), QubitRegister.of('R', 'S'))
        np.testing.assert_allclose(x, np.kron(PAULI['x'], np.eye(2)))
