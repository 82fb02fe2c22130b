"""
Tests for Gibbs states, entropies and the Landauer balance.
"""

import math

import numpy as np
import pytest

from pylandauer.gates import cnot, partial_swap
from pylandauer.msc.Errors import (DomainError, LabelError, ProtocolError,
                                   ShapeError, ValidationError)
from pylandauer.qstate import (DensityOperator, Observable, UnitaryOperator,
                               basis_state, evolve, maximally_mixed,
                               pure_state, random_density_operator,
                               random_unitary, tensor_compose)
from pylandauer.thermo import (ZERO_TEMPERATURE, LandauerProcess,
                               LandauerReport, ThermalReservoirSpec,
                               alpha_from_beta, average_heat, beta_from_alpha,
                               binary_entropy, cnot_heat_theory,
                               entropy_change, gibbs_state, landauer_analyze,
                               mutual_information, partial_swap_heat_theory,
                               relative_entropy, von_neumann_entropy)


def diag_state(p0: float, label: str = 'R') -> DensityOperator:
    return DensityOperator.on([label], np.diag([p0, 1 - p0]))


class TestGibbsState:
    """Thermal states of the reservoir Hamiltonian."""

    def test_infinite_temperature(self, gap):
        h = Observable.on(['R'], np.diag([0.0, gap]))
        np.testing.assert_allclose(gibbs_state(h, 0.0).matrix, np.eye(2) / 2)

    def test_zero_temperature(self, gap):
        h = Observable.on(['R'], np.diag([0.0, gap]))
        np.testing.assert_allclose(gibbs_state(h, ZERO_TEMPERATURE).matrix,
                                   np.diag([1.0, 0.0]))

    def test_table_temperature_populations(self):
        h = Observable.on(['R'], np.diag([0.0, 6.577]))
        rho = gibbs_state(h, 1.0)
        assert rho.matrix[0, 0].real == pytest.approx(0.99861, abs=1e-5)
        assert rho.matrix[1, 1].real == pytest.approx(0.00139, abs=1e-5)

    def test_non_diagonal_hamiltonian(self, gap):
        h = Observable.on(['R'], gap / 2 * np.array([[1, 1], [1, 1]]))
        rho = gibbs_state(h, 1 / 300)
        # Commutes with H and has the Boltzmann weights
        np.testing.assert_allclose(rho.matrix @ h.matrix, h.matrix @ rho.matrix,
                                   atol=1e-9)
        assert sorted(rho.eigenvalues()) == pytest.approx(
            sorted([1 / (1 + math.exp(-gap / 300)),
                    1 / (1 + math.exp(gap / 300))]))

    def test_negative_beta(self, gap):
        h = Observable.on(['R'], np.diag([0.0, gap]))
        with pytest.raises(DomainError):
            gibbs_state(h, -1.0)


class TestThermalReservoirSpec:
    """Reservoir parameters and their derived quantities."""

    def test_populations_ordered(self, reservoir_123):
        p0, p1 = reservoir_123.populations
        assert p0 + p1 == pytest.approx(1)
        assert p0 >= p1

    def test_state_matches_populations(self, reservoir_123):
        np.testing.assert_allclose(np.diag(reservoir_123.state().matrix).real,
                                   reservoir_123.populations)

    def test_infinite_temperature_from_hz(self, reservoir_hot):
        assert reservoir_hot.beta == 0
        assert reservoir_hot.beta_inv_hz == math.inf
        assert reservoir_hot.populations == (0.5, 0.5)

    def test_partition_function(self, reservoir_123):
        z = reservoir_123.partition_function
        assert reservoir_123.populations[0] == pytest.approx(1 / z)

    def test_invalid_temperature(self, gap):
        with pytest.raises(DomainError):
            ThermalReservoirSpec.from_beta_inv_hz(-5.0, gap)


class TestAlpha:
    """Preparation angle and inverse temperature."""

    def test_half_pi_is_infinite_temperature(self, gap):
        assert beta_from_alpha(math.pi / 2, gap) == pytest.approx(0, abs=1e-15)

    def test_small_alpha_is_cold(self, gap):
        assert beta_from_alpha(1e-6, gap) * gap > 25

    def test_out_of_range(self, gap):
        for alpha in (0.0, -0.1, 2.0):
            with pytest.raises(DomainError):
                beta_from_alpha(alpha, gap)

    def test_round_trip(self, gap):
        for alpha in np.linspace(0.05, math.pi / 2, 12):
            beta = beta_from_alpha(alpha, gap)
            assert alpha_from_beta(beta, gap) == pytest.approx(alpha,
                                                               abs=1e-12)

    def test_ground_population_is_cos_squared(self, gap):
        for alpha in np.linspace(0.05, math.pi / 2, 12):
            reservoir = ThermalReservoirSpec.from_alpha(alpha, gap)
            assert reservoir.state().matrix[0, 0].real == pytest.approx(
                math.cos(alpha / 2) ** 2, abs=1e-12)

    def test_coldest_table_row(self):
        # 2 pi 128.8 Hz gap at 123 Hz
        beta = 1 / 123
        alpha = alpha_from_beta(beta, 2 * math.pi * 128.8)
        assert alpha == pytest.approx(0.0745, abs=1e-3)


class TestEntropies:
    """Von Neumann entropy, relative entropy and mutual information."""

    def test_pure_state(self):
        assert von_neumann_entropy(basis_state(['S'], '1')) == pytest.approx(
            0, abs=1e-15)

    def test_maximally_mixed(self):
        assert von_neumann_entropy(maximally_mixed(['S'])) == pytest.approx(
            math.log(2))

    def test_thermal_state(self):
        s = von_neumann_entropy(diag_state(0.99861))
        assert s == pytest.approx(binary_entropy(0.99861))
        assert s == pytest.approx(0.010527, abs=1e-5)

    def test_bounded_by_log_d(self, rng):
        for _ in range(10):
            rho = random_density_operator(['A', 'R', 'S'], rng)
            assert -1e-12 <= von_neumann_entropy(rho) <= math.log(8) + 1e-12

    def test_entropy_change(self):
        mixed = maximally_mixed(['S'])
        assert entropy_change(mixed, mixed) == 0
        assert entropy_change(mixed, basis_state(['S'], '0')) == \
            pytest.approx(math.log(2))
        assert entropy_change(mixed, diag_state(0.99861, 'S')) == \
            pytest.approx(0.682614, abs=1e-5)

    def test_entropy_change_register_mismatch(self):
        with pytest.raises(ShapeError):
            entropy_change(maximally_mixed(['S']), maximally_mixed(['R']))

    def test_relative_entropy_self(self, rng):
        rho = random_density_operator(['R'], rng)
        assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-12)

    def test_relative_entropy_closed_form(self):
        p0 = 0.9
        expected = -0.5 * math.log(p0 * (1 - p0)) - math.log(2)
        assert relative_entropy(maximally_mixed(['R']), diag_state(p0)) == \
            pytest.approx(expected, abs=1e-12)

    def test_relative_entropy_disjoint_support(self):
        assert relative_entropy(basis_state(['R'], '0'),
                                basis_state(['R'], '1')) == math.inf

    def test_mutual_information_product(self, rng):
        joint = tensor_compose(random_density_operator(['R'], rng),
                               random_density_operator(['S'], rng))
        assert mutual_information(joint, (['R'], ['S'])) == pytest.approx(
            0, abs=1e-12)

    def test_mutual_information_bell(self):
        bell = pure_state(['R', 'S'], [1, 0, 0, 1])
        assert mutual_information(bell, (['R'], ['S'])) == pytest.approx(
            2 * math.log(2))

    def test_mutual_information_cnot_output(self):
        rho_r = diag_state(0.9)
        joint = evolve(tensor_compose(rho_r, maximally_mixed(['S'])),
                       cnot('S', 'R'))
        assert mutual_information(joint, (['S'], ['R'])) == pytest.approx(
            math.log(2) - von_neumann_entropy(rho_r), abs=1e-12)

    def test_bad_partition(self):
        bell = pure_state(['R', 'S'], [1, 0, 0, 1])
        with pytest.raises(LabelError):
            mutual_information(bell, (['R'], ['R']))
        with pytest.raises(LabelError):
            mutual_information(bell, (['R'], []))


class TestAverageHeat:
    """Heat from the reservoir states before and after."""

    def test_unchanged_reservoir(self, reservoir_123):
        rho = reservoir_123.state()
        assert average_heat(reservoir_123.hamiltonian(), rho, rho) == 0

    def test_thermal_to_mixed(self, reservoir_123):
        p0 = reservoir_123.populations[0]
        heat = average_heat(reservoir_123.hamiltonian(),
                            reservoir_123.state(), maximally_mixed(['R']))
        assert heat == pytest.approx(reservoir_123.gap * (p0 - 0.5))

    def test_register_mismatch(self, reservoir_123):
        with pytest.raises(ShapeError):
            average_heat(reservoir_123.hamiltonian(), maximally_mixed(['S']),
                         maximally_mixed(['S']))


class TestLandauerReport:
    """Identity checks of the entropy balance."""

    def test_consistent_report(self):
        LandauerReport(0.1, 0.5, 0.4, 0.3, 0.1)

    def test_inconsistent_sigma(self):
        with pytest.raises(ValidationError):
            LandauerReport(0.1, 0.5, 0.3, 0.2, 0.1)

    def test_inconsistent_decomposition(self):
        with pytest.raises(ValidationError):
            LandauerReport(0.1, 0.5, 0.4, 0.2, 0.1)

    def test_bound_violation(self):
        with pytest.raises(ValidationError):
            LandauerReport(0.5, 0.1, -0.4, -0.2, -0.2)

    def test_tolerance_grows_with_heat(self):
        # 1e-10 absolute below beta Q = 1, relative to beta Q above
        LandauerReport(0.0, 100.0, 100.0, 100.0 - 5e-9, 0.0)
        with pytest.raises(ValidationError):
            LandauerReport(0.0, 100.0, 100.0, 100.0 - 5e-8, 0.0)
        with pytest.raises(ValidationError):
            LandauerReport(0.0, 0.5, 0.5, 0.5 - 5e-10, 0.0)


class TestLandauerAnalyze:
    """Full Landauer processes."""

    def test_identity_process(self, reservoir_123, mixed_system):
        identity = UnitaryOperator.on(['R', 'S'], np.eye(4))
        report = landauer_analyze(reservoir_123.hamiltonian(), mixed_system,
                                  reservoir_123.state(), identity,
                                  reservoir_123.beta)
        assert report.delta_S == pytest.approx(0, abs=1e-12)
        assert report.beta_Q == pytest.approx(0, abs=1e-12)
        assert report.sigma == pytest.approx(0, abs=1e-12)

    def test_cnot_closed_form(self, mixed_system):
        reservoir = ThermalReservoirSpec(6.577, 1.0)
        report = landauer_analyze(reservoir.hamiltonian(), mixed_system,
                                  reservoir.state(), cnot('S', 'R'),
                                  reservoir.beta)
        assert report.delta_S == pytest.approx(0, abs=1e-12)
        assert report.beta_Q == pytest.approx(cnot_heat_theory(6.577),
                                              abs=1e-10)
        assert report.beta_Q == pytest.approx(3.28, abs=0.005)

    def test_full_swap_closed_form(self, reservoir_123, mixed_system):
        rho_r = reservoir_123.state()
        report = landauer_analyze(reservoir_123.hamiltonian(), mixed_system,
                                  rho_r, partial_swap(math.pi),
                                  reservoir_123.beta)
        assert report.delta_S == pytest.approx(
            math.log(2) - von_neumann_entropy(rho_r), abs=1e-12)
        assert report.beta_Q == pytest.approx(
            cnot_heat_theory(reservoir_123.x), abs=1e-10)
        assert report.sigma >= 0

    def test_partial_swap_closed_form(self, reservoir_123, mixed_system):
        for phi in (math.pi / 6, math.pi / 2, 5 * math.pi / 6):
            report = landauer_analyze(reservoir_123.hamiltonian(),
                                      mixed_system, reservoir_123.state(),
                                      partial_swap(phi), reservoir_123.beta)
            assert report.beta_Q == pytest.approx(
                partial_swap_heat_theory(reservoir_123.x, phi), abs=1e-10)

    def test_infinite_temperature_no_heat(self, reservoir_hot, mixed_system):
        for unitary in (cnot('S', 'R'), partial_swap(math.pi)):
            report = landauer_analyze(reservoir_hot.hamiltonian(),
                                      mixed_system, reservoir_hot.state(),
                                      unitary, 0.0)
            assert report.beta_Q == 0
            process = LandauerProcess(reservoir_hot.hamiltonian(),
                                      mixed_system, reservoir_hot.state(),
                                      unitary, 0.0)
            assert process.average_heat() == pytest.approx(0, abs=1e-12)

    def test_random_instances_obey_bound(self, rng, gap):
        h = Observable.on(['R'], np.diag([0.0, gap]))
        for _ in range(200):
            beta = rng.uniform(0, 10 / gap)
            rho_s = random_density_operator(['S'], rng)
            unitary = random_unitary(['R', 'S'], rng)
            report = landauer_analyze(h, rho_s, gibbs_state(h, beta),
                                      unitary, beta)
            assert report.sigma >= -1e-10
            assert report.sigma == pytest.approx(
                report.mutual_info + report.rel_entropy, abs=1e-9)
            assert report.sigma == pytest.approx(
                report.beta_Q - report.delta_S, abs=1e-9)

    def test_local_basis_change_keeps_delta_s(self, rng, reservoir_123):
        rho_s = random_density_operator(['S'], rng)
        unitary = random_unitary(['R', 'S'], rng)
        local = random_unitary(['S'], rng)
        rotated = evolve(rho_s, local)
        before = landauer_analyze(reservoir_123.hamiltonian(), rho_s,
                                  reservoir_123.state(), unitary,
                                  reservoir_123.beta)
        local_full = np.kron(np.eye(2), local.matrix)
        conjugated = UnitaryOperator.on(
            ['R', 'S'], local_full @ unitary.matrix @ local_full.conj().T)
        after = landauer_analyze(reservoir_123.hamiltonian(), rotated,
                                 reservoir_123.state(), conjugated,
                                 reservoir_123.beta)
        assert after.delta_S == pytest.approx(before.delta_S, abs=1e-10)


class TestLandauerCriteria:
    """Protocol violations name their criterion."""

    def test_shared_labels(self, reservoir_123):
        with pytest.raises(ProtocolError) as info:
            LandauerProcess(reservoir_123.hamiltonian(),
                            maximally_mixed(['R']), reservoir_123.state(),
                            UnitaryOperator.on(['R'], np.eye(2)),
                            reservoir_123.beta)
        assert info.value.criterion == 'i'

    def test_correlated_initial_state(self, reservoir_hot):
        bell = pure_state(['R', 'S'], [1, 0, 0, 1])
        with pytest.raises(ProtocolError) as info:
            LandauerProcess.from_joint(reservoir_hot.hamiltonian(), bell,
                                       cnot('S', 'R'), 0.0)
        assert info.value.criterion == 'ii'

    def test_product_joint_state_accepted(self, reservoir_123, mixed_system):
        joint = tensor_compose(reservoir_123.state(), mixed_system)
        process = LandauerProcess.from_joint(reservoir_123.hamiltonian(),
                                             joint, cnot('S', 'R'),
                                             reservoir_123.beta)
        assert process.system_labels == ('S',)

    def test_non_gibbs_reservoir(self, reservoir_123, mixed_system):
        with pytest.raises(ProtocolError) as info:
            LandauerProcess(reservoir_123.hamiltonian(), mixed_system,
                            maximally_mixed(['R']), cnot('S', 'R'),
                            reservoir_123.beta)
        assert info.value.criterion == 'iii'

    def test_interaction_on_wrong_labels(self, reservoir_123, mixed_system):
        with pytest.raises(ProtocolError) as info:
            LandauerProcess(reservoir_123.hamiltonian(), mixed_system,
                            reservoir_123.state(), cnot('A', 'R'),
                            reservoir_123.beta)
        assert info.value.criterion == 'iv'

    def test_zero_temperature_has_no_balance(self, gap, mixed_system):
        reservoir = ThermalReservoirSpec(gap, ZERO_TEMPERATURE)
        process = LandauerProcess(reservoir.hamiltonian(), mixed_system,
                                  reservoir.state(), cnot('S', 'R'),
                                  ZERO_TEMPERATURE)
        with pytest.raises(DomainError):
            process.report()
