"""
Tests for heat distributions, characteristic functions and their inversion.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from pylandauer.gates import (SWEEP_PHI_SET, cnot, elementary_gate,
                              partial_swap)
from pylandauer.heatstats import (CharFnTrace, HeatDistribution,
                                  InterferometerMode, Provenance, TimeGrid,
                                  char_fn_direct, char_fn_interferometric,
                                  char_fn_values, heat_moments,
                                  invert_to_distribution, total_variation,
                                  tpm_distribution)
from pylandauer.io import ReportFile
from pylandauer.msc.Errors import (ConfigError, DomainError, ProtocolError,
                                   ReconstructionError, SpectralLeakageWarning,
                                   ValidationError)
from pylandauer.nmrsim import CompileRequest, NoiseSpec, decay_correction
from pylandauer.qstate import (UnitaryOperator, embed, maximally_mixed,
                               pure_state, random_density_operator)
from pylandauer.thermo import (ThermalReservoirSpec, cnot_heat_theory,
                               partial_swap_heat_theory)


class TestHeatDistribution:
    """Validation and statistics of finite distributions."""

    def test_sorted_on_construction(self):
        dist = HeatDistribution([1.0, -1.0, 0.0], [0.25, 0.25, 0.5])
        np.testing.assert_array_equal(dist.q, [-1, 0, 1])
        np.testing.assert_array_equal(dist.p, [0.25, 0.5, 0.25])

    def test_read_only(self):
        dist = HeatDistribution([0.0], [1.0])
        with pytest.raises(ValueError):
            dist.p[0] = 0.5

    @pytest.mark.parametrize('q, p', [([0.0, 0.0], [0.5, 0.5]),
                                      ([0.0, 1.0], [1.1, -0.1]),
                                      ([0.0, 1.0], [0.5, 0.4]),
                                      ([], [])])
    def test_invalid(self, q, p):
        with pytest.raises(ValidationError):
            HeatDistribution(q, p)

    def test_from_atoms_merges_and_drops(self):
        dist = HeatDistribution.from_atoms(
            np.array([5.0, 5.0 + 1e-12, -5.0, 2.0]),
            np.array([0.3, 0.2, 0.5, 0.0]))
        assert dist.atoms == [(-5.0, 0.5), (5.0, pytest.approx(0.5))]

    def test_moments(self):
        dist = HeatDistribution([-2.0, 0.0, 2.0], [0.25, 0.5, 0.25])
        moments = heat_moments(dist)
        assert moments.mean == 0
        assert moments.variance == pytest.approx(2.0)
        assert moments.p_negative == 0.25
        assert dist.probability(2.0) == 0.25
        assert dist.probability(1.0) == 0

    def test_total_variation(self):
        first = HeatDistribution([0.0, 1.0], [0.5, 0.5])
        second = HeatDistribution([1.0, 2.0], [0.5, 0.5])
        assert total_variation(first, first) == 0
        assert total_variation(first, second) == pytest.approx(0.5)

    def test_write(self, tmp_path):
        dist = HeatDistribution([-1.0, 1.0], [0.25, 0.75])
        path = dist.write(tmp_path / 'heat.json')
        columns, records = ReportFile.read(path)
        assert columns == ['q', 'p']
        assert records == [{'q': -1.0, 'p': 0.25}, {'q': 1.0, 'p': 0.75}]


class TestTwoPointMeasurement:
    """Exact heat distributions by energy measurements."""

    def test_cnot_infinite_temperature(self, reservoir_hot, mixed_system):
        dist = tpm_distribution(mixed_system, reservoir_hot, cnot('S', 'R'))
        gap = reservoir_hot.gap
        assert dist.atoms == [(-gap, pytest.approx(0.25)),
                              (0.0, pytest.approx(0.5)),
                              (gap, pytest.approx(0.25))]
        assert dist.provenance is Provenance.EXACT_TPM
        moments = heat_moments(dist)
        assert moments.mean == pytest.approx(0, abs=1e-12)
        assert moments.p_negative == pytest.approx(0.25)

    def test_cnot_mean_heat(self, reservoir_123, mixed_system):
        dist = tpm_distribution(mixed_system, reservoir_123, cnot('S', 'R'))
        p0, p1 = reservoir_123.populations
        assert dist.probability(reservoir_123.gap) == pytest.approx(p0 / 2)
        assert dist.probability(-reservoir_123.gap) == pytest.approx(p1 / 2)
        assert reservoir_123.beta * dist.mean() == pytest.approx(
            cnot_heat_theory(reservoir_123.x), abs=1e-10)
        assert dist.probability_negative() > 0

    def test_partial_swap_mean_heat(self, reservoir_123, mixed_system):
        for phi in SWEEP_PHI_SET:
            dist = tpm_distribution(mixed_system, reservoir_123,
                                    partial_swap(phi))
            assert reservoir_123.beta * dist.mean() == pytest.approx(
                partial_swap_heat_theory(reservoir_123.x, phi), abs=1e-10)

    def test_identity_has_no_heat(self, reservoir_123, mixed_system):
        identity = UnitaryOperator.on(['R', 'S'], np.eye(4))
        dist = tpm_distribution(mixed_system, reservoir_123, identity)
        assert dist.atoms == [(0.0, pytest.approx(1.0))]

    def test_protocol_violation(self, reservoir_123):
        with pytest.raises(ProtocolError):
            tpm_distribution(maximally_mixed(['R']), reservoir_123,
                             UnitaryOperator.on(['R'], np.eye(2)))


class TestTimeGrid:
    """Uniform sampling grids."""

    def test_for_gap(self, gap):
        grid = TimeGrid.for_gap(gap)
        assert grid.n == 8
        assert grid.dt == pytest.approx(2 * math.pi / (8 * gap))
        assert grid.times[0] == 0
        assert grid.is_leakage_free(gap)
        assert grid.bins_per_gap(gap) == pytest.approx(1)

    def test_heat_bins(self, gap):
        bins = TimeGrid.for_gap(gap).heat_bins()
        assert bins[1] == pytest.approx(gap)
        assert bins[-1] == pytest.approx(-gap)

    def test_half_bin_detuning(self, gap):
        grid = TimeGrid(2 * math.pi * 1.5 / (8 * gap), 8)
        assert grid.leakage_estimate(gap) == pytest.approx(0.5)
        assert not grid.is_leakage_free(gap)

    def test_too_few_samples(self):
        with pytest.raises(ValidationError):
            TimeGrid(1e-3, 2)

    def test_bad_step(self):
        with pytest.raises(DomainError):
            TimeGrid(0.0, 8)


class TestCharFnTrace:
    """Sampled characteristic functions."""

    def test_value_at_zero(self):
        with pytest.raises(ValidationError):
            CharFnTrace([0.0, 1.0], [0.9, 0.5])

    def test_bounded(self):
        with pytest.raises(ValidationError):
            CharFnTrace([0.0, 1.0], [1.0, 1.5])

    def test_lengths(self):
        with pytest.raises(ValidationError):
            CharFnTrace([0.0, 1.0], [1.0])

    def test_grid_mismatch(self, gap):
        grid = TimeGrid.for_gap(gap)
        with pytest.raises(ValidationError):
            CharFnTrace(grid.times * 2, np.ones(8), grid=grid)

    def test_write_csv(self, tmp_path, reservoir_123, mixed_system):
        trace = char_fn_direct(mixed_system, reservoir_123, cnot('S', 'R'),
                               TimeGrid.for_gap(reservoir_123.gap))
        columns, records = ReportFile.read(trace.write(tmp_path / 'trace.csv'))
        assert columns == ['t', 're', 'im']
        assert len(records) == len(trace) == 8
        assert records[0]['t'] == 0
        assert records[0]['re'] == pytest.approx(1.0)
        assert records[0]['im'] == pytest.approx(0.0, abs=1e-12)


class TestCharacteristicFunction:
    """Trace formula and interferometric sampling."""

    def test_cnot_closed_form(self, reservoir_123, mixed_system):
        p0, p1 = reservoir_123.populations
        w = reservoir_123.gap
        times = np.linspace(0, 0.02, 11)
        values = char_fn_values(mixed_system, reservoir_123, cnot('S', 'R'),
                                times)
        expected = 0.5 + 0.5 * (p0 * np.exp(-1j * w * times)
                                + p1 * np.exp(1j * w * times))
        np.testing.assert_allclose(values, expected, atol=1e-12)

    def test_conjugate_symmetry(self, rng, reservoir_123):
        rho_s = random_density_operator(['S'], rng)
        unitary = partial_swap(math.pi / 3)
        times = np.linspace(0.001, 0.01, 6)
        forward = char_fn_values(rho_s, reservoir_123, unitary, times)
        backward = char_fn_values(rho_s, reservoir_123, unitary, -times)
        np.testing.assert_allclose(backward, forward.conj(), atol=1e-12)

    def test_interferometer_matches_direct(self, rng, reservoir_123):
        rho_s = random_density_operator(['S'], rng)
        grid = TimeGrid.for_gap(reservoir_123.gap, n=16, periods=2)
        for unitary in (cnot('S', 'R'), partial_swap(math.pi / 2)):
            direct = char_fn_direct(rho_s, reservoir_123, unitary, grid)
            measured = char_fn_interferometric(rho_s, reservoir_123, unitary,
                                               grid)
            np.testing.assert_allclose(measured.values, direct.values,
                                       atol=1e-10)
            np.testing.assert_allclose(measured.acquisition, 2 * grid.times)

    def test_pseudopure_input(self, reservoir_123, mixed_system):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        plain = char_fn_interferometric(mixed_system, reservoir_123,
                                        cnot('S', 'R'), grid)
        scaled = char_fn_interferometric(mixed_system, reservoir_123,
                                         cnot('S', 'R'), grid,
                                         pseudopure_epsilon=1e-3)
        np.testing.assert_allclose(scaled.values, plain.values, atol=1e-10)

    def test_noise_is_the_ancilla_envelope(self, reservoir_123, mixed_system,
                                           molecule):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        noise = NoiseSpec.from_molecule(molecule)
        clean = char_fn_interferometric(mixed_system, reservoir_123,
                                        partial_swap(math.pi / 2), grid)
        noisy = char_fn_interferometric(mixed_system, reservoir_123,
                                        partial_swap(math.pi / 2), grid,
                                        noise=noise)
        envelope = np.exp(-2 * grid.times / molecule.t2star('A'))
        np.testing.assert_allclose(noisy.values, clean.values * envelope,
                                   atol=1e-6)
        corrected = decay_correction(noisy, noise)
        np.testing.assert_allclose(corrected.values, clean.values, atol=1e-6)

    @staticmethod
    def corrected_and_clean(rho_s, reservoir, unitary):
        # T2* of S is far below one sample step; A decays slowly
        noise = NoiseSpec({'A': 0.15, 'S': 1e-4})
        grid = TimeGrid.for_gap(reservoir.gap)
        clean = char_fn_interferometric(rho_s, reservoir, unitary, grid)
        noisy = char_fn_interferometric(rho_s, reservoir, unitary, grid,
                                        noise=noise)
        return decay_correction(noisy, noise).values, clean.values

    @pytest.mark.parametrize('unitary', [cnot('S', 'R'),
                                         partial_swap(math.pi / 2)])
    def test_system_coherences_do_not_reach_readout(self, reservoir_123,
                                                    unitary):
        plus = pure_state(['S'], [1, 1j])
        corrected, clean = self.corrected_and_clean(plus, reservoir_123,
                                                    unitary)
        np.testing.assert_allclose(corrected, clean, atol=1e-6)

    def test_system_coherences_reach_readout(self, reservoir_123):
        # H on S turns |+> into |0>, so the clean process moves no heat
        cnot_after_h = cnot('S', 'R')
        h = embed(elementary_gate('H', 'S'), cnot_after_h.register)
        unitary = UnitaryOperator(cnot_after_h.register,
                                  cnot_after_h.matrix @ h)
        plus = pure_state(['S'], [1, 1])
        corrected, clean = self.corrected_and_clean(plus, reservoir_123,
                                                    unitary)
        np.testing.assert_allclose(clean, np.ones(8), atol=1e-10)
        assert np.max(np.abs(corrected - clean)) > 0.1

    def test_pulse_mode_matches_ideal(self, reservoir_123, mixed_system,
                                      molecule):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        ideal = char_fn_direct(mixed_system, reservoir_123, cnot('S', 'R'),
                               grid)
        pulsed = char_fn_interferometric(mixed_system, reservoir_123,
                                         cnot('S', 'R'), grid, mode='pulse',
                                         molecule=molecule,
                                         process=CompileRequest.cnot())
        np.testing.assert_allclose(pulsed.values, ideal.values, atol=1e-6)
        assert pulsed.acquisition[0] == 0
        assert np.all(np.diff(pulsed.acquisition) > 0)

    def test_pulse_mode_partial_swap(self, reservoir_123, mixed_system,
                                     molecule):
        phi = 2 * math.pi / 3
        grid = TimeGrid.for_gap(reservoir_123.gap)
        request = CompileRequest.partial_swap(phi, molecule.coupling('R', 'S'))
        ideal = char_fn_direct(mixed_system, reservoir_123, partial_swap(phi),
                               grid)
        pulsed = char_fn_interferometric(mixed_system, reservoir_123,
                                         partial_swap(phi), grid,
                                         mode=InterferometerMode.PULSE,
                                         molecule=molecule, process=request)
        np.testing.assert_allclose(pulsed.values, ideal.values, atol=1e-6)

    def test_pulse_mode_needs_molecule(self, reservoir_123, mixed_system):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        with pytest.raises(ConfigError):
            char_fn_interferometric(mixed_system, reservoir_123,
                                    cnot('S', 'R'), grid, mode='pulse',
                                    process=CompileRequest.cnot())

    def test_pulse_mode_needs_request(self, reservoir_123, mixed_system,
                                      molecule):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        with pytest.raises(ConfigError):
            char_fn_interferometric(mixed_system, reservoir_123,
                                    cnot('S', 'R'), grid, mode='pulse',
                                    molecule=molecule)

    def test_pulse_mode_ancilla_not_on_molecule(self, reservoir_123,
                                                mixed_system, molecule):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        request = replace(CompileRequest.cnot(), ancilla='B')
        with pytest.raises(ConfigError, match="'R', 'S'"):
            char_fn_interferometric(mixed_system, reservoir_123,
                                    cnot('S', 'R'), grid, mode='pulse',
                                    molecule=molecule, process=request)

    def test_pulse_mode_with_noise(self, reservoir_123, mixed_system,
                                   molecule):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        noise = NoiseSpec.from_molecule(molecule)
        clean = char_fn_direct(mixed_system, reservoir_123, cnot('S', 'R'),
                               grid)
        noisy = char_fn_interferometric(mixed_system, reservoir_123,
                                        cnot('S', 'R'), grid, mode='pulse',
                                        noise=noise, molecule=molecule,
                                        process=CompileRequest.cnot())
        j_ar = molecule.coupling('A', 'R')
        np.testing.assert_allclose(
            noisy.acquisition,
            2 * reservoir_123.gap * grid.times / (2 * math.pi * j_ar))
        np.testing.assert_allclose(
            noisy.values, clean.values * noise.envelope(noisy.acquisition),
            atol=1e-6)
        corrected = decay_correction(noisy, noise)
        assert np.all(corrected.reliable)
        np.testing.assert_allclose(corrected.values, clean.values, atol=1e-6)

    def test_unknown_mode(self, reservoir_123, mixed_system):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        with pytest.raises(ConfigError):
            char_fn_interferometric(mixed_system, reservoir_123,
                                    cnot('S', 'R'), grid, mode='optical')


class TestInversion:
    """Fourier reconstruction of heat distributions."""

    def test_constant_trace(self, gap):
        grid = TimeGrid.for_gap(gap)
        trace = CharFnTrace(grid.times, np.ones(8), grid=grid)
        dist = invert_to_distribution(trace, ThermalReservoirSpec(gap, 0.0))
        assert dist.atoms == [(0.0, pytest.approx(1.0))]
        assert dist.provenance is Provenance.FOURIER
        assert dist.leakage is None

    def test_cnot_three_atoms(self, reservoir_hot, mixed_system):
        grid = TimeGrid.for_gap(reservoir_hot.gap)
        trace = char_fn_direct(mixed_system, reservoir_hot, cnot('S', 'R'),
                               grid)
        dist = invert_to_distribution(trace, reservoir_hot)
        gap = reservoir_hot.gap
        np.testing.assert_allclose(dist.q, [-gap, 0, gap])
        np.testing.assert_allclose(dist.p, [0.25, 0.5, 0.25], atol=1e-12)

    def test_agrees_with_two_point_measurement(self, rng, reservoir_123):
        grid = TimeGrid.for_gap(reservoir_123.gap)
        rho_s = random_density_operator(['S'], rng)
        for unitary in (cnot('S', 'R'),) + tuple(partial_swap(phi)
                                                 for phi in SWEEP_PHI_SET):
            exact = tpm_distribution(rho_s, reservoir_123, unitary)
            direct = invert_to_distribution(
                char_fn_direct(rho_s, reservoir_123, unitary, grid),
                reservoir_123)
            measured = invert_to_distribution(
                char_fn_interferometric(rho_s, reservoir_123, unitary, grid),
                reservoir_123)
            assert total_variation(exact, direct) < 1e-8
            assert total_variation(exact, measured) < 1e-8

    def test_half_bin_leakage_warns(self, reservoir_hot, mixed_system):
        grid = TimeGrid(2 * math.pi * 1.5 / (8 * reservoir_hot.gap), 8)
        trace = char_fn_direct(mixed_system, reservoir_hot, cnot('S', 'R'),
                               grid)
        with pytest.warns(SpectralLeakageWarning):
            dist = invert_to_distribution(trace, reservoir_hot)
        assert dist.leakage == pytest.approx(0.5)
        assert dist.p.sum() == pytest.approx(1)

    def test_aliasing(self, reservoir_hot, mixed_system):
        grid = TimeGrid.for_gap(reservoir_hot.gap, n=8, periods=4)
        trace = char_fn_direct(mixed_system, reservoir_hot, cnot('S', 'R'),
                               grid)
        with pytest.raises(ReconstructionError) as info:
            invert_to_distribution(trace, reservoir_hot)
        assert info.value.diagnostics['n'] == 8

    def test_trace_without_grid(self, reservoir_hot):
        trace = CharFnTrace([0.0, 1e-3, 2e-3], [1.0, 0.5, 0.5])
        with pytest.raises(ReconstructionError):
            invert_to_distribution(trace, reservoir_hot)
