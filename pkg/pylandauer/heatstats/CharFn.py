"""
pylandauer.heatstats.CharFn
===========================

Characteristic function of the heat distribution and its inversion.

Theta(t) = sum_Q P(Q) e^{-iQt} = tr[U (rho_R v_t^dagger (x) rho_S) U^dagger v_t]
with v_t = exp(-i H_R t).

Features:
- `TimeGrid`: uniform sampling grid with leakage checks for a reservoir gap.
- `CharFnTrace`: sampled values with acquisition durations and reliability
  flags.
- `char_fn_direct`: evaluates the trace formula.
- `char_fn_interferometric`: simulates the ancilla interferometer, either
  with ideal gates or with compiled pulse programs on a molecule.
- `invert_to_distribution`: discrete inverse Fourier transform of a trace
  onto the heat bins of the grid.
"""

# Libs
import logging
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
import scipy.fft

# pylandauer
from pylandauer.gates import build_interferometer, interferometer_input
from pylandauer.io import ReportFile
from pylandauer.msc import Debug, Tolerance
from pylandauer.msc.Errors import (CompilationError, ConfigError, DomainError,
                                   ReconstructionError,
                                   SpectralLeakageWarning, ValidationError)
from pylandauer.nmrsim import (CompileRequest, MoleculeSpec, NoiseSpec,
                               compile_compensated, phase_damping_evolution,
                               pseudopure, pulse_interferometer)
from pylandauer.qstate import (DensityOperator, Operator, embed, eigh,
                               expectation, pauli, process_distance)
from pylandauer.thermo import LandauerProcess, ThermalReservoirSpec
from pylandauer.heatstats.HeatDistribution import (HeatDistribution,
                                                   Provenance)


__all__ = ['InterferometerMode', 'TimeGrid', 'CharFnTrace', 'char_fn_values',
           'char_fn_direct', 'char_fn_interferometric',
           'invert_to_distribution']


class InterferometerMode(Enum):
    IDEAL = 'ideal'
    PULSE = 'pulse'

    @classmethod
    def parse(cls, mode: 'InterferometerMode | str') -> 'InterferometerMode':
        if isinstance(mode, cls):
            return mode
        try:
            return cls(str(mode).lower())
        except ValueError:
            raise ConfigError(f'Unknown interferometer mode "{mode}", '
                              f'expected one of '
                              f'{[m.value for m in cls]}') from None


@dataclass(frozen=True, slots=True)
class TimeGrid:
    """
    Uniform time grid t_k = k dt, k = 0 ... n - 1.

    The grid resolves heat in bins of 2 pi / (n dt). It is leakage-free for
    a gap w if w dt n / (2 pi) is an integer, so that +-w fall on bins.

    Attributes
    ----------
    dt : float
        Sample spacing in s.
    n : int
        Number of samples, at least 3.
    """
    dt: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f'Time step must be positive, got {self.dt}')
        if int(self.n) != self.n or self.n < 3:
            raise ValidationError(f'A time grid needs at least 3 samples, '
                                  f'got {self.n}')

    @classmethod
    def for_gap(cls, gap: float, n: int = 8, periods: int = 1) -> 'TimeGrid':
        """
        Returns the grid of `n` samples spanning `periods` periods of the gap.

        Examples
        --------
        >>> TimeGrid.for_gap(2 * math.pi, n=8).dt
        0.125
        """
        if not gap > 0:
            raise DomainError(f'Gap must be positive, got {gap}')
        return cls(2 * math.pi * periods / (n * gap), n)

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.n)

    @property
    def duration(self) -> float:
        return self.dt * self.n

    def heat_bins(self) -> np.ndarray:
        """
        Heat values of the inverse transform's output bins, in FFT order.
        """
        return 2 * math.pi * scipy.fft.fftfreq(self.n, self.dt)

    def bins_per_gap(self, gap: float) -> float:
        return gap * self.duration / (2 * math.pi)

    def leakage_estimate(self, gap: float) -> float:
        """
        Distance of the gap from the nearest bin, in units of the bin width.
        """
        bins = self.bins_per_gap(gap)
        return abs(bins - round(bins))

    def is_leakage_free(self, gap: float) -> bool:
        return self.leakage_estimate(gap) <= 1e-9


@dataclass(frozen=True, eq=False)
class CharFnTrace:
    """
    Sampled characteristic function.

    Attributes
    ----------
    times : np.ndarray
        Sample times t_k in s.
    values : np.ndarray
        Complex values Theta(t_k).
    acquisition : np.ndarray or None
        Time each sample spent in acquisition segments, in s; zeros if None.
    reliable : np.ndarray or None
        False for samples whose decay correction was not applied; all True
        if None.
    grid : TimeGrid or None
        The uniform grid the times were taken from.
    """
    times: np.ndarray
    values: np.ndarray
    acquisition: np.ndarray | None = None
    reliable: np.ndarray | None = None
    grid: TimeGrid | None = field(default=None)

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=complex).reshape(-1)
        acquisition = np.zeros_like(times) if self.acquisition is None \
            else np.asarray(self.acquisition, dtype=float).reshape(-1)
        reliable = np.ones(times.shape, dtype=bool) if self.reliable is None \
            else np.asarray(self.reliable, dtype=bool).reshape(-1)

        if not times.shape == values.shape == acquisition.shape \
                == reliable.shape:
            raise ValidationError('Trace arrays must have equal lengths.')
        if self.grid is not None and not np.allclose(
                times, self.grid.times, rtol=1e-12, atol=0):
            raise ValidationError('Trace times do not match the grid.')

        at_zero = values[times == 0]
        if np.any(np.abs(at_zero - 1) > Tolerance.POSITIVITY):
            raise ValidationError(f'Theta(0) must be 1, got {at_zero[0]}')
        largest = float(np.max(np.abs(values))) if values.size else 0.0
        if largest > 1 + Tolerance.POSITIVITY:
            raise ValidationError(f'|Theta(t)| must not exceed 1, got '
                                  f'{largest:.12g}')

        for name, array in (('times', times), ('values', values),
                            ('acquisition', acquisition),
                            ('reliable', reliable)):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def __len__(self) -> int:
        return len(self.times)

    def records(self) -> list[dict[str, float]]:
        return [{'t': float(t), 're': float(v.real), 'im': float(v.imag)}
                for t, v in zip(self.times, self.values)]

    def write(self, path: Path | str, fmt: str | None = None) -> Path:
        """
        Writes the samples as a table with columns t, re, im.
        """
        return ReportFile.write(path, ['t', 're', 'im'], self.records(), fmt)


def _process(rho_S: DensityOperator, reservoir: ThermalReservoirSpec,
             unitary: Operator) -> LandauerProcess:
    return LandauerProcess(reservoir.hamiltonian(), rho_S, reservoir.state(),
                           unitary, reservoir.beta)


def char_fn_values(rho_S: DensityOperator, reservoir: ThermalReservoirSpec,
                   unitary: Operator, times: np.ndarray) -> np.ndarray:
    """
    Evaluates tr[U (rho_R v_t^dagger (x) rho_S) U^dagger v_t] at arbitrary times.

    Times may be negative, in which case the values are the complex
    conjugates of those at -t.

    Raises
    ------
    ProtocolError
        If the process violates one of the Landauer criteria.
    """
    process = _process(rho_S, reservoir, unitary)
    register = process.register
    energies, vectors = eigh(process.hamiltonian)
    rho = process.initial_state.matrix
    u = embed(process.unitary, register)

    values = []
    for t in np.asarray(times, dtype=float).reshape(-1):
        v_r = (vectors * np.exp(-1j * energies * t)) @ vectors.conj().T
        v = embed(Operator(process.hamiltonian.register, v_r), register)
        values.append(np.trace(u @ rho @ v.conj().T @ u.conj().T @ v))
    return np.array(values, dtype=complex)


def char_fn_direct(rho_S: DensityOperator, reservoir: ThermalReservoirSpec,
                   unitary: Operator, grid: TimeGrid) -> CharFnTrace:
    """
    Samples the characteristic function from its trace formula.

    Parameters
    ----------
    rho_S : DensityOperator
        Initial system state.
    reservoir : ThermalReservoirSpec
        Reservoir gap, temperature and label.
    unitary : Operator
        System-reservoir interaction.
    grid : TimeGrid
        Sample times.

    Returns
    -------
    CharFnTrace
        Theta(t_k) for every grid point.

    Examples
    --------
    >>> reservoir = ThermalReservoirSpec(805.56, 0.0)
    >>> grid = TimeGrid.for_gap(805.56)
    >>> trace = char_fn_direct(maximally_mixed(['S']), reservoir,
    ...                        cnot('S', 'R'), grid)
    >>> complex(trace.values[0])
    (1+0j)
    """
    values = char_fn_values(rho_S, reservoir, unitary, grid.times)
    return CharFnTrace(grid.times, values, grid=grid)


def _ideal_trace(process: LandauerProcess, grid: TimeGrid,
                 noise: NoiseSpec | None, ancilla: str,
                 epsilon: float | None) -> tuple[list[complex], list[float]]:
    def dephase(state: DensityOperator, step) -> DensityOperator:
        if noise is None or step.duration <= 0:
            return state
        return phase_damping_evolution(state, step.duration, noise)

    start = interferometer_input(process.reservoir_state,
                                 process.system_state, ancilla)
    if epsilon is not None:
        start = pseudopure(start, epsilon)

    values, acquisition = [], []
    for t in grid.times:
        circuit = build_interferometer(process.unitary, process.hamiltonian,
                                       float(t), ancilla)
        final = circuit.run(start, dephase)
        values.append(circuit.characteristic_value(final) / (epsilon or 1.0))
        acquisition.append(float(sum(step.duration
                                     for step in circuit.steps)))
    return values, acquisition


def _pulse_trace(process: LandauerProcess, grid: TimeGrid,
                 noise: NoiseSpec | None, molecule: MoleculeSpec,
                 request: CompileRequest, epsilon: float | None) \
        -> tuple[list[complex], list[float]]:
    labels = process.register.labels
    if set(molecule.qubits) != set(labels) | {request.ancilla}:
        raise ConfigError(f'Molecule qubits {molecule.qubits} do not match '
                          f'the process on {labels} plus ancilla '
                          f'"{request.ancilla}"')

    compiled = compile_compensated(request, molecule).rs_unitary(molecule)
    distance = process_distance(compiled, process.unitary)
    if distance > Tolerance.PROCESS_DISTANCE:
        raise CompilationError(f'Compiled {request.gate.value} differs from '
                               f'the analysed process (distance '
                               f'{distance:.3g})')

    start = interferometer_input(process.reservoir_state,
                                 process.system_state, request.ancilla)
    if epsilon is not None:
        start = pseudopure(start, epsilon)
    sigma_x = pauli('x', request.ancilla)
    sigma_y = pauli('y', request.ancilla)
    gap = float(process.hamiltonian.matrix[1, 1].real
                - process.hamiltonian.matrix[0, 0].real)

    values, acquisition = [], []
    for t in grid.times:
        program = pulse_interferometer(request, float(t), gap, molecule)
        final = program.apply(start, molecule, noise)
        value = complex(expectation(final, sigma_x),
                        -expectation(final, sigma_y))
        values.append(value / (epsilon or 1.0))
        acquisition.append(program.acquisition_duration)
    return values, acquisition


@Debug.timing()
def char_fn_interferometric(rho_S: DensityOperator,
                            reservoir: ThermalReservoirSpec,
                            unitary: Operator, grid: TimeGrid,
                            mode: InterferometerMode | str = 'ideal',
                            noise: NoiseSpec | None = None,
                            molecule: MoleculeSpec | None = None,
                            process: CompileRequest | None = None,
                            pseudopure_epsilon: float | None = None,
                            ancilla: str = 'A') -> CharFnTrace:
    """
    Samples the characteristic function by simulating the ancilla interferometer.

    The ancilla starts in |0>, the interferometer maps Theta(t) onto
    <sigma_x> - i <sigma_y> of the ancilla.

    Parameters
    ----------
    rho_S : DensityOperator
        Initial system state.
    reservoir : ThermalReservoirSpec
        Reservoir gap, temperature and label.
    unitary : Operator
        System-reservoir interaction, used by the ideal circuit and as the
        reference for the compiled process.
    grid : TimeGrid
        Sample times.
    mode : InterferometerMode or str, optional
        'ideal' runs exact gates, 'pulse' runs compiled pulse programs.
    noise : NoiseSpec or None, optional
        Phase damping during the controlled evolutions.
    molecule : MoleculeSpec or None, optional
        Molecule parameters, required in pulse mode.
    process : CompileRequest or None, optional
        The gate to compile for U, required in pulse mode.
    pseudopure_epsilon : float or None, optional
        If given, the input is the pseudopure state with this polarization
        and the readout is divided by it.
    ancilla : str, optional
        Ancilla label in ideal mode; pulse mode uses the request's ancilla.

    Returns
    -------
    CharFnTrace
        Raw values with their acquisition durations; no decay correction
        is applied.

    Raises
    ------
    ConfigError
        If pulse mode lacks a molecule or a compile request, or the molecule
        does not match the process.
    ProtocolError
        If the process violates one of the Landauer criteria.
    CompilationError
        If the compiled process does not implement `unitary`.
    """
    mode = InterferometerMode.parse(mode)
    landauer = _process(rho_S, reservoir, unitary)

    if mode is InterferometerMode.IDEAL:
        values, acquisition = _ideal_trace(landauer, grid, noise, ancilla,
                                           pseudopure_epsilon)
    else:
        if molecule is None:
            raise ConfigError('Pulse mode needs a molecule description.')
        if process is None:
            raise ConfigError('Pulse mode needs a compile request for the '
                              'process.')
        values, acquisition = _pulse_trace(landauer, grid, noise, molecule,
                                           process, pseudopure_epsilon)

    logging.debug(f'Sampled {grid.n} points of Theta(t) in {mode.value} mode')
    return CharFnTrace(grid.times, values, acquisition, grid=grid)


def invert_to_distribution(trace: CharFnTrace,
                           reservoir: ThermalReservoirSpec) \
        -> HeatDistribution:
    """
    Reconstructs the heat distribution by a discrete inverse Fourier transform.

    Bin k of the transform is the heat value 2 pi fftfreq(n, dt)[k]. Tiny
    negative bins from round-off are clipped and the result renormalized.

    Parameters
    ----------
    trace : CharFnTrace
        Trace sampled on a uniform grid.
    reservoir : ThermalReservoirSpec
        Reservoir whose gap the grid should resolve.

    Returns
    -------
    HeatDistribution
        Fourier-reconstructed distribution. For a leaking grid its
        `leakage` holds the bin detuning of the gap.

    Raises
    ------
    ReconstructionError
        If the trace has no grid, the gap aliases onto the grid, or a bin is
        negative beyond round-off on a leakage-free grid.

    Warns
    -----
    SpectralLeakageWarning
        If the gap does not fall on a bin.
    """
    grid = trace.grid
    if grid is None:
        raise ReconstructionError('Inversion needs a trace on a uniform '
                                  'grid.', {'times': trace.times.tolist()})

    unreliable = int(np.sum(~trace.reliable))
    if unreliable:
        logging.warning(f'Inverting a trace with {unreliable} unreliable '
                        f'samples')

    bins = grid.heat_bins()
    spectrum = scipy.fft.ifft(trace.values)
    p = spectrum.real
    leakage = grid.leakage_estimate(reservoir.gap)
    diagnostics = {'q': bins.tolist(), 'p': p.tolist(),
                   'imag': spectrum.imag.tolist(), 'dt': grid.dt,
                   'n': grid.n, 'gap': reservoir.gap}

    if not grid.is_leakage_free(reservoir.gap):
        warnings.warn(f'Gap {reservoir.gap:g} rad/s is detuned by '
                      f'{leakage:.3g} bins from the grid; the reconstructed '
                      f'distribution leaks', SpectralLeakageWarning,
                      stacklevel=2)
    else:
        if 2 * round(grid.bins_per_gap(reservoir.gap)) >= grid.n:
            raise ReconstructionError(f'Gap {reservoir.gap:g} rad/s aliases '
                                      f'on a grid of {grid.n} samples',
                                      diagnostics)
        if np.min(p) < -Tolerance.PROBABILITY_CLIP:
            raise ReconstructionError(f'Reconstructed probability '
                                      f'{np.min(p):.3g} is negative',
                                      diagnostics)
        leakage = None

    p = np.clip(p, 0.0, None)
    total = float(np.sum(p))
    if total <= 0:
        raise ReconstructionError('Reconstructed distribution is empty.',
                                  diagnostics)
    return HeatDistribution.from_atoms(bins, p / total, Provenance.FOURIER,
                                       leakage)
