"""
pylandauer.expharness.Sweep
===========================

Temperature and angle sweeps of the Landauer experiment.

Features:
- `ReportRow`: one sweep point, checked against the Landauer identities on
  construction.
- `run_cnot_sweep`: CNOT between system (control) and reservoir (target)
  for every configured temperature.
- `run_partial_swap_sweep`: partial swaps for every configured angle and
  temperature.

Every point prepares the reservoir in its Gibbs state and the system in
I/2, computes the heat distribution and the entropy balance, and checks the
result against the closed forms. In pulse mode the states come from the
preparation sequence, the process from the compiled pulse program and the
heat distribution from the inverted interferometer trace.
"""

# Libs
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping

# pylandauer
from pylandauer.gates import EXTRAPOLATED_PHI, cnot, partial_swap
from pylandauer.heatstats import (HeatDistribution, InterferometerMode,
                                  char_fn_interferometric,
                                  invert_to_distribution, tpm_distribution)
from pylandauer.msc import Debug, Tolerance
from pylandauer.msc.Errors import LandauerError, SweepError
from pylandauer.nmrsim import (CompileRequest, MoleculeSpec, NoiseSpec,
                               compile_compensated, decay_correction,
                               preparation_program)
from pylandauer.qstate import (DensityOperator, UnitaryOperator, basis_state,
                               maximally_mixed, partial_trace, trace_distance)
from pylandauer.thermo import (LandauerProcess, LandauerReport,
                               ThermalReservoirSpec, binary_entropy,
                               cnot_heat_theory, partial_swap_heat_theory)
from pylandauer.expharness.Config import ExperimentConfig, Process


__all__ = ['EXTRAPOLATED_NOTE', 'ReportRow', 'REPORT_COLUMNS',
           'run_cnot_sweep', 'run_partial_swap_sweep', 'run_sweep']


EXTRAPOLATED_NOTE = 'nominal angle 3pi/2; 2pi/3 fits the sequence'


@dataclass(frozen=True, slots=True)
class ReportRow:
    """
    One sweep point; thermodynamic values in nats.

    Attributes
    ----------
    process : str
        'cnot' or 'partial_swap'.
    beta_inv_hz : float
        Reservoir temperature (beta*hbar)^-1 in Hz.
    phi : float or None
        Partial-swap angle, None for CNOT rows.
    delta_S, beta_Q, sigma, mutual_info, rel_entropy : float
        Entropy balance of the process.
    gamma_theory : float
        Closed-form beta <Q> for a maximally mixed system.
    p_neg_heat : float
        Probability of negative heat.
    mode : str
        'ideal' or 'pulse'.
    noise : bool
        Whether phase damping was on.
    note : str
        Free-text remark.
    """
    process: str
    beta_inv_hz: float
    phi: float | None
    delta_S: float
    beta_Q: float
    sigma: float
    mutual_info: float
    rel_entropy: float
    gamma_theory: float
    p_neg_heat: float
    mode: str
    noise: bool
    note: str = ''

    def __post_init__(self) -> None:
        LandauerReport(self.delta_S, self.beta_Q, self.sigma,
                       self.mutual_info, self.rel_entropy)

    def as_record(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_record(cls, record: Mapping[str, Any]) -> 'ReportRow':
        """
        Builds a row from a record read back from a report file.
        """
        phi = record.get('phi')
        noise = record.get('noise')
        if isinstance(noise, str):
            noise = noise.strip().lower() == 'true'
        return cls(process=str(record['process']),
                   beta_inv_hz=float(record['beta_inv_hz']),
                   phi=None if phi is None else float(phi),
                   delta_S=float(record['delta_S']),
                   beta_Q=float(record['beta_Q']),
                   sigma=float(record['sigma']),
                   mutual_info=float(record['mutual_info']),
                   rel_entropy=float(record['rel_entropy']),
                   gamma_theory=float(record['gamma_theory']),
                   p_neg_heat=float(record['p_neg_heat']),
                   mode=str(record['mode']), noise=bool(noise),
                   note=str(record.get('note') or ''))


REPORT_COLUMNS = [f.name for f in fields(ReportRow)]


@dataclass(frozen=True, slots=True)
class _Context:
    config: ExperimentConfig
    molecule: MoleculeSpec | None
    noise: NoiseSpec | None


def _request(process: Process, phi: float | None,
             molecule: MoleculeSpec) -> CompileRequest:
    if process is Process.CNOT:
        return CompileRequest.cnot()
    return CompileRequest.partial_swap(phi, molecule.coupling('R', 'S'))


def _ideal_unitary(process: Process, phi: float | None) -> UnitaryOperator:
    if process is Process.CNOT:
        return cnot('S', 'R')
    return partial_swap(phi, ('R', 'S'))


def _prepared_states(reservoir: ThermalReservoirSpec,
                     molecule: MoleculeSpec) \
        -> tuple[DensityOperator, DensityOperator]:
    ground = basis_state(molecule.register, '0' * len(molecule.qubits))
    state = preparation_program(reservoir.alpha, molecule).apply(ground,
                                                                 molecule)
    return partial_trace(state, ['R']), partial_trace(state, ['S'])


def _heat_distribution(context: _Context, reservoir: ThermalReservoirSpec,
                       rho_S: DensityOperator, unitary: UnitaryOperator,
                       request: CompileRequest | None) -> HeatDistribution:
    config = context.config
    if config.mode is InterferometerMode.IDEAL and context.noise is None:
        return tpm_distribution(rho_S, reservoir, unitary)

    trace = char_fn_interferometric(rho_S, reservoir, unitary, config.grid(),
                                    config.mode, context.noise,
                                    context.molecule, request)
    if context.noise is not None:
        trace = decay_correction(trace, context.noise)
    return invert_to_distribution(trace, reservoir)


def _check(condition: bool, message: str, reservoir: ThermalReservoirSpec,
           phi: float | None) -> None:
    if not condition:
        raise SweepError(message, reservoir.beta_inv_hz, phi)


def _evaluate(context: _Context, reservoir: ThermalReservoirSpec,
              phi: float | None) -> ReportRow:
    config = context.config
    process = config.process
    logging.debug(f'{process.value} point at {reservoir.beta_inv_hz:g} Hz'
                  + ('' if phi is None else f', phi = {phi:.6g}'))

    request = None
    if config.mode is InterferometerMode.PULSE:
        request = _request(process, phi, context.molecule)
        rho_R, rho_S = _prepared_states(reservoir, context.molecule)
        unitary = compile_compensated(request, context.molecule) \
            .rs_unitary(context.molecule)
    else:
        rho_R, rho_S = reservoir.state(), maximally_mixed(['S'])
        unitary = _ideal_unitary(process, phi)

    landauer = LandauerProcess(reservoir.hamiltonian(), rho_S, rho_R,
                               unitary, reservoir.beta)
    report = landauer.report()
    dist = _heat_distribution(context, reservoir, rho_S, unitary, request)

    # Heat statistics and the entropy balance must see the same <Q>
    exact = config.mode is InterferometerMode.IDEAL and context.noise is None
    tol = (Tolerance.HEAT_CONSISTENCY if exact
           else Tolerance.PULSE_AGREEMENT) * max(1.0, abs(report.beta_Q))
    _check(abs(reservoir.beta * dist.mean() - report.beta_Q) <= tol,
           f'beta <Q> from the heat distribution '
           f'{reservoir.beta * dist.mean():.12g} differs from the trace '
           f'formula {report.beta_Q:.12g}', reservoir, phi)

    if process is Process.CNOT:
        gamma = cnot_heat_theory(reservoir.x)
        _check(abs(report.delta_S) <= Tolerance.ENTROPY_CHANGE,
               f'CNOT changed the system entropy by {report.delta_S:.3g}',
               reservoir, phi)
    else:
        gamma = partial_swap_heat_theory(reservoir.x, phi)
        if math.isclose(math.cos(phi), -1.0, abs_tol=1e-15):
            _check_full_erasure(landauer, report, reservoir, phi, exact)

    if config.mode is InterferometerMode.IDEAL:
        _check(abs(gamma - report.beta_Q)
               <= Tolerance.HEAT_CONSISTENCY * max(1.0, gamma),
               f'beta <Q> = {report.beta_Q:.12g} differs from the closed '
               f'form {gamma:.12g}', reservoir, phi)

    note = ''
    if phi is not None and math.isclose(phi, EXTRAPOLATED_PHI):
        note = EXTRAPOLATED_NOTE

    return ReportRow(process.value, reservoir.beta_inv_hz, phi,
                     report.delta_S, report.beta_Q, report.sigma,
                     report.mutual_info, report.rel_entropy, gamma,
                     dist.probability_negative(), config.mode.value,
                     context.noise is not None, note)


def _check_full_erasure(landauer: LandauerProcess, report: LandauerReport,
                        reservoir: ThermalReservoirSpec, phi: float,
                        exact: bool) -> None:
    # A full swap leaves the system in the reservoir's initial state
    tol = 1e-12 if exact else 1e-6
    distance = trace_distance(partial_trace(landauer.final_state, ['S']),
                              DensityOperator.on(['S'],
                                                 reservoir.state().matrix))
    _check(distance <= tol, f'Full swap leaves the system {distance:.3g} '
                            f'away from the reservoir state', reservoir, phi)

    p_ground = reservoir.populations[0]
    expected = math.log(2) - binary_entropy(p_ground)
    _check(abs(report.delta_S - expected) <= max(tol, 1e-10),
           f'Full swap entropy change {report.delta_S:.12g}, expected '
           f'{expected:.12g}', reservoir, phi)


def _run_point(context: _Context, reservoir: ThermalReservoirSpec,
               phi: float | None) -> ReportRow:
    try:
        return _evaluate(context, reservoir, phi)
    except SweepError:
        raise
    except LandauerError as e:
        raise SweepError(str(e), reservoir.beta_inv_hz, phi) from e


def _context(config: ExperimentConfig) -> _Context:
    molecule = None
    if config.mode is InterferometerMode.PULSE or config.noise:
        molecule = config.load_molecule()
    noise = config.noise_spec(molecule) if molecule is not None else None
    return _Context(config, molecule, noise)


def _run(config: ExperimentConfig,
         points: list[tuple[ThermalReservoirSpec, float | None]]) \
        -> list[ReportRow]:
    context = _context(config)
    logging.info(f'Running {len(points)} {config.process.value} points in '
                 f'{config.mode.value} mode'
                 + (' with noise' if config.noise else ''))

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda p: _run_point(context, *p), points))

    logging.info(f'Finished {len(rows)} {config.process.value} points')
    return rows


@Debug.timing()
def run_cnot_sweep(config: ExperimentConfig) -> list[ReportRow]:
    """
    Runs the CNOT process at every configured temperature.

    Parameters
    ----------
    config : ExperimentConfig
        Sweep configuration; its process is ignored.

    Returns
    -------
    list[ReportRow]
        One row per temperature, in configuration order.

    Raises
    ------
    SweepError
        If a point fails or violates a check; carries its temperature.

    Examples
    --------
    >>> config = ExperimentConfig(temperatures_hz=(123.0,))
    >>> round(run_cnot_sweep(config)[0].beta_Q, 2)
    3.27
    """
    if config.process is not Process.CNOT:
        config = config.with_overrides(process=Process.CNOT)
    return _run(config, [(r, None) for r in config.reservoirs()])


@Debug.timing()
def run_partial_swap_sweep(config: ExperimentConfig) -> list[ReportRow]:
    """
    Runs partial swaps for every configured angle at every temperature.

    Rows are ordered by temperature first, then by angle.

    Raises
    ------
    SweepError
        If a point fails or violates a check; carries its temperature and
        angle.
    """
    if config.process is not Process.PARTIAL_SWAP:
        config = config.with_overrides(process=Process.PARTIAL_SWAP)
    points = [(r, phi) for r in config.reservoirs() for phi in config.phis_rad]
    return _run(config, points)


def run_sweep(config: ExperimentConfig) -> list[ReportRow]:
    """
    Runs the sweep of the configured process.
    """
    if config.process is Process.CNOT:
        return run_cnot_sweep(config)
    return run_partial_swap_sweep(config)
