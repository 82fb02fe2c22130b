"""
pylandauer.nmrsim.Compiler
==========================

Pulse-level realizations of the gates used in the experiment.

All two-qubit interactions are built from one primitive, the refocused ZZ
block: two halves of free evolution separated by pi pulses on both coupled
qubits. The pulses invert every other coupling and offset of the pair, so
the block leaves only exp(-i theta z_a z_b / 4).

- CNOT (S control, R target): the ZZ block at theta = pi between y pulses
  on R, plus a z rotation on R.
- Partial swap: Heisenberg evolution exp(-i phi/4 (XX + YY + ZZ)) from ZZ
  blocks rotated onto the x and y axes, with phi = 2 pi J_RS tau.
- Controlled-v_t: free evolution under J_RA for t' = gap t / (2 pi J_RA)
  with a refocusing pi pulse on S; the dagger is wrapped in pi pulses on R.

Compiled programs agree with the ideal gate up to a global phase and local
z rotations. `z_compensation` appends virtual z corrections that cancel the
latter.
"""

# Libs
import cmath
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import scipy.linalg

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import CompensationError, CompilationError
from pylandauer.qstate import (Observable, QubitRegister, UnitaryOperator,
                               embed, process_distance)
from pylandauer.gates import cnot, controlled_v, partial_swap
from pylandauer.nmrsim.MoleculeSpec import MoleculeSpec
from pylandauer.nmrsim.PulseProgram import (FreeEvolution, Gradient,
                                            PulseElement, PulseProgram,
                                            Rotation, ZCorrection)


__all__ = ['PulseGate', 'CompileRequest', 'compile_pulse_program',
           'z_compensation', 'compile_compensated', 'preparation_program',
           'pulse_interferometer']


class PulseGate(Enum):
    CNOT = 'cnot'
    PARTIAL_SWAP = 'partial_swap'
    CONTROLLED_V = 'controlled_v'
    CONTROLLED_V_DAGGER = 'controlled_v_dagger'


@dataclass(frozen=True, slots=True)
class CompileRequest:
    """
    A gate to be compiled into pulses.

    Attributes
    ----------
    gate : PulseGate
        Gate kind.
    tau : float
        Heisenberg coupling time of a partial swap in s.
    t : float
        Time argument of a controlled-v_t in s.
    gap : float or None
        Reservoir gap in rad/s; required for controlled-v_t.
    system, reservoir, ancilla : str
        Qubit labels.
    """
    gate: PulseGate
    tau: float = 0.0
    t: float = 0.0
    gap: float | None = None
    system: str = 'S'
    reservoir: str = 'R'
    ancilla: str = 'A'

    @classmethod
    def cnot(cls) -> 'CompileRequest':
        return cls(PulseGate.CNOT)

    @classmethod
    def partial_swap(cls, phi: float, j_rs_hz: float) -> 'CompileRequest':
        """
        Request for the partial swap at angle phi, tau = phi / (2 pi J_RS).
        """
        if j_rs_hz == 0:
            raise CompilationError('A partial swap needs a non-zero J_RS.')
        return cls(PulseGate.PARTIAL_SWAP, tau=phi / (2 * math.pi * j_rs_hz))

    @classmethod
    def controlled_v(cls, t: float, gap: float, dagger: bool = False) \
            -> 'CompileRequest':
        gate = PulseGate.CONTROLLED_V_DAGGER if dagger \
            else PulseGate.CONTROLLED_V
        return cls(gate, t=t, gap=gap)

    def reservoir_hamiltonian(self) -> Observable:
        if self.gap is None or not self.gap > 0:
            raise CompilationError(f'{self.gate.value} needs a positive '
                                   f'reservoir gap, got {self.gap}')
        return Observable(QubitRegister((self.reservoir,)),
                          np.diag([0.0, self.gap]))

    def ideal(self, spec: MoleculeSpec) -> UnitaryOperator:
        """
        Returns the ideal gate on the labels it acts on.
        """
        if self.gate is PulseGate.CNOT:
            return cnot(self.system, self.reservoir)
        if self.gate is PulseGate.PARTIAL_SWAP:
            phi = 2 * math.pi * spec.coupling(self.reservoir, self.system) \
                * self.tau
            return partial_swap(phi, (self.reservoir, self.system))
        return controlled_v(self.ancilla, self.reservoir_hamiltonian(),
                            self.t,
                            dagger=self.gate is PulseGate.CONTROLLED_V_DAGGER)

    def target(self, spec: MoleculeSpec) -> UnitaryOperator:
        """
        Returns the ideal gate embedded in the molecule register.
        """
        return UnitaryOperator(spec.register,
                               embed(self.ideal(spec), spec.register))


def _pi_pair(a: str, b: str) -> list[PulseElement]:
    return [Rotation(a, 'x', math.pi), Rotation(b, 'x', math.pi)]


def _zz_block(spec: MoleculeSpec, a: str, b: str,
              theta: float) -> list[PulseElement]:
    # exp(-i theta z_a z_b / 4) up to a global phase
    j = spec.coupling(a, b)
    if j == 0:
        raise CompilationError(f'Qubits {a} and {b} are not coupled.')
    half = FreeEvolution(abs(theta) / (2 * math.pi * abs(j)) / 2)
    block: list[PulseElement] = [half, *_pi_pair(a, b), half,
                                 *_pi_pair(a, b)]
    if theta * j < 0:
        # A pi pulse on b inverts the sign of the coupling
        block = [Rotation(b, 'x', math.pi), *block, Rotation(b, 'x', math.pi)]
    return block


def _cnot_elements(spec: MoleculeSpec,
                   request: CompileRequest) -> list[PulseElement]:
    r, s = request.reservoir, request.system
    return [Rotation(r, 'y', -math.pi / 2),
            *_zz_block(spec, r, s, math.pi),
            Rotation(r, 'z', -math.pi / 2),
            Rotation(r, 'y', math.pi / 2)]


def _partial_swap_elements(spec: MoleculeSpec,
                           request: CompileRequest) -> list[PulseElement]:
    if not (math.isfinite(request.tau) and request.tau >= 0):
        raise CompilationError(f'Partial swap needs tau >= 0, got '
                               f'{request.tau}')
    r, s = request.reservoir, request.system
    phi = 2 * math.pi * spec.coupling(r, s) * request.tau
    zz = _zz_block(spec, r, s, phi)

    # Rotate the ZZ block onto XX and YY
    xx = [Rotation(r, 'y', -math.pi / 2), Rotation(s, 'y', -math.pi / 2),
          *zz, Rotation(r, 'y', math.pi / 2), Rotation(s, 'y', math.pi / 2)]
    yy = [Rotation(r, 'x', math.pi / 2), Rotation(s, 'x', math.pi / 2),
          *zz, Rotation(r, 'x', -math.pi / 2), Rotation(s, 'x', -math.pi / 2)]
    return [*xx, *yy, *zz]


def _controlled_v_elements(spec: MoleculeSpec,
                           request: CompileRequest) -> list[PulseElement]:
    if not (math.isfinite(request.t) and request.t >= 0):
        raise CompilationError(f'Controlled-v needs t >= 0, got {request.t}')
    request.reservoir_hamiltonian()
    a, r, s = request.ancilla, request.reservoir, request.system

    j_ra = spec.coupling(a, r)
    if j_ra == 0:
        raise CompilationError(f'Controlled-v needs a non-zero coupling '
                               f'between {a} and {r}.')

    # J_RA z_A z_R / 4 supplies the controlled phase; pi pulses on S
    # refocus everything that involves S
    half = FreeEvolution(request.gap * request.t
                         / (2 * math.pi * abs(j_ra)) / 2, acquisition=True)
    elements: list[PulseElement] = [half, Rotation(s, 'x', math.pi),
                                    half, Rotation(s, 'x', math.pi)]

    dagger = request.gate is PulseGate.CONTROLLED_V_DAGGER
    if dagger != (j_ra < 0):
        elements = [Rotation(r, 'x', math.pi), *elements,
                    Rotation(r, 'x', math.pi)]
    return elements


_BUILDERS = {
    PulseGate.CNOT: _cnot_elements,
    PulseGate.PARTIAL_SWAP: _partial_swap_elements,
    PulseGate.CONTROLLED_V: _controlled_v_elements,
    PulseGate.CONTROLLED_V_DAGGER: _controlled_v_elements,
}


def compile_pulse_program(request: CompileRequest,
                          spec: MoleculeSpec) -> PulseProgram:
    """
    Compiles a gate into a pulse program for the molecule.

    Parameters
    ----------
    request : CompileRequest
        Gate and its parameters.
    spec : MoleculeSpec
        Molecule parameters.

    Returns
    -------
    PulseProgram
        Program with `target` set to the ideal gate. Its net unitary equals
        the target up to a global phase and local z rotations.

    Raises
    ------
    CompilationError
        If a required coupling is zero or a parameter is out of range.

    Examples
    --------
    >>> spec = MoleculeSpec.default()
    >>> program = z_compensation(
    ...     compile_pulse_program(CompileRequest.cnot(), spec), spec)
    >>> process_distance(program.unitary(spec), program.target) < 1e-6
    True
    """
    for label in (request.system, request.reservoir, request.ancilla):
        if label not in spec.qubits:
            raise CompilationError(f'Molecule has no qubit "{label}".')

    elements = _BUILDERS[request.gate](spec, request)
    program = PulseProgram(tuple(elements), request.target(spec),
                           request.gate.value)
    logging.debug(f'Compiled {program.name}: {len(program.elements)} '
                  f'elements, {program.total_duration * 1e3:.4g} ms')
    return program


def _residual_generator(residual: np.ndarray) -> np.ndarray:
    # L = exp(-i G)
    generator = 1j * scipy.linalg.logm(residual)
    return (generator + generator.conj().T) / 2


def z_compensation(program: PulseProgram, spec: MoleculeSpec) \
        -> PulseProgram:
    """
    Appends virtual z rotations that cancel the local z phases of a compiled program.

    Parameters
    ----------
    program : PulseProgram
        Program with a `target`.
    spec : MoleculeSpec
        Molecule parameters.

    Returns
    -------
    PulseProgram
        The same program if it already matches its target up to a global
        phase, otherwise a copy with `ZCorrection` elements appended.

    Raises
    ------
    CompilationError
        If the program has no target.
    CompensationError
        If the residual is not a product of local z rotations.
    """
    if program.target is None:
        raise CompilationError(f'Program "{program.name}" has no target '
                               f'gate to compensate against.')

    net = program.unitary(spec).matrix
    residual = net @ program.target.dagger

    off_diagonal = residual - np.diag(np.diag(residual))
    if np.max(np.abs(off_diagonal)) > Tolerance.OFF_DIAGONAL:
        raise CompensationError(f'Residual of "{program.name}" is not '
                                f'diagonal', _residual_generator(residual))

    # Relative phase of flipping a single qubit equals its z angle
    register = spec.register
    reference = residual[0, 0]
    corrections = []
    for label in register.labels:
        index = register.basis_index(label)
        angle = cmath.phase(residual[index, index] / reference)
        if abs(angle) > 1e-12:
            corrections.append(ZCorrection(label, -angle))

    compensated = program.append(*corrections) if corrections else program
    distance = process_distance(compensated.unitary(spec), program.target)
    if distance > Tolerance.PROCESS_DISTANCE:
        remaining = compensated.unitary(spec).matrix @ program.target.dagger
        raise CompensationError(f'Residual of "{program.name}" is not a '
                                f'product of local z rotations (process '
                                f'distance {distance:.3g} after correction)',
                                _residual_generator(remaining))

    if corrections:
        logging.debug(f'Compensated {program.name} with '
                      f'{[(c.qubit, round(c.angle, 6)) for c in corrections]}')
    return compensated


def compile_compensated(request: CompileRequest,
                        spec: MoleculeSpec) -> PulseProgram:
    """
    Compiles a gate and applies `z_compensation`.
    """
    return z_compensation(compile_pulse_program(request, spec), spec)


def preparation_program(alpha: float, spec: MoleculeSpec,
                        reservoir: str = 'R', system: str = 'S') \
        -> PulseProgram:
    """
    Prepares the thermal reservoir and the maximally mixed system from |0...0>.

    A y rotation through alpha on the reservoir and pi/2 on the system,
    followed by a gradient on both, leaves diag(cos^2(alpha/2), sin^2(alpha/2))
    on the reservoir and I/2 on the system.
    """
    for label in (reservoir, system):
        if label not in spec.qubits:
            raise CompilationError(f'Molecule has no qubit "{label}".')
    return PulseProgram((Rotation(reservoir, 'y', alpha),
                         Rotation(system, 'y', math.pi / 2),
                         Gradient((reservoir, system))),
                        name='preparation')


def pulse_interferometer(process: CompileRequest, t: float, gap: float,
                         spec: MoleculeSpec) -> PulseProgram:
    """
    Pulse-level interferometer: y pulse on the ancilla, controlled-v_t, process, controlled-v_t^dagger.

    Every gate is compiled and compensated separately.
    """
    ancilla = process.ancilla
    if ancilla not in spec.qubits:
        raise CompilationError(f'Molecule has no ancilla "{ancilla}".')

    gates = [
        replace(CompileRequest.controlled_v(t, gap), system=process.system,
                reservoir=process.reservoir, ancilla=ancilla),
        process,
        replace(CompileRequest.controlled_v(t, gap, dagger=True),
                system=process.system, reservoir=process.reservoir,
                ancilla=ancilla),
    ]
    program = PulseProgram((Rotation(ancilla, 'y', math.pi / 2),),
                           name='interferometer')
    for request in gates:
        program = program.then(compile_compensated(request, spec),
                               name='interferometer')
    return program
