"""
pylandauer.nmrsim.PulseProgram
==============================

Pulse sequences as lists of elements.

Elements:
- `Rotation`: instantaneous rf pulse on one qubit about x, y (or a virtual
  z rotation).
- `FreeEvolution`: evolution under the Ising Hamiltonian. Segments flagged
  `acquisition` belong to the controlled-v_t part of the interferometer;
  the noise model dephases the state during them.
- `Gradient`: field gradient that fully dephases the listed qubits.
- `ZCorrection`: virtual z rotation appended by `z_compensation`.

Elements are listed in time order, so the net unitary is the product of
the element unitaries from the last to the first.
"""

# Libs
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

# pylandauer
from pylandauer.msc.Errors import CompilationError, DomainError, LabelError
from pylandauer.qstate import (DensityOperator, UnitaryOperator,
                               apply_channel, embed, evolve, reorder_matrix)
from pylandauer.gates import elementary_gate
from pylandauer.nmrsim.Ising import free_evolution
from pylandauer.nmrsim.MoleculeSpec import MoleculeSpec
from pylandauer.nmrsim.Noise import (NoiseSpec, gradient_channel,
                                     phase_damping_evolution)


__all__ = ['Rotation', 'FreeEvolution', 'Gradient', 'ZCorrection',
           'PulseElement', 'PulseProgram']


@dataclass(frozen=True, slots=True)
class Rotation:
    qubit: str
    axis: str
    angle: float

    def __post_init__(self) -> None:
        if self.axis not in ('x', 'y', 'z'):
            raise DomainError(f'Rotation axis must be x, y or z, got '
                              f'"{self.axis}"')
        if not math.isfinite(self.angle):
            raise DomainError(f'Rotation angle must be finite, got '
                              f'{self.angle}')

    def unitary(self, spec: MoleculeSpec) -> UnitaryOperator:
        return elementary_gate(f'R{self.axis}', self.qubit, self.angle)


@dataclass(frozen=True, slots=True)
class FreeEvolution:
    duration: float
    acquisition: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.duration) and self.duration >= 0):
            raise DomainError(f'Free evolution needs a duration >= 0, got '
                              f'{self.duration}')

    def unitary(self, spec: MoleculeSpec) -> UnitaryOperator:
        return free_evolution(spec, self.duration)


@dataclass(frozen=True, slots=True)
class Gradient:
    qubits: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ZCorrection:
    qubit: str
    angle: float

    def unitary(self, spec: MoleculeSpec) -> UnitaryOperator:
        return elementary_gate('RZ', self.qubit, self.angle)


PulseElement = Union[Rotation, FreeEvolution, Gradient, ZCorrection]


@dataclass(frozen=True, eq=False)
class PulseProgram:
    """
    A time-ordered pulse sequence.

    Attributes
    ----------
    elements : tuple[PulseElement, ...]
        Elements in time order.
    target : UnitaryOperator or None
        Ideal gate the program realizes, on the full molecule register;
        required by `z_compensation`.
    name : str
        Label used in log messages.
    """
    elements: tuple[PulseElement, ...] = field(default_factory=tuple)
    target: UnitaryOperator | None = None
    name: str = ''

    def __post_init__(self) -> None:
        object.__setattr__(self, 'elements', tuple(self.elements))

    @property
    def total_duration(self) -> float:
        """
        Sum of all free evolution times in s; pulses are instantaneous.
        """
        return sum(e.duration for e in self.elements
                   if isinstance(e, FreeEvolution))

    @property
    def acquisition_duration(self) -> float:
        return sum(e.duration for e in self.elements
                   if isinstance(e, FreeEvolution) and e.acquisition)

    def append(self, *elements: PulseElement) -> 'PulseProgram':
        return PulseProgram(self.elements + elements, self.target, self.name)

    def then(self, other: 'PulseProgram', name: str = '') -> 'PulseProgram':
        """
        Returns this program followed by `other`; the target is dropped.
        """
        return PulseProgram(self.elements + other.elements, None,
                            name or f'{self.name}+{other.name}')

    def _check_labels(self, spec: MoleculeSpec) -> None:
        for element in self.elements:
            qubits = element.qubits if isinstance(element, Gradient) \
                else (getattr(element, 'qubit', None),)
            for qubit in qubits:
                if qubit is not None and qubit not in spec.qubits:
                    raise LabelError(f'Pulse on unknown qubit "{qubit}"')

    def unitary(self, spec: MoleculeSpec) -> UnitaryOperator:
        """
        Returns the net unitary of the program on the molecule register.

        Raises
        ------
        CompilationError
            If the program contains a gradient, which is not unitary.
        """
        self._check_labels(spec)
        register = spec.register
        net = np.eye(register.dimension, dtype=complex)
        for element in self.elements:
            if isinstance(element, Gradient):
                raise CompilationError(f'Program "{self.name}" contains a '
                                       f'gradient and has no unitary.')
            net = embed(element.unitary(spec), register) @ net
        return UnitaryOperator(register, net)

    def apply(self, state: DensityOperator, spec: MoleculeSpec,
              noise: NoiseSpec | None = None) -> DensityOperator:
        """
        Runs the program element by element on a state.

        Parameters
        ----------
        state : DensityOperator
            Input on the molecule register.
        spec : MoleculeSpec
            Molecule parameters.
        noise : NoiseSpec or None, optional
            If given and enabled, acquisition segments are followed by phase
            damping for their duration.

        Returns
        -------
        DensityOperator
            Output state.
        """
        self._check_labels(spec)
        for element in self.elements:
            if isinstance(element, Gradient):
                state = apply_channel(state, gradient_channel(element.qubits))
                continue
            state = evolve(state, element.unitary(spec))
            if noise is not None and isinstance(element, FreeEvolution) \
                    and element.acquisition:
                state = phase_damping_evolution(state, element.duration,
                                                noise)
        return state

    def rs_unitary(self, spec: MoleculeSpec) -> UnitaryOperator:
        """
        Returns the block of the net unitary on the non-ancilla qubits.

        Raises
        ------
        CompilationError
            If the program does not leave the ancilla idle.
        """
        net = self.unitary(spec)
        rest = tuple(l for l in spec.qubits if l != spec.ancilla)
        if len(rest) == len(spec.qubits):
            return net

        # Ancilla is the leading factor after reordering
        matrix = reorder_matrix(net.matrix, spec.qubits,
                                (spec.ancilla,) + rest)
        d = matrix.shape[0] // 2
        block = matrix[:d, :d]
        idle = np.kron(np.eye(2), block)
        if np.max(np.abs(matrix - idle)) > 1e-9:
            raise CompilationError(f'Program "{self.name}" acts on the '
                                   f'ancilla; no system-reservoir block.')
        return UnitaryOperator.on(rest, block)
