"""
pylandauer.gates.Circuit
========================

Gate sequences with an ancilla readout, and the heat interferometer.

The interferometer measures the characteristic function of the heat
distribution without energy measurements on the reservoir:

    H on A -> controlled-v_t (A -> R) -> U on (R, S) -> controlled-v_t^dagger (A -> R)

with v_t = exp(-i H_R t). Reading out the ancilla gives

    Theta(t) = <sigma_x>_A - i <sigma_y>_A = tr[U (rho_R v_t^dagger (x) rho_S) U^dagger v_t].
"""

# Libs
from dataclasses import dataclass, field
from typing import Callable

# pylandauer
from pylandauer.msc.Errors import LabelError, ProtocolError, ShapeError
from pylandauer.qstate import (DensityOperator, Observable, QubitRegister,
                               UnitaryOperator, basis_state, evolve,
                               expectation, pauli, tensor_compose)
from pylandauer.gates.Gates import controlled_v, elementary_gate


__all__ = ['CircuitStep', 'CircuitSpec', 'build_interferometer',
           'interferometer_input']


@dataclass(frozen=True, slots=True)
class CircuitStep:
    """
    One gate of a circuit.

    Attributes
    ----------
    name : str
        Step name, e.g. 'controlled_v'.
    unitary : UnitaryOperator
        Gate on a subset of the circuit register.
    duration : float
        Laboratory duration in s; noise hooks use it to dephase the state.
    """
    name: str
    unitary: UnitaryOperator
    duration: float = 0.0


StepHook = Callable[[DensityOperator, CircuitStep], DensityOperator]


@dataclass(frozen=True, slots=True)
class CircuitSpec:
    """
    An ordered gate list with a Pauli readout on one qubit.

    Attributes
    ----------
    register : QubitRegister
        Register the circuit acts on.
    steps : tuple[CircuitStep, ...]
        Gates in application order.
    readout_label : str
        Qubit whose Pauli expectations are read out.
    readout_axes : tuple[str, ...]
        Pauli axes to read out.
    """
    register: QubitRegister
    steps: tuple[CircuitStep, ...]
    readout_label: str = 'A'
    readout_axes: tuple[str, ...] = field(default=('x', 'y'))

    def __post_init__(self) -> None:
        for step in self.steps:
            if not step.unitary.register.issubset(self.register):
                raise LabelError(f'Step "{step.name}" acts on '
                                 f'{step.unitary.labels}, outside '
                                 f'{self.register.labels}')
        self.register.position(self.readout_label)

    @property
    def observables(self) -> dict[str, Observable]:
        return {axis: pauli(axis, self.readout_label)
                for axis in self.readout_axes}

    def run(self, state: DensityOperator,
            after_step: StepHook | None = None) -> DensityOperator:
        """
        Applies all steps to `state`.

        Parameters
        ----------
        state : DensityOperator
            Input on the circuit register.
        after_step : StepHook or None, optional
            Called as `after_step(state, step)` after every step; its return
            value replaces the state. Used to interleave noise.

        Returns
        -------
        DensityOperator
            Output state.
        """
        if state.register != self.register:
            raise ShapeError(f'Circuit on {self.register.labels} cannot run '
                             f'on a state on {state.labels}')
        for step in self.steps:
            state = evolve(state, step.unitary)
            if after_step is not None:
                state = after_step(state, step)
        return state

    def readout(self, state: DensityOperator) -> dict[str, float]:
        """
        Returns the Pauli expectation values of the readout qubit.
        """
        return {axis: expectation(state, obs)
                for axis, obs in self.observables.items()}

    def characteristic_value(self, state: DensityOperator) -> complex:
        """
        Returns <sigma_x> - i <sigma_y> of the readout qubit.
        """
        values = self.readout(state)
        return complex(values['x'], -values['y'])


def build_interferometer(process: UnitaryOperator, hamiltonian: Observable,
                         t: float, ancilla: str = 'A') -> CircuitSpec:
    """
    Builds the ancilla interferometer that samples Theta(t) for a process.

    Parameters
    ----------
    process : UnitaryOperator
        System-reservoir interaction U; must not touch the ancilla.
    hamiltonian : Observable
        Reservoir Hamiltonian H_R.
    t : float
        Time argument of the characteristic function in s.
    ancilla : str, optional
        Ancilla label.

    Returns
    -------
    CircuitSpec
        Hadamard, controlled-v_t, U, controlled-v_t^dagger; both controlled
        steps carry duration t.

    Raises
    ------
    ProtocolError
        If the process acts on the ancilla or H_R acts outside the process
        register.
    """
    if ancilla in process.labels:
        raise ProtocolError(f'Process acts on the ancilla "{ancilla}"',
                            'interferometer')
    if not hamiltonian.register.issubset(process.register):
        raise ProtocolError(f'Reservoir {hamiltonian.labels} is not part of '
                            f'the process on {process.labels}',
                            'interferometer')

    register = QubitRegister(process.labels + (ancilla,))
    steps = (
        CircuitStep('hadamard', elementary_gate('H', ancilla)),
        CircuitStep('controlled_v', controlled_v(ancilla, hamiltonian, t), t),
        CircuitStep('process', process),
        CircuitStep('controlled_v_dagger',
                    controlled_v(ancilla, hamiltonian, t, dagger=True), t),
    )
    return CircuitSpec(register, steps, ancilla)


def interferometer_input(rho_R: DensityOperator, rho_S: DensityOperator,
                         ancilla: str = 'A') -> DensityOperator:
    """
    Returns |0><0|_A (x) rho_R (x) rho_S.
    """
    return tensor_compose(basis_state((ancilla,), '0'), rho_R, rho_S)
