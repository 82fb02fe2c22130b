"""
pylandauer.thermo.Landauer
==========================

Heat, entropy change and entropy production of a Landauer process.

A Landauer process couples a system S to a reservoir R such that

(i) S and R are distinct parts with the reservoir Hamiltonian acting on R,
(ii) the initial state is the uncorrelated product rho_S (x) rho_R,
(iii) the reservoir starts in the Gibbs state of H_R at inverse temperature
      beta,
(iv) S and R interact through a global unitary U.

For such processes the entropy production

    Sigma = beta <Q> - Delta S = I(S':R') + D(rho_R' || rho_R)

is non-negative, which is Landauer's bound beta <Q> >= Delta S. The
`LandauerReport` checks both forms of Sigma against each other on
construction.
"""

# Libs
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import (DomainError, ProtocolError, ShapeError,
                                   ValidationError)
from pylandauer.qstate import (DensityOperator, Observable, Operator,
                               QubitRegister, UnitaryOperator, evolve,
                               partial_trace, tensor_compose, trace_distance)
from pylandauer.thermo.Entropy import (entropy_change, mutual_information,
                                       relative_entropy)
from pylandauer.thermo.ThermalReservoir import gibbs_state


__all__ = ['average_heat', 'cnot_heat_theory', 'partial_swap_heat_theory',
           'LandauerReport', 'LandauerProcess', 'landauer_analyze']


def average_heat(hamiltonian: Observable, before: DensityOperator,
                 after: DensityOperator) -> float:
    """
    Average heat <Q> = tr[H_R (rho_R' - rho_R)] dissipated into the reservoir.

    Parameters
    ----------
    hamiltonian : Observable
        Reservoir Hamiltonian in rad/s.
    before, after : DensityOperator
        Reservoir state before and after the process.

    Returns
    -------
    float
        Heat in rad/s.

    Raises
    ------
    ShapeError
        If the three operators do not share one register.
    """
    if not hamiltonian.register == before.register == after.register:
        raise ShapeError(f'Hamiltonian on {hamiltonian.labels} does not '
                         f'match states on {before.labels} and '
                         f'{after.labels}')
    value = complex(np.trace(hamiltonian.matrix
                             @ (after.matrix - before.matrix)))
    scale = max(1.0, float(np.max(np.abs(hamiltonian.matrix))))
    if abs(value.imag) > Tolerance.EXPECTATION_IMAG * scale:
        raise ValidationError(f'Average heat has imaginary part '
                              f'{value.imag:.3g}')
    return value.real


def cnot_heat_theory(x: float) -> float:
    """
    beta <Q> = (x/2) tanh(x/2) of a CNOT (S control) with rho_S = I/2, x = beta * gap.
    """
    if x == 0:
        return 0.0
    return x / 2 * math.tanh(x / 2)


def partial_swap_heat_theory(x: float, phi: float) -> float:
    """
    beta <Q> = sin^2(phi/2) (x/2) tanh(x/2) of a partial swap with rho_S = I/2.
    """
    return math.sin(phi / 2) ** 2 * cnot_heat_theory(x)


@dataclass(frozen=True, slots=True)
class LandauerReport:
    """
    Thermodynamic balance of one Landauer process; all values dimensionless (nats).

    Construction checks sigma = beta_Q - delta_S and sigma = I + D, and that
    sigma is not negative. The tolerance is `Tolerance.IDENTITY` times
    max(1, |beta_Q|, |delta_S|): absolute for values up to 1, relative to
    the larger of beta_Q and delta_S above that.

    Attributes
    ----------
    delta_S : float
        Entropy change of the system S(rho_S) - S(rho_S').
    beta_Q : float
        Average heat times beta.
    sigma : float
        Entropy production beta_Q - delta_S.
    mutual_info : float
        Mutual information between S and R after the process.
    rel_entropy : float
        Relative entropy D(rho_R' || rho_R).
    """
    delta_S: float
    beta_Q: float
    sigma: float
    mutual_info: float
    rel_entropy: float

    def __post_init__(self) -> None:
        scale = max(1.0, abs(self.beta_Q), abs(self.delta_S))
        tol = Tolerance.IDENTITY * scale
        if abs(self.sigma - (self.beta_Q - self.delta_S)) > tol:
            raise ValidationError(f'Sigma = {self.sigma:.12g} differs from '
                                  f'beta Q - delta S = '
                                  f'{self.beta_Q - self.delta_S:.12g}')
        if abs(self.sigma - (self.mutual_info + self.rel_entropy)) > tol:
            raise ValidationError(f'Sigma = {self.sigma:.12g} differs from '
                                  f'I + D = '
                                  f'{self.mutual_info + self.rel_entropy:.12g}')
        if self.sigma < -tol:
            raise ValidationError(f'Landauer bound violated: Sigma = '
                                  f'{self.sigma:.3g}')


@dataclass(frozen=True, eq=False)
class LandauerProcess:
    """
    A system-reservoir process that satisfies criteria (i)-(iv).

    The criteria are checked once on construction; a violation raises
    `ProtocolError` naming the criterion.

    Attributes
    ----------
    hamiltonian : Observable
        Reservoir Hamiltonian.
    system_state : DensityOperator
        Initial system state.
    reservoir_state : DensityOperator
        Initial reservoir state; must be the Gibbs state of `hamiltonian`.
    unitary : UnitaryOperator
        Interaction on the union of system and reservoir labels.
    beta : float
        Inverse temperature of the reservoir.
    """
    hamiltonian: Observable
    system_state: DensityOperator
    reservoir_state: DensityOperator
    unitary: UnitaryOperator
    beta: float

    def __post_init__(self) -> None:
        # (i) distinct system and reservoir
        if self.reservoir_state.register != self.hamiltonian.register:
            raise ProtocolError(f'Reservoir state on '
                                f'{self.reservoir_state.labels} does not '
                                f'match H_R on {self.hamiltonian.labels}', 'i')
        if not self.system_state.register.isdisjoint(
                self.reservoir_state.register):
            raise ProtocolError('System and reservoir share qubits', 'i')

        # (iii) Gibbs reservoir
        try:
            gibbs = gibbs_state(self.hamiltonian, self.beta)
        except DomainError as e:
            raise ProtocolError(str(e), 'iii') from e
        distance = trace_distance(self.reservoir_state, gibbs)
        if distance > Tolerance.IDENTITY:
            raise ProtocolError(f'Reservoir is not in the Gibbs state at '
                                f'beta = {self.beta:.6g} (trace distance '
                                f'{distance:.3g})', 'iii')

        # (iv) global unitary on S and R
        if self.unitary.register != self.register:
            raise ProtocolError(f'Interaction acts on {self.unitary.labels}, '
                                f'expected {self.register.labels}', 'iv')
        if not isinstance(self.unitary, UnitaryOperator):
            try:
                unitary = UnitaryOperator(self.unitary.register,
                                          self.unitary.matrix)
            except ValidationError as e:
                raise ProtocolError(str(e), 'iv') from e
            object.__setattr__(self, 'unitary', unitary)

    @classmethod
    def from_joint(cls, hamiltonian: Observable, joint: DensityOperator,
                   unitary: Operator, beta: float) -> 'LandauerProcess':
        """
        Builds a process from a joint initial state, checking that it is uncorrelated.

        Raises
        ------
        ProtocolError
            With criterion 'ii' if system and reservoir are correlated.
        """
        reservoir_labels = hamiltonian.labels
        system_labels = tuple(l for l in joint.labels
                              if l not in reservoir_labels)
        if not system_labels or not set(reservoir_labels) <= set(joint.labels):
            raise ProtocolError(f'Joint state on {joint.labels} does not '
                                f'split into system and reservoir '
                                f'{reservoir_labels}', 'i')

        correlation = mutual_information(joint,
                                         (system_labels, reservoir_labels))
        if correlation > Tolerance.IDENTITY:
            raise ProtocolError(f'Initial state is correlated (mutual '
                                f'information {correlation:.3g} nats)', 'ii')

        return cls(hamiltonian, partial_trace(joint, system_labels),
                   partial_trace(joint, reservoir_labels), unitary, beta)

    @property
    def register(self) -> QubitRegister:
        return self.system_state.register.union(self.reservoir_state.register)

    @property
    def system_labels(self) -> tuple[str, ...]:
        return self.system_state.labels

    @property
    def reservoir_labels(self) -> tuple[str, ...]:
        return self.reservoir_state.labels

    @cached_property
    def initial_state(self) -> DensityOperator:
        return tensor_compose(self.system_state, self.reservoir_state)

    @cached_property
    def final_state(self) -> DensityOperator:
        return evolve(self.initial_state, self.unitary)

    @cached_property
    def system_after(self) -> DensityOperator:
        return partial_trace(self.final_state, self.system_labels)

    @cached_property
    def reservoir_after(self) -> DensityOperator:
        return partial_trace(self.final_state, self.reservoir_labels)

    def average_heat(self) -> float:
        return average_heat(self.hamiltonian, self.reservoir_state,
                            self.reservoir_after)

    def report(self) -> LandauerReport:
        """
        Computes the entropy balance of the process.

        Raises
        ------
        DomainError
            At zero temperature, where beta <Q> is undefined.
        """
        if math.isinf(self.beta):
            raise DomainError('The entropy balance needs a finite inverse '
                              'temperature.')

        delta_s = entropy_change(self.system_state, self.system_after)
        beta_q = self.beta * self.average_heat()
        mutual = mutual_information(self.final_state, (self.system_labels,
                                                       self.reservoir_labels))
        relative = relative_entropy(self.reservoir_after,
                                    self.reservoir_state)

        logging.debug(f'Landauer balance: dS = {delta_s:.6g}, '
                      f'bQ = {beta_q:.6g}, I = {mutual:.6g}, '
                      f'D = {relative:.6g}')
        return LandauerReport(delta_s, beta_q, beta_q - delta_s, mutual,
                              relative)


def landauer_analyze(hamiltonian: Observable, rho_S: DensityOperator,
                     rho_R: DensityOperator, unitary: Operator,
                     beta: float) -> LandauerReport:
    """
    Runs a Landauer process and returns its entropy balance.

    Parameters
    ----------
    hamiltonian : Observable
        Reservoir Hamiltonian H_R in rad/s.
    rho_S : DensityOperator
        Initial system state.
    rho_R : DensityOperator
        Initial reservoir state, the Gibbs state of H_R at `beta`.
    unitary : Operator
        Global unitary on the system and reservoir labels.
    beta : float
        Inverse temperature in s. It is passed explicitly because H_R and
        rho_R alone do not fix it when rho_R is maximally mixed.

    Returns
    -------
    LandauerReport
        Delta S, beta <Q>, Sigma, I and D with both identities checked.

    Raises
    ------
    ProtocolError
        If one of the criteria (i)-(iv) is violated.

    Examples
    --------
    >>> reservoir = ThermalReservoirSpec.from_beta_inv_hz(123, 805.56)
    >>> report = landauer_analyze(reservoir.hamiltonian(),
    ...                           maximally_mixed(['S']), reservoir.state(),
    ...                           cnot('S', 'R'), reservoir.beta)
    >>> round(report.beta_Q, 2)
    3.27
    """
    return LandauerProcess(hamiltonian, rho_S, rho_R, unitary,
                           beta).report()
