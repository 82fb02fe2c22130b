"""
pylandauer.nmrsim.Noise
=======================

Dephasing, gradients and pseudopure scaling.

Features:
- `NoiseSpec`: per-qubit T2* times and an on/off switch.
- `phase_damping_channel` / `phase_damping_evolution`: local phase damping
  that multiplies every coherence of a qubit by exp(-t / T2*) and leaves
  populations alone. T1 relaxation is negligible on the time scale of the
  experiment and is not modelled.
- `gradient_channel`: complete dephasing of the targeted qubits, as
  produced by a field gradient.
- `pseudopure`: (1 - eps) I/d + eps rho, the NMR ensemble state whose
  traceless signals are eps-scaled copies of those of rho.
- `decay_correction`: divides a measured characteristic function by the
  dephasing envelope of the ancilla.
"""

from __future__ import annotations

# Libs
import logging
import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Mapping

import numpy as np

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import DomainError, ValidationError
from pylandauer.qstate import (PAULI, DensityOperator, QuantumChannel,
                               apply_channel)
from pylandauer.nmrsim.MoleculeSpec import MoleculeSpec

if TYPE_CHECKING:
    from pylandauer.heatstats.CharFn import CharFnTrace


__all__ = ['NoiseSpec', 'phase_damping_channel', 'phase_damping_evolution',
           'gradient_channel', 'pseudopure', 'decay_correction']


@dataclass(frozen=True, eq=False)
class NoiseSpec:
    """
    Phase damping parameters.

    Attributes
    ----------
    t2star_s : Mapping[str, float]
        Transversal relaxation time per qubit in s; qubits without an entry
        do not dephase.
    enabled : bool
        Switches the noise model on or off.
    readout_label : str
        Qubit whose coherence carries the interferometer signal.
    """
    t2star_s: Mapping[str, float] = field(default_factory=dict)
    enabled: bool = True
    readout_label: str = 'A'

    def __post_init__(self) -> None:
        times = {l: float(v) for l, v in dict(self.t2star_s).items()}
        for label, value in times.items():
            if not value > 0:
                raise ValidationError(f'T2* of qubit "{label}" must be '
                                      f'positive, got {value}')
        object.__setattr__(self, 't2star_s', MappingProxyType(times))

    @classmethod
    def from_molecule(cls, spec: MoleculeSpec, enabled: bool = True) \
            -> NoiseSpec:
        return cls(dict(spec.t2star_s), enabled, spec.ancilla)

    @classmethod
    def disabled(cls) -> NoiseSpec:
        return cls({}, enabled=False)

    @property
    def active(self) -> bool:
        return self.enabled and bool(self.t2star_s)

    def decay_factor(self, label: str, duration: float) -> float:
        """
        Returns exp(-t / T2*) of a qubit, 1 for noiseless qubits.
        """
        if duration < 0:
            raise DomainError(f'Duration must be >= 0, got {duration}')
        if not self.enabled or label not in self.t2star_s:
            return 1.0
        return math.exp(-duration / self.t2star_s[label])

    def envelope(self, durations: np.ndarray) -> np.ndarray:
        """
        Returns the decay of the readout coherence for each acquisition duration.
        """
        durations = np.asarray(durations, dtype=float)
        if not self.enabled or self.readout_label not in self.t2star_s:
            return np.ones_like(durations)
        return np.exp(-durations / self.t2star_s[self.readout_label])


def phase_damping_channel(label: str, decay: float) -> QuantumChannel:
    """
    Phase damping that multiplies the coherence of one qubit by `decay`.

    Kraus operators sqrt((1 + decay)/2) I and sqrt((1 - decay)/2) Z.
    """
    if not 0 <= decay <= 1:
        raise DomainError(f'Decay factor must lie in [0, 1], got {decay}')
    return QuantumChannel.on((label,), (
        math.sqrt((1 + decay) / 2) * PAULI['i'],
        math.sqrt((1 - decay) / 2) * PAULI['z'],
    ))


def phase_damping_evolution(state: DensityOperator, duration: float,
                            noise: NoiseSpec) -> DensityOperator:
    """
    Dephases every qubit of `state` for `duration` seconds.

    Commutes with free evolution under the Ising Hamiltonian, since both
    act diagonally on the coherences.
    """
    if duration < 0:
        raise DomainError(f'Duration must be >= 0, got {duration}')
    if duration == 0 or not noise.active:
        return state

    for label in state.labels:
        decay = noise.decay_factor(label, duration)
        if decay < 1.0:
            state = apply_channel(state, phase_damping_channel(label, decay))
    return state


def gradient_channel(qubits: Iterable[str]) -> QuantumChannel:
    """
    Complete dephasing of the given qubits.

    The Kraus operators are the computational basis projectors of the
    targeted qubits, so coherences between basis states that differ on any
    of them become exactly zero.

    Raises
    ------
    ValidationError
        If no qubit is given.
    """
    qubits = tuple(qubits)
    if not qubits:
        raise ValidationError('A gradient needs at least one qubit.')

    d = 2 ** len(qubits)
    projectors = []
    for index in range(d):
        projector = np.zeros((d, d), dtype=complex)
        projector[index, index] = 1.0
        projectors.append(projector)
    return QuantumChannel.on(qubits, projectors)


def pseudopure(rho_target: DensityOperator, epsilon: float) \
        -> DensityOperator:
    """
    Returns (1 - epsilon) I/d + epsilon rho_target.

    Raises
    ------
    DomainError
        If epsilon lies outside (0, 1].
    """
    if not 0 < epsilon <= 1:
        raise DomainError(f'Pseudopure polarization must lie in (0, 1], got '
                          f'{epsilon}')
    d = rho_target.dimension
    matrix = (1 - epsilon) * np.eye(d) / d + epsilon * rho_target.matrix
    return DensityOperator(rho_target.register, matrix)


def decay_correction(trace: CharFnTrace, noise: NoiseSpec) -> CharFnTrace:
    """
    Divides each sample of a characteristic function by its dephasing envelope.

    Samples whose envelope falls below `Tolerance.ENVELOPE_FLOOR` are not
    amplified: they keep their measured value and are flagged unreliable.

    Parameters
    ----------
    trace : CharFnTrace
        Measured trace with per-sample acquisition durations.
    noise : NoiseSpec
        The noise model the trace was acquired under.

    Returns
    -------
    CharFnTrace
        The corrected trace.
    """
    if not noise.enabled:
        return trace

    envelope = noise.envelope(trace.acquisition)
    reliable = envelope >= Tolerance.ENVELOPE_FLOOR
    values = np.where(reliable, trace.values / np.where(reliable, envelope, 1),
                      trace.values)

    flagged = int(np.sum(~reliable))
    if flagged:
        logging.warning(f'{flagged} of {len(values)} samples have a decay '
                        f'envelope below {Tolerance.ENVELOPE_FLOOR:g} and '
                        f'were left uncorrected')

    return replace(trace, values=values,
                   reliable=np.asarray(trace.reliable) & reliable)
