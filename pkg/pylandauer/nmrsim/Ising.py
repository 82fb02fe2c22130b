"""
pylandauer.nmrsim.Ising
=======================

Free Hamiltonian of the spin system in the ancilla rotating frame:

    H = sum_j 2 pi nu_j I_z^j + sum_{j<k} 2 pi J_jk I_z^j I_z^k,    I_z = sigma_z / 2,

with offsets nu_j and couplings J_jk in Hz (hbar = 1, H in rad/s). The rf
term is not part of H: pulses are treated as instantaneous rotations.
"""

# Libs
import math
from itertools import combinations

import numpy as np

# pylandauer
from pylandauer.msc.Errors import DomainError
from pylandauer.qstate import Observable, UnitaryOperator
from pylandauer.nmrsim.MoleculeSpec import MoleculeSpec


__all__ = ['z_eigenvalues', 'ising_diagonal', 'ising_hamiltonian',
           'free_evolution']


def z_eigenvalues(n: int) -> np.ndarray:
    """
    Returns the sigma_z eigenvalues (+1 for |0>, -1 for |1>) of every basis state, shape (2^n, n).
    """
    index = np.arange(2 ** n)[:, None]
    shifts = np.arange(n - 1, -1, -1)[None, :]
    return 1 - 2 * ((index >> shifts) & 1)


def ising_diagonal(spec: MoleculeSpec) -> np.ndarray:
    """
    Returns the diagonal of the Ising Hamiltonian in rad/s.
    """
    labels = spec.qubits
    z = z_eigenvalues(len(labels)).astype(float)
    diagonal = np.zeros(2 ** len(labels))

    for j, label in enumerate(labels):
        diagonal += 2 * math.pi * spec.offset(label) * z[:, j] / 2
    for (j, a), (k, b) in combinations(enumerate(labels), 2):
        diagonal += 2 * math.pi * spec.coupling(a, b) * z[:, j] * z[:, k] / 4

    return diagonal


def ising_hamiltonian(spec: MoleculeSpec) -> Observable:
    """
    Returns the Ising Hamiltonian of the molecule, diagonal in the computational basis.
    """
    return Observable(spec.register, np.diag(ising_diagonal(spec)))


def free_evolution(spec: MoleculeSpec, duration: float) -> UnitaryOperator:
    """
    Returns U_0(t) = exp(-i H t) for a free evolution of `duration` seconds.

    Raises
    ------
    DomainError
        If the duration is negative.
    """
    if not (math.isfinite(duration) and duration >= 0):
        raise DomainError(f'Free evolution needs a duration >= 0, got '
                          f'{duration}')
    phases = np.exp(-1j * ising_diagonal(spec) * duration)
    return UnitaryOperator(spec.register, np.diag(phases))
