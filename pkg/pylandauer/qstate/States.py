"""
pylandauer.qstate.States
========================

Constructors for common states and observables.

Features:
- Computational basis states, pure states and the maximally mixed state.
- Pauli observables on a single labeled qubit.
- Haar-random unitaries and random mixed states for property checks; both
  take an explicit `numpy.random.Generator` so results are reproducible.
"""

# Libs
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import unitary_group

# pylandauer
from pylandauer.msc.Errors import GateError, ShapeError
from pylandauer.qstate.Operators import (DensityOperator, Observable,
                                         UnitaryOperator)
from pylandauer.qstate.Register import QubitRegister


__all__ = ['PAULI', 'pauli', 'basis_state', 'pure_state', 'maximally_mixed',
           'random_density_operator', 'random_unitary']


PAULI: dict[str, np.ndarray] = {
    'i': np.eye(2, dtype=complex),
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in PAULI.values():
    _m.setflags(write=False)


def _register(labels: QubitRegister | Iterable[str]) -> QubitRegister:
    if isinstance(labels, QubitRegister):
        return labels
    if isinstance(labels, str):
        return QubitRegister((labels,))
    return QubitRegister(tuple(labels))


def pauli(kind: str, label: str) -> Observable:
    """
    Returns the Pauli observable sigma_kind on one qubit.

    Parameters
    ----------
    kind : str
        'x', 'y', 'z' or 'i' (case-insensitive).
    label : str
        Qubit label.
    """
    key = kind.lower()
    if key not in PAULI:
        raise GateError(f'Unknown Pauli kind "{kind}"')
    return Observable(QubitRegister((label,)), PAULI[key])


def basis_state(labels: QubitRegister | Iterable[str],
                bits: str | Sequence[int]) -> DensityOperator:
    """
    Returns the computational basis projector |bits><bits|.

    Bits follow the canonical order of the register.

    Examples
    --------
    >>> basis_state(['R', 'S'], '01').matrix[1, 1]
    (1+0j)
    """
    register = _register(labels)
    bits = [int(b) for b in bits]
    if len(bits) != register.size or any(b not in (0, 1) for b in bits):
        raise ShapeError(f'Bit string {bits} does not fit register '
                         f'{register.labels}')
    index = int(''.join(str(b) for b in bits), 2)
    matrix = np.zeros((register.dimension, register.dimension), dtype=complex)
    matrix[index, index] = 1.0
    return DensityOperator(register, matrix)


def pure_state(labels: QubitRegister | Iterable[str],
               vector: Sequence[complex]) -> DensityOperator:
    """
    Returns |psi><psi| for a (not necessarily normalized) vector.
    """
    register = _register(labels)
    psi = np.asarray(vector, dtype=complex).reshape(-1)
    if psi.shape != (register.dimension,):
        raise ShapeError(f'State vector of length {psi.size} does not fit '
                         f'register {register.labels}')
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ShapeError('State vector is zero.')
    psi = psi / norm
    return DensityOperator(register, np.outer(psi, psi.conj()))


def maximally_mixed(labels: QubitRegister | Iterable[str]) -> DensityOperator:
    register = _register(labels)
    return DensityOperator(register,
                           np.eye(register.dimension) / register.dimension)


def random_density_operator(labels: QubitRegister | Iterable[str],
                            rng: np.random.Generator,
                            rank: int | None = None) -> DensityOperator:
    """
    Draws a random mixed state G G^dagger / tr(G G^dagger) from a complex Ginibre matrix.

    Parameters
    ----------
    labels : QubitRegister or Iterable[str]
        Register of the state.
    rng : np.random.Generator
        Source of randomness.
    rank : int or None, optional
        Number of columns of G; full rank if omitted.
    """
    register = _register(labels)
    d = register.dimension
    k = rank or d
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho)
    return DensityOperator(register, (rho + rho.conj().T) / 2)


def random_unitary(labels: QubitRegister | Iterable[str],
                   rng: np.random.Generator) -> UnitaryOperator:
    """
    Draws a Haar-random unitary on the register.
    """
    register = _register(labels)
    matrix = unitary_group.rvs(register.dimension, random_state=rng)
    return UnitaryOperator(register, np.atleast_2d(matrix))
