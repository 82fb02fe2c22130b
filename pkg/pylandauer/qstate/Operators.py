"""
pylandauer.qstate.Operators
===========================

Immutable matrix carriers attached to a qubit register.

Classes:
- `Operator`: any square matrix on a register.
- `Observable`: Hermitian operator (Pauli observables, Hamiltonians).
- `UnitaryOperator`: gates and evolutions.
- `DensityOperator`: Hermitian, unit-trace, positive states.
- `QuantumChannel`: Kraus-form CPTP map on a sub-register.

Matrices are copied to complex arrays and made read-only on construction.
The defining invariant of each class is checked at construction time and a
violation raises `ValidationError`.
"""

# Libs
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import ShapeError, ValidationError
from pylandauer.qstate.Register import QubitRegister, reorder_matrix


__all__ = ['Operator', 'Observable', 'UnitaryOperator', 'DensityOperator',
           'QuantumChannel', 'hermiticity_error']


def _frozen_matrix(matrix: np.ndarray | Sequence) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    m.setflags(write=False)
    return m


def hermiticity_error(matrix: np.ndarray) -> float:
    """
    Largest entry of M - M^dagger relative to the largest entry of M (at least 1).
    """
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return float(np.max(np.abs(matrix - matrix.conj().T))) / scale


@dataclass(frozen=True, eq=False)
class Operator:
    """
    A square complex matrix on a qubit register.

    Attributes
    ----------
    register : QubitRegister
        Register the matrix acts on; factors follow its canonical order.
    matrix : np.ndarray
        Read-only 2^n x 2^n complex matrix.
    """
    register: QubitRegister
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.register, QubitRegister):
            object.__setattr__(self, 'register',
                               QubitRegister(tuple(self.register)))
        m = _frozen_matrix(self.matrix)
        d = self.register.dimension
        if m.shape != (d, d):
            raise ShapeError(f'{type(self).__name__} on {self.labels} needs '
                             f'a {d}x{d} matrix, got {m.shape}')
        object.__setattr__(self, 'matrix', m)
        self._validate()

    def _validate(self) -> None:
        pass

    @classmethod
    def on(cls, labels: Iterable[str], matrix: np.ndarray | Sequence):
        """
        Builds an operator from a matrix whose factors follow `labels` in the given order.

        Parameters
        ----------
        labels : Iterable[str]
            Factor order of `matrix`, e.g. ('S', 'R') for a CNOT with control S.
        matrix : np.ndarray or Sequence
            Operator matrix.

        Returns
        -------
        Operator
            Instance of `cls` with the matrix permuted into canonical order.
        """
        labels = tuple(labels)
        register = QubitRegister(labels)
        m = np.asarray(matrix, dtype=complex)
        return cls(register, reorder_matrix(m, labels, register.labels))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.register.labels

    @property
    def dimension(self) -> int:
        return self.register.dimension

    @property
    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T

    def is_hermitian(self, tol: float = Tolerance.HERMITICITY) -> bool:
        return hermiticity_error(self.matrix) <= tol


@dataclass(frozen=True, eq=False)
class Observable(Operator):
    """
    A Hermitian operator, dimensionless (Pauli) or in energy units (Hamiltonians, rad/s).
    """

    def _validate(self) -> None:
        if not self.is_hermitian():
            raise ValidationError(f'Observable on {self.labels} is not '
                                  f'Hermitian (error '
                                  f'{hermiticity_error(self.matrix):.3g})')


@dataclass(frozen=True, eq=False)
class UnitaryOperator(Operator):
    """
    An operator with U^dagger U = identity within `Tolerance.UNITARITY`.
    """

    def _validate(self) -> None:
        residual = self.dagger @ self.matrix - np.eye(self.dimension)
        error = float(np.max(np.abs(residual)))
        if error > Tolerance.UNITARITY:
            raise ValidationError(f'Operator on {self.labels} is not '
                                  f'unitary (error {error:.3g})')

    def adjoint(self) -> 'UnitaryOperator':
        return UnitaryOperator(self.register, self.dagger)

    def __matmul__(self, other: 'UnitaryOperator') -> 'UnitaryOperator':
        if self.register != other.register:
            raise ShapeError(f'Cannot multiply operators on {self.labels} '
                             f'and {other.labels}')
        return UnitaryOperator(self.register, self.matrix @ other.matrix)


@dataclass(frozen=True, eq=False)
class DensityOperator(Operator):
    """
    A quantum state: Hermitian, unit trace and positive semi-definite.

    Eigenvalues down to -`Tolerance.POSITIVITY` are accepted as round-off
    and are never clipped in the stored matrix.
    """

    def _validate(self) -> None:
        herm = hermiticity_error(self.matrix)
        if herm > Tolerance.HERMITICITY:
            raise ValidationError(f'State on {self.labels} is not Hermitian '
                                  f'(error {herm:.3g})')
        trace = complex(np.trace(self.matrix))
        if abs(trace - 1.0) > Tolerance.TRACE:
            raise ValidationError(f'State on {self.labels} has trace '
                                  f'{trace:.15g}')
        smallest = float(np.min(self.eigenvalues()))
        if smallest < -Tolerance.POSITIVITY:
            raise ValidationError(f'State on {self.labels} has negative '
                                  f'eigenvalue {smallest:.3g}')

    def eigenvalues(self) -> np.ndarray:
        """
        Returns the eigenvalues in ascending order.
        """
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """
    A completely positive trace preserving map in Kraus form.

    Attributes
    ----------
    register : QubitRegister
        Register the Kraus operators act on.
    kraus : tuple[np.ndarray, ...]
        Kraus operators with sum K^dagger K = identity.
    """
    register: QubitRegister
    kraus: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.register, QubitRegister):
            object.__setattr__(self, 'register',
                               QubitRegister(tuple(self.register)))
        d = self.register.dimension
        kraus = tuple(_frozen_matrix(k) for k in self.kraus)
        if not kraus:
            raise ValidationError('A channel needs at least one Kraus '
                                  'operator.')
        for k in kraus:
            if k.shape != (d, d):
                raise ShapeError(f'Kraus operator of shape {k.shape} does '
                                 f'not fit register {self.register.labels}')

        completeness = sum(k.conj().T @ k for k in kraus)
        error = float(np.max(np.abs(completeness - np.eye(d))))
        if error > Tolerance.COMPLETENESS:
            raise ValidationError(f'Kraus operators on '
                                  f'{self.register.labels} are not complete '
                                  f'(error {error:.3g})')
        object.__setattr__(self, 'kraus', kraus)

    @classmethod
    def on(cls, labels: Iterable[str], kraus: Iterable[np.ndarray]) \
            -> 'QuantumChannel':
        """
        Builds a channel from Kraus matrices whose factors follow `labels`.
        """
        labels = tuple(labels)
        register = QubitRegister(labels)
        return cls(register, tuple(
            reorder_matrix(np.asarray(k, dtype=complex), labels,
                           register.labels) for k in kraus))

    @classmethod
    def from_unitary(cls, unitary: UnitaryOperator) -> 'QuantumChannel':
        return cls(unitary.register, (unitary.matrix,))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.register.labels
