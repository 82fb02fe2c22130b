"""
pylandauer.qstate.Register
==========================

Labeled qubit registers with a fixed canonical tensor order.

Every register orders its labels canonically: the ancilla `A` first, then
the reservoir `R`, then the system `S`, then any other labels
alphabetically. All matrices attached to a register use this order, so
composing factors in any argument order gives the same result.

The module also provides `reorder_matrix`, the single place where operator
matrices are permuted between label orders.
"""

# Libs
from dataclasses import dataclass
from typing import Iterable

import numpy as np

# pylandauer
from pylandauer.msc.Errors import LabelError, ShapeError


__all__ = ['CANONICAL_ORDER', 'QubitRegister', 'canonical_labels',
           'reorder_matrix']


CANONICAL_ORDER = ('A', 'R', 'S')


def _canonical_key(label: str) -> tuple[int, str]:
    if label in CANONICAL_ORDER:
        return CANONICAL_ORDER.index(label), label
    return len(CANONICAL_ORDER), label


def canonical_labels(labels: Iterable[str]) -> tuple[str, ...]:
    """
    Returns the labels sorted into canonical tensor order.
    """
    return tuple(sorted(labels, key=_canonical_key))


@dataclass(frozen=True, slots=True)
class QubitRegister:
    """
    An ordered set of qubit labels.

    Attributes
    ----------
    labels : tuple[str, ...]
        Unique labels; stored in canonical order regardless of the order
        they were given in.
    """
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise LabelError('A register needs at least one qubit.')
        if any(not isinstance(l, str) or not l for l in labels):
            raise LabelError(f'Qubit labels must be non-empty strings: '
                             f'{labels}')
        if len(set(labels)) != len(labels):
            raise LabelError(f'Duplicate qubit labels: {labels}')
        object.__setattr__(self, 'labels', canonical_labels(labels))

    @classmethod
    def of(cls, *labels: str) -> 'QubitRegister':
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def dimension(self) -> int:
        return 2 ** len(self.labels)

    def position(self, label: str) -> int:
        """
        Returns the tensor position of a label.

        Raises
        ------
        LabelError
            If the label is not part of the register.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f'Unknown qubit label "{label}" in register '
                             f'{self.labels}') from None

    def basis_index(self, label: str) -> int:
        """
        Index of the computational basis state with only `label` set to 1.
        """
        return 1 << (self.size - 1 - self.position(label))

    def subregister(self, labels: Iterable[str]) -> 'QubitRegister':
        """
        Returns the register of a label subset.

        Raises
        ------
        LabelError
            If a label is unknown.
        """
        labels = tuple(labels)
        for label in labels:
            self.position(label)
        return QubitRegister(labels)

    def union(self, other: 'QubitRegister') -> 'QubitRegister':
        return QubitRegister(tuple(set(self.labels) | set(other.labels)))

    def issubset(self, other: 'QubitRegister') -> bool:
        return set(self.labels) <= set(other.labels)

    def isdisjoint(self, other: 'QubitRegister') -> bool:
        return set(self.labels).isdisjoint(other.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)


def reorder_matrix(matrix: np.ndarray, from_labels: tuple[str, ...],
                   to_labels: tuple[str, ...]) -> np.ndarray:
    """
    Permutes the tensor factors of a square operator matrix.

    Parameters
    ----------
    matrix : np.ndarray
        2^n x 2^n matrix whose factors follow `from_labels`.
    from_labels : tuple[str, ...]
        Current factor order.
    to_labels : tuple[str, ...]
        Requested factor order (a permutation of `from_labels`).

    Returns
    -------
    np.ndarray
        The same operator with factors in `to_labels` order.
    """
    n = len(from_labels)
    if sorted(from_labels) != sorted(to_labels):
        raise LabelError(f'Cannot reorder {from_labels} into {to_labels}')
    if matrix.shape != (2 ** n, 2 ** n):
        raise ShapeError(f'Matrix of shape {matrix.shape} does not fit '
                         f'{n} qubits')
    if tuple(from_labels) == tuple(to_labels):
        return matrix

    # Row axes first, then column axes
    source = [from_labels.index(l) for l in to_labels]
    axes = source + [n + i for i in source]
    tensor = np.reshape(matrix, [2] * (2 * n))
    return np.reshape(np.transpose(tensor, axes), (2 ** n, 2 ** n))
