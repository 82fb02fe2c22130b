"""
pylandauer.qstate.LinAlg
========================

Dense linear algebra on labeled operators.

Features:
- `tensor_compose` builds products on the union register, in canonical order.
- `embed` extends an operator with identities to a larger register.
- `partial_trace` reduces a state to a label subset.
- `evolve`, `apply_channel` and `expectation` act on density operators,
  embedding smaller operators automatically.
- `eigh`, `fidelity`, `trace_distance` and `process_distance` for checks.

All functions are pure: inputs are never modified.
"""

# Libs
import functools
from typing import Iterable, TypeVar

import numpy as np
import scipy.linalg

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import (CompositionError, LabelError, ShapeError,
                                   ValidationError)
from pylandauer.qstate.Operators import (DensityOperator, Observable,
                                         Operator, QuantumChannel,
                                         UnitaryOperator, hermiticity_error)
from pylandauer.qstate.Register import QubitRegister, reorder_matrix


__all__ = ['tensor_compose', 'embed', 'partial_trace', 'evolve',
           'apply_channel', 'expectation', 'eigh', 'fidelity',
           'trace_distance', 'process_distance']


OperatorT = TypeVar('OperatorT', bound=Operator)


def tensor_compose(*factors: OperatorT) -> OperatorT:
    """
    Tensor product of operators or states on disjoint registers.

    The result lives on the union register with factors arranged in
    canonical order, so `tensor_compose(rho_S, rho_R)` and
    `tensor_compose(rho_R, rho_S)` are identical.

    Parameters
    ----------
    *factors : Operator
        Operators with pairwise disjoint labels. A list may be passed as the
        single argument.

    Returns
    -------
    Operator
        Of the factors' common class, or `Operator` for mixed classes.

    Raises
    ------
    CompositionError
        If two factors share a label or no factor is given.

    Examples
    --------
    >>> rho = tensor_compose(maximally_mixed(['R']), maximally_mixed(['S']))
    >>> rho.labels
    ('R', 'S')
    """
    if len(factors) == 1 and not isinstance(factors[0], Operator):
        factors = tuple(factors[0])  # type: ignore
    if not factors:
        raise CompositionError('Nothing to compose.')

    labels: list[str] = []
    for factor in factors:
        overlap = set(labels) & set(factor.labels)
        if overlap:
            raise CompositionError(f'Factors share labels {sorted(overlap)}')
        labels.extend(factor.labels)

    matrix = functools.reduce(np.kron, [f.matrix for f in factors])
    cls = type(factors[0])
    if any(type(f) is not cls for f in factors):
        cls = Operator  # type: ignore
    return cls.on(labels, matrix)  # type: ignore


def embed(operator: Operator, register: QubitRegister) -> np.ndarray:
    """
    Returns the matrix of `operator` extended by identities to `register`.

    Raises
    ------
    ShapeError
        If the operator acts on labels outside the register.
    """
    if not operator.register.issubset(register):
        raise ShapeError(f'Operator on {operator.labels} does not fit '
                         f'register {register.labels}')
    if operator.register == register:
        return operator.matrix

    rest = tuple(l for l in register.labels if l not in operator.labels)
    matrix = np.kron(operator.matrix, np.eye(2 ** len(rest)))
    return reorder_matrix(matrix, operator.labels + rest, register.labels)


def _embed_kraus(channel: QuantumChannel, register: QubitRegister) \
        -> list[np.ndarray]:
    if not channel.register.issubset(register):
        raise ShapeError(f'Channel on {channel.labels} does not fit '
                         f'register {register.labels}')
    rest = tuple(l for l in register.labels if l not in channel.labels)
    identity = np.eye(2 ** len(rest))
    return [reorder_matrix(np.kron(k, identity), channel.labels + rest,
                           register.labels) for k in channel.kraus]


def partial_trace(state: DensityOperator, keep: Iterable[str]) \
        -> DensityOperator:
    """
    Reduces a state to the labels in `keep`.

    Parameters
    ----------
    state : DensityOperator
        Joint state.
    keep : Iterable[str]
        Non-empty subset of the state's labels.

    Returns
    -------
    DensityOperator
        The reduced state, in canonical order.

    Raises
    ------
    LabelError
        If a label is unknown or `keep` is empty.
    """
    kept = state.register.subregister(keep)
    if len(kept) == 0:
        raise LabelError('partial_trace needs at least one label to keep.')
    if kept == state.register:
        return state

    traced = tuple(l for l in state.labels if l not in kept.labels)
    order = kept.labels + traced
    dk, dt = kept.dimension, 2 ** len(traced)

    matrix = reorder_matrix(state.matrix, state.labels, order)
    tensor = np.reshape(matrix, (dk, dt, dk, dt))
    reduced = np.einsum('ajbj->ab', tensor)

    # Symmetrize against round-off
    return DensityOperator(kept, (reduced + reduced.conj().T) / 2)


def evolve(state: DensityOperator, unitary: UnitaryOperator) \
        -> DensityOperator:
    """
    Returns U rho U^dagger, embedding U with identities on the remaining labels.

    Raises
    ------
    ShapeError
        If U acts on labels the state does not have.
    """
    u = embed(unitary, state.register)
    rho = u @ state.matrix @ u.conj().T
    return DensityOperator(state.register, (rho + rho.conj().T) / 2)


def apply_channel(state: DensityOperator, channel: QuantumChannel) \
        -> DensityOperator:
    """
    Returns sum_k K rho K^dagger for the channel's Kraus operators.

    Raises
    ------
    ShapeError
        If the channel acts on labels the state does not have.
    """
    rho = sum(k @ state.matrix @ k.conj().T
              for k in _embed_kraus(channel, state.register))
    return DensityOperator(state.register, (rho + rho.conj().T) / 2)


def expectation(state: DensityOperator, observable: Operator) -> float:
    """
    Returns tr(rho O) for a Hermitian observable.

    Raises
    ------
    ValidationError
        If the observable is not Hermitian or the result is not real.
    """
    if not isinstance(observable, Observable):
        error = hermiticity_error(observable.matrix)
        if error > Tolerance.HERMITICITY:
            raise ValidationError(f'Observable on {observable.labels} is not '
                                  f'Hermitian (error {error:.3g})')

    value = complex(np.trace(state.matrix @ embed(observable,
                                                  state.register)))
    scale = max(1.0, float(np.max(np.abs(observable.matrix))))
    if abs(value.imag) > Tolerance.EXPECTATION_IMAG * scale:
        raise ValidationError(f'Expectation value has imaginary part '
                              f'{value.imag:.3g}')
    return value.real


def eigh(observable: Operator) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a Hermitian operator.

    Returns
    -------
    tuple[np.ndarray, np.ndarray]
        Eigenvalues in ascending order and the orthonormal eigenvectors as
        columns. Degenerate eigenspaces get an arbitrary orthonormal basis.
    """
    if not isinstance(observable, Observable):
        observable = Observable(observable.register, observable.matrix)
    values, vectors = scipy.linalg.eigh(observable.matrix)
    return values, vectors


def _require_same_register(a: Operator, b: Operator) -> None:
    if a.register != b.register:
        raise ShapeError(f'Operators live on different registers: '
                         f'{a.labels} and {b.labels}')


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    values, vectors = scipy.linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def fidelity(rho: DensityOperator, sigma: DensityOperator) -> float:
    """
    Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
    """
    _require_same_register(rho, sigma)
    root = _psd_sqrt(rho.matrix)
    inner = root @ sigma.matrix @ root
    values = scipy.linalg.eigvalsh((inner + inner.conj().T) / 2)
    return float(min(1.0, np.sum(np.sqrt(np.clip(values, 0.0, None))) ** 2))


def trace_distance(rho: DensityOperator, sigma: DensityOperator) -> float:
    """
    Half the trace norm of rho - sigma.
    """
    _require_same_register(rho, sigma)
    diff = rho.matrix - sigma.matrix
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def process_distance(u: Operator, v: Operator) -> float:
    """
    Returns 1 - |tr(U^dagger V)| / d, which is zero iff U and V agree up to a global phase.
    """
    _require_same_register(u, v)
    overlap = np.trace(u.matrix.conj().T @ v.matrix)
    return float(max(0.0, 1.0 - abs(overlap) / u.dimension))
