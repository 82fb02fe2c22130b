"""
pylandauer.thermo.Entropy
=========================

Information-theoretic functionals in nats.

Eigenvalues are clipped at zero only inside these functions (round-off can
make them slightly negative) and 0 log 0 is taken as 0.
"""

# Libs
import logging
import math
from typing import Iterable

import numpy as np
from scipy.special import entr

# pylandauer
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import LabelError, ShapeError
from pylandauer.qstate import DensityOperator, eigh, partial_trace


__all__ = ['von_neumann_entropy', 'binary_entropy', 'entropy_change',
           'relative_entropy', 'mutual_information']


def _entropy_of(values: np.ndarray) -> float:
    return float(np.sum(entr(np.clip(values, 0.0, None))))


def von_neumann_entropy(state: DensityOperator) -> float:
    """
    S(rho) = -tr(rho log rho) in nats.

    Examples
    --------
    >>> von_neumann_entropy(maximally_mixed(['S']))  # log 2
    0.6931471805599453
    """
    return _entropy_of(state.eigenvalues())


def binary_entropy(p: float) -> float:
    """
    Entropy of the distribution (p, 1 - p) in nats.
    """
    return _entropy_of(np.array([p, 1.0 - p]))


def entropy_change(before: DensityOperator, after: DensityOperator) -> float:
    """
    Entropy change Delta S = S(before) - S(after).

    Positive values mean information was erased from the system.

    Raises
    ------
    ShapeError
        If the states live on different registers.
    """
    if before.register != after.register:
        raise ShapeError(f'Cannot compare entropies of states on '
                         f'{before.labels} and {after.labels}')
    return von_neumann_entropy(before) - von_neumann_entropy(after)


def relative_entropy(x: DensityOperator, y: DensityOperator) -> float:
    """
    D(x||y) = -tr(x log y) - S(x) in nats.

    Returns
    -------
    float
        The relative entropy, or `math.inf` if the support of x is not
        contained in the support of y.

    Raises
    ------
    ShapeError
        If the states live on different registers.
    """
    if x.register != y.register:
        raise ShapeError(f'Cannot compare states on {x.labels} and '
                         f'{y.labels}')

    values, vectors = eigh(y)
    # Populations of x in the eigenbasis of y
    weights = np.real(np.einsum('ij,jk,ki->i', vectors.conj().T, x.matrix,
                                vectors))
    outside = values <= Tolerance.SUPPORT
    leaked = float(np.sum(weights[outside]))
    if leaked > Tolerance.POSITIVITY:
        logging.warning(f'Relative entropy diverges: {leaked:.3g} of the '
                        f'first state lies outside the support of the second')
        return math.inf

    cross = -float(np.sum(weights[~outside] * np.log(values[~outside])))
    return cross - von_neumann_entropy(x)


def mutual_information(joint: DensityOperator,
                       partition: tuple[Iterable[str], Iterable[str]]) \
        -> float:
    """
    I(a:b) = S(a) + S(b) - S(a:b) in nats.

    Parameters
    ----------
    joint : DensityOperator
        State of the union of both parts.
    partition : tuple[Iterable[str], Iterable[str]]
        Two disjoint, non-empty label sets covering the joint register.

    Raises
    ------
    LabelError
        If the partition does not split the joint register.
    """
    first, second = (tuple(part) for part in partition)
    if not first or not second or set(first) & set(second) \
            or set(first) | set(second) != set(joint.labels) \
            or len(first) + len(second) != joint.register.size:
        raise LabelError(f'{first} | {second} is not a partition of '
                         f'{joint.labels}')

    return (von_neumann_entropy(partial_trace(joint, first))
            + von_neumann_entropy(partial_trace(joint, second))
            - von_neumann_entropy(joint))
