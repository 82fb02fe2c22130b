"""
pylandauer.thermo.ThermalReservoir
==================================

Gibbs states and the two-level reservoir.

Units: hbar = k_B = 1. Energies and gaps are angular frequencies in rad/s,
inverse temperatures beta are in seconds. Temperatures quoted as
(beta*hbar)^-1 in Hz convert with beta = 1/f.

The reservoir qubit is prepared by a y rotation through alpha followed by
dephasing, which leaves populations cos^2(alpha/2) and sin^2(alpha/2).
Matching these to Boltzmann weights gives

    beta = log(cot^2(alpha/2)) / gap,     alpha = 2 atan(exp(-beta gap / 2)),

which is non-negative on the preparation range alpha in (0, pi/2].
"""

# Libs
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

# pylandauer
from pylandauer.msc.Errors import DomainError
from pylandauer.qstate import (DensityOperator, Observable, QubitRegister,
                               eigh)


__all__ = ['ZERO_TEMPERATURE', 'gibbs_state', 'beta_from_alpha',
           'alpha_from_beta', 'ThermalReservoirSpec']


# Flag value for beta in the zero-temperature limit
ZERO_TEMPERATURE = math.inf


def _check_beta(beta: float) -> None:
    if math.isnan(beta) or beta < 0:
        raise DomainError(f'Inverse temperature must be >= 0, got {beta}')


def gibbs_state(hamiltonian: Observable, beta: float) -> DensityOperator:
    """
    Returns exp(-beta H) / Z, evaluated in the eigenbasis of H.

    Parameters
    ----------
    hamiltonian : Observable
        Hermitian Hamiltonian in rad/s.
    beta : float
        Inverse temperature in s. `ZERO_TEMPERATURE` gives the (normalized)
        projector onto the ground space.

    Returns
    -------
    DensityOperator
        The thermal state, diagonal in the eigenbasis of H.

    Raises
    ------
    DomainError
        If beta is negative or NaN.
    """
    _check_beta(beta)
    energies, vectors = eigh(hamiltonian)
    shifted = energies - energies[0]

    if beta == 0:
        weights = np.ones_like(shifted)
    elif math.isinf(beta):
        scale = max(1.0, float(np.max(np.abs(energies))))
        weights = (shifted <= 1e-12 * scale).astype(float)
    else:
        weights = np.exp(-beta * shifted)

    populations = weights / weights.sum()
    matrix = (vectors * populations) @ vectors.conj().T
    return DensityOperator(hamiltonian.register,
                           (matrix + matrix.conj().T) / 2)


def beta_from_alpha(alpha: float, gap: float) -> float:
    """
    Inverse temperature prepared by a reservoir rotation through `alpha`.

    Parameters
    ----------
    alpha : float
        Rotation angle in rad, within (0, pi/2].
    gap : float
        Reservoir gap in rad/s.

    Returns
    -------
    float
        beta = log(cot^2(alpha/2)) / gap, never negative.

    Raises
    ------
    DomainError
        If alpha lies outside (0, pi/2] or the gap is not positive.
    """
    if not 0 < alpha <= math.pi / 2 + 1e-15:
        raise DomainError(f'alpha must lie in (0, pi/2], got {alpha}')
    if not gap > 0:
        raise DomainError(f'Reservoir gap must be positive, got {gap}')
    return max(0.0, -2.0 * math.log(math.tan(alpha / 2)) / gap)


def alpha_from_beta(beta: float, gap: float) -> float:
    """
    Rotation angle that prepares the Gibbs state at `beta`; inverse of beta_from_alpha.
    """
    _check_beta(beta)
    if not gap > 0:
        raise DomainError(f'Reservoir gap must be positive, got {gap}')
    if math.isinf(beta):
        return 0.0
    return 2.0 * math.atan(math.exp(-beta * gap / 2))


@dataclass(frozen=True, slots=True)
class ThermalReservoirSpec:
    """
    Two-level reservoir H_R = diag(0, gap) at inverse temperature beta.

    Attributes
    ----------
    gap : float
        Level spacing in rad/s.
    beta : float
        Inverse temperature in s; `ZERO_TEMPERATURE` is allowed.
    label : str
        Qubit label of the reservoir.
    """
    gap: float
    beta: float
    label: str = 'R'

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gap) and self.gap > 0):
            raise DomainError(f'Reservoir gap must be positive and finite, '
                              f'got {self.gap}')
        _check_beta(self.beta)

    @classmethod
    def from_beta_inv_hz(cls, beta_inv_hz: float, gap: float,
                         label: str = 'R') -> 'ThermalReservoirSpec':
        """
        Builds a reservoir from a temperature quoted as (beta*hbar)^-1 in Hz.

        An infinite value gives beta = 0.
        """
        if math.isnan(beta_inv_hz) or beta_inv_hz <= 0:
            raise DomainError(f'(beta*hbar)^-1 must be positive, got '
                              f'{beta_inv_hz}')
        return cls(gap, 1.0 / beta_inv_hz, label)

    @classmethod
    def from_alpha(cls, alpha: float, gap: float, label: str = 'R') \
            -> 'ThermalReservoirSpec':
        return cls(gap, beta_from_alpha(alpha, gap), label)

    @property
    def x(self) -> float:
        """
        Dimensionless gap beta * gap.
        """
        return math.inf if math.isinf(self.beta) else self.beta * self.gap

    @property
    def beta_inv_hz(self) -> float:
        return math.inf if self.beta == 0 else 1.0 / self.beta

    @property
    def energies(self) -> tuple[float, float]:
        return 0.0, self.gap

    @property
    def populations(self) -> tuple[float, float]:
        """
        Boltzmann populations (p0, p1) with p0 >= p1.
        """
        x = self.x
        if math.isinf(x):
            return 1.0, 0.0
        return float(expit(x)), float(expit(-x))

    @property
    def partition_function(self) -> float:
        return 1.0 + math.exp(-self.x)

    @property
    def alpha(self) -> float:
        return alpha_from_beta(self.beta, self.gap)

    @property
    def register(self) -> QubitRegister:
        return QubitRegister((self.label,))

    def hamiltonian(self) -> Observable:
        return Observable(self.register, np.diag([0.0, self.gap]))

    def state(self) -> DensityOperator:
        return gibbs_state(self.hamiltonian(), self.beta)
