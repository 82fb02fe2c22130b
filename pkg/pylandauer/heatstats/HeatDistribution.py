"""
pylandauer.heatstats.HeatDistribution
=====================================

Heat distributions of the two-point-measurement protocol.

The reservoir energy is measured before (outcome E_m) and after (E_n) the
process. The heat Q = E_n - E_m occurs with probability

    P(Q) = sum_{m,n} p_m p_{n|m} delta(Q - (E_n - E_m)),
    p_{n|m} = tr[(|n><n| (x) I) U (|m><m| (x) rho_S) U^dagger],

whose first moment is the average heat tr[H_R (rho_R' - rho_R)].
"""

# Libs
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple

import numpy as np

# pylandauer
from pylandauer.io import ReportFile
from pylandauer.msc import Tolerance
from pylandauer.msc.Errors import ValidationError
from pylandauer.qstate import (DensityOperator, Operator, basis_state, eigh,
                               evolve, partial_trace, tensor_compose)
from pylandauer.thermo import LandauerProcess, ThermalReservoirSpec


__all__ = ['Provenance', 'HeatDistribution', 'HeatMoments', 'heat_moments',
           'total_variation', 'tpm_distribution']


class Provenance(Enum):
    EXACT_TPM = 'exact-TPM'
    FOURIER = 'fourier-reconstructed'


def _merge_tolerance(q: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.max(np.abs(q)))) if q.size else 1e-9


def _cluster(q: np.ndarray, p: np.ndarray, tol: float) \
        -> tuple[np.ndarray, np.ndarray]:
    # Sum probabilities of heat values closer than tol
    order = np.argsort(q, kind='stable')
    q, p = q[order], p[order]
    merged_q: list[float] = []
    merged_p: list[float] = []
    for value, prob in zip(q, p):
        if merged_q and value - merged_q[-1] <= tol:
            merged_p[-1] += prob
        else:
            merged_q.append(float(value))
            merged_p.append(float(prob))
    return np.array(merged_q), np.array(merged_p)


@dataclass(frozen=True, eq=False)
class HeatDistribution:
    """
    A finite heat distribution.

    Attributes
    ----------
    q : np.ndarray
        Distinct heat values in rad/s, ascending.
    p : np.ndarray
        Probabilities of the heat values.
    provenance : Provenance
        Exact enumeration or Fourier reconstruction.
    leakage : float or None
        Bin detuning of a reconstruction from a leaking grid, else None.
    """
    q: np.ndarray
    p: np.ndarray
    provenance: Provenance = Provenance.EXACT_TPM
    leakage: float | None = None

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=float).reshape(-1)
        p = np.asarray(self.p, dtype=float).reshape(-1)
        if q.shape != p.shape or q.size == 0:
            raise ValidationError(f'Heat distribution needs matching, '
                                  f'non-empty q and p, got {q.shape} and '
                                  f'{p.shape}')
        order = np.argsort(q, kind='stable')
        q, p = q[order], p[order]
        if np.any(np.diff(q) <= 0):
            raise ValidationError('Heat values of a distribution must be '
                                  'distinct.')
        if np.min(p) < -Tolerance.POSITIVITY:
            raise ValidationError(f'Negative probability {np.min(p):.3g}')
        if abs(np.sum(p) - 1) > Tolerance.PROBABILITY_SUM:
            raise ValidationError(f'Probabilities sum to {np.sum(p):.12g}')
        q.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'p', p)

    @classmethod
    def from_atoms(cls, q: np.ndarray, p: np.ndarray,
                   provenance: Provenance = Provenance.EXACT_TPM,
                   leakage: float | None = None) -> 'HeatDistribution':
        """
        Builds a distribution from raw atoms, merging equal heat values and dropping empty atoms.
        """
        q = np.asarray(q, dtype=float).reshape(-1)
        p = np.asarray(p, dtype=float).reshape(-1)
        q, p = _cluster(q, p, _merge_tolerance(q))
        keep = p > Tolerance.ATOM_FLOOR
        if not np.any(keep):
            raise ValidationError('Heat distribution has no atoms.')
        return cls(q[keep], p[keep], provenance, leakage)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(q), float(p)) for q, p in zip(self.q, self.p)]

    def mean(self) -> float:
        return float(np.dot(self.q, self.p))

    def variance(self) -> float:
        return float(np.dot((self.q - self.mean()) ** 2, self.p))

    def probability_negative(self) -> float:
        """
        Returns P(Q < 0).
        """
        tol = _merge_tolerance(self.q)
        return float(np.sum(self.p[self.q < -tol]))

    def probability(self, q: float) -> float:
        """
        Returns the probability of the atom at `q`, zero if there is none.
        """
        tol = _merge_tolerance(self.q)
        return float(np.sum(self.p[np.abs(self.q - q) <= tol]))

    def write(self, path: Path | str, fmt: str | None = None) -> Path:
        """
        Writes the atoms as a table with columns q, p.
        """
        records = [{'q': q, 'p': p} for q, p in self.atoms]
        return ReportFile.write(path, ['q', 'p'], records, fmt)


class HeatMoments(NamedTuple):
    mean: float
    variance: float
    p_negative: float


def heat_moments(dist: HeatDistribution) -> HeatMoments:
    """
    Returns mean, variance and P(Q < 0) of a heat distribution.
    """
    return HeatMoments(dist.mean(), dist.variance(),
                       dist.probability_negative())


def total_variation(first: HeatDistribution,
                    second: HeatDistribution) -> float:
    """
    Total variation distance (1/2) sum_Q |P1(Q) - P2(Q)|, matching heat values up to round-off.
    """
    q = np.concatenate([first.q, second.q])
    signed = np.concatenate([first.p, -second.p])
    _, difference = _cluster(q, signed, _merge_tolerance(q))
    return float(0.5 * np.sum(np.abs(difference)))


def tpm_distribution(rho_S: DensityOperator, reservoir: ThermalReservoirSpec,
                     unitary: Operator) -> HeatDistribution:
    """
    Exact heat distribution of the two-point-measurement protocol.

    Parameters
    ----------
    rho_S : DensityOperator
        Initial system state.
    reservoir : ThermalReservoirSpec
        Reservoir gap, temperature and label.
    unitary : Operator
        System-reservoir interaction.

    Returns
    -------
    HeatDistribution
        Atoms at E_n - E_m with probabilities p_m p_{n|m}.

    Raises
    ------
    ProtocolError
        If the process violates one of the Landauer criteria.

    Examples
    --------
    >>> reservoir = ThermalReservoirSpec(805.56, 0.0)
    >>> tpm_distribution(maximally_mixed(['S']), reservoir, cnot('S', 'R')).p
    array([0.25, 0.5 , 0.25])
    """
    hamiltonian = reservoir.hamiltonian()
    process = LandauerProcess(hamiltonian, rho_S, reservoir.state(), unitary,
                              reservoir.beta)

    energies, vectors = eigh(hamiltonian)
    rho_r = process.reservoir_state.matrix
    q: list[float] = []
    p: list[float] = []

    for m, energy_m in enumerate(energies):
        p_m = float(np.real(vectors[:, m].conj() @ rho_r @ vectors[:, m]))
        if p_m <= 0:
            continue

        # Reservoir collapsed onto |r_m>
        projector = np.outer(vectors[:, m], vectors[:, m].conj())
        start = tensor_compose(
            DensityOperator(hamiltonian.register, projector), rho_S)
        after = partial_trace(evolve(start, process.unitary),
                              hamiltonian.labels).matrix

        for n, energy_n in enumerate(energies):
            p_nm = float(np.real(vectors[:, n].conj() @ after
                                 @ vectors[:, n]))
            q.append(float(energy_n - energy_m))
            p.append(p_m * p_nm)

    return HeatDistribution.from_atoms(np.array(q), np.array(p),
                                       Provenance.EXACT_TPM)
