"""
pylandauer.expharness.Fit
=========================

Reservoir gap from the CNOT temperature table.

The energy gap of the reservoir qubit is not quoted with the measured data,
but every row of the table fixes it through Gamma = (x/2) tanh(x/2) with
x = gap / f and f = (beta*hbar)^-1 in Hz. Inverting each row gives one gap
estimate; a consistent table gives the same gap for every row.
"""

# Libs
import logging
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from scipy.optimize import brentq, curve_fit

# pylandauer
from pylandauer.msc.Errors import FitError
from pylandauer.thermo import cnot_heat_theory


__all__ = ['CnotTableRow', 'CNOT_TABLE', 'CNOT_TABLE_GAP', 'GAP_CONSISTENCY',
           'GapFit', 'invert_heat_theory', 'fit_reservoir_gap']


class CnotTableRow(NamedTuple):
    """
    One measured temperature of the CNOT experiment.

    Entropy production and beta <Q> carry their experimental errors; gamma
    is the theoretical beta <Q>.
    """
    beta_inv_hz: float
    sigma_exp: float
    sigma_err: float
    beta_q_exp: float
    beta_q_err: float
    gamma: float


CNOT_TABLE: tuple[CnotTableRow, ...] = (
    CnotTableRow(123, 3.2, 0.2, 3.3, 0.2, 3.3),
    CnotTableRow(185, 2.1, 0.1, 2.1, 0.1, 2.1),
    CnotTableRow(227, 1.64, 0.08, 1.66, 0.08, 1.67),
    CnotTableRow(274, 1.30, 0.06, 1.32, 0.07, 1.32),
    CnotTableRow(324, 1.03, 0.05, 1.04, 0.05, 1.05),
    CnotTableRow(383, 0.80, 0.04, 0.82, 0.04, 0.82),
    CnotTableRow(458, 0.61, 0.03, 0.62, 0.03, 0.63),
    CnotTableRow(550, 0.45, 0.02, 0.45, 0.02, 0.46),
    CnotTableRow(678, 0.31, 0.02, 0.31, 0.02, 0.32),
    CnotTableRow(862, 0.20, 0.01, 0.20, 0.01, 0.20),
    CnotTableRow(1168, 0.113, 0.006, 0.114, 0.006, 0.114),
    CnotTableRow(1775, 0.050, 0.002, 0.052, 0.003, 0.051),
    CnotTableRow(3573, 0.0128, 0.0006, 0.0171, 0.0009, 0.0126),
)

# Least-squares fit of the theory column on relative residuals (rad/s).
# Largest residual 1.86 % at 862 Hz.
CNOT_TABLE_GAP = 805.56

# Table values carry two to three significant digits
GAP_CONSISTENCY = 0.02


def invert_heat_theory(gamma: float) -> float:
    """
    Solves (x/2) tanh(x/2) = gamma for x >= 0.

    Raises
    ------
    FitError
        If gamma is negative or not finite.

    Examples
    --------
    >>> round(invert_heat_theory(cnot_heat_theory(2.0)), 12)
    2.0
    """
    if not (math.isfinite(gamma) and gamma >= 0):
        raise FitError(f'Heat ratio must be finite and >= 0, got {gamma}')
    if gamma == 0:
        return 0.0
    # (x/2) tanh(x/2) exceeds gamma at x = 2 (gamma + 1)
    return brentq(lambda x: cnot_heat_theory(x) - gamma, 0.0,
                  2 * (gamma + 1), xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _model(beta_inv_hz: np.ndarray, gap: float) -> np.ndarray:
    x = gap / beta_inv_hz
    return x / 2 * np.tanh(x / 2)


@dataclass(frozen=True, slots=True)
class GapFit:
    """
    Result of a gap fit.

    Attributes
    ----------
    gap : float
        Fitted gap in rad/s.
    residuals : tuple[float, ...]
        Relative residuals (model - Gamma) / Gamma per row.
    rows : tuple[tuple[float, float], ...]
        The (f in Hz, Gamma) rows used.
    row_gaps : tuple[float, ...]
        Gap obtained by inverting each row on its own.
    """
    gap: float
    residuals: tuple[float, ...]
    rows: tuple[tuple[float, float], ...]
    row_gaps: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals)

    @property
    def spread(self) -> float:
        """
        Largest relative deviation of a per-row gap from the fitted gap.
        """
        return max(abs(g - self.gap) / self.gap for g in self.row_gaps)

    @property
    def gap_hz(self) -> float:
        return self.gap / (2 * math.pi)

    def is_consistent(self, tolerance: float = GAP_CONSISTENCY) -> bool:
        return self.max_residual < tolerance


def fit_reservoir_gap(rows: Iterable[tuple[float, float]],
                      tolerance: float = GAP_CONSISTENCY) -> GapFit:
    """
    Fits the reservoir gap to (f, Gamma) rows.

    Every row is inverted on its own first; their median starts a weighted
    least-squares fit with relative residuals. Inconsistent rows do not
    raise, they are reported through `GapFit.is_consistent` and a warning.

    Parameters
    ----------
    rows : Iterable[tuple[float, float]]
        Pairs of (beta*hbar)^-1 in Hz and the measured or theoretical
        beta <Q>.
    tolerance : float, optional
        Largest relative residual of a consistent fit.

    Returns
    -------
    GapFit
        Fitted gap with per-row residuals.

    Raises
    ------
    FitError
        If no row is given, a row is invalid or the fit does not converge.

    Examples
    --------
    >>> fit = fit_reservoir_gap([(123, 3.3), (1775, 0.051)])
    >>> round(fit.gap, -1)
    810.0
    """
    rows = tuple((float(f), float(gamma)) for f, gamma in rows)
    if not rows:
        raise FitError('The gap fit needs at least one row.')
    for f, gamma in rows:
        if not (math.isfinite(f) and f > 0) or not gamma > 0:
            raise FitError(f'Invalid table row ({f}, {gamma}): temperature '
                           f'and heat ratio must be positive')

    frequencies = np.array([f for f, _ in rows])
    gammas = np.array([gamma for _, gamma in rows])
    row_gaps = np.array([invert_heat_theory(gamma) * f for f, gamma in rows])

    if len(rows) == 1:
        gap = float(row_gaps[0])
    else:
        try:
            popt, _ = curve_fit(_model, frequencies, gammas,
                                p0=[float(np.median(row_gaps))],
                                sigma=gammas)
        except (RuntimeError, ValueError) as e:
            residuals = (row_gaps / np.median(row_gaps) - 1).tolist()
            raise FitError(f'Gap fit did not converge: {e}', residuals) \
                from e
        gap = float(popt[0])

    residuals = (_model(frequencies, gap) - gammas) / gammas
    if not (math.isfinite(gap) and gap > 0):
        raise FitError(f'Gap fit returned {gap}', residuals.tolist())

    fit = GapFit(gap, tuple(residuals.tolist()), rows,
                 tuple(row_gaps.tolist()))
    logging.info(f'Fitted reservoir gap {gap:.6g} rad/s '
                 f'({fit.gap_hz:.6g} Hz) from {len(rows)} rows, max '
                 f'residual {fit.max_residual:.3%}')
    if not fit.is_consistent(tolerance):
        worst = int(np.argmax(np.abs(residuals)))
        logging.warning(f'Gap fit is inconsistent: row at {rows[worst][0]:g} '
                        f'Hz is off by {residuals[worst]:.2%}')
    return fit
