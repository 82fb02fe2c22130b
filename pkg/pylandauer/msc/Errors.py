"""
pylandauer.msc.Errors
=====================

Exception hierarchy shared by all sub-packages.

Every error raised on purpose by pylandauer derives from `LandauerError`, so
callers (the CLI in particular) can catch one type and report it. The
subclasses mirror the failure kinds of the simulation pipeline:

- register and operator construction (`CompositionError`, `LabelError`,
  `ShapeError`, `ValidationError`, `DomainError`)
- Landauer-process preconditions (`ProtocolError`)
- gate construction and pulse compilation (`GateError`, `CompilationError`,
  `CompensationError`)
- heat-statistics reconstruction (`ReconstructionError`)
- configuration, fitting, sweeps and report IO (`ConfigError`, `FitError`,
  `SweepError`, `ReportIOError`)

Spectral leakage is not an error: it is signalled with
`SpectralLeakageWarning` through the `warnings` module.
"""

from pathlib import Path
from typing import Any

import numpy as np


__all__ = [
    'LandauerError', 'CompositionError', 'LabelError', 'ShapeError',
    'ValidationError', 'DomainError', 'ProtocolError', 'GateError',
    'CompilationError', 'CompensationError', 'ReconstructionError',
    'ConfigError', 'FitError', 'SweepError', 'ReportIOError',
    'SpectralLeakageWarning'
]


class LandauerError(Exception):
    """
    Base class of all pylandauer errors.
    """


class CompositionError(LandauerError, ValueError):
    """
    Tensor factors share qubit labels.
    """


class LabelError(LandauerError, LookupError):
    """
    A qubit label is unknown to the register or a partition is malformed.
    """


class ShapeError(LandauerError, ValueError):
    """
    Matrix dimensions do not match the register they are attached to.
    """


class ValidationError(LandauerError, ValueError):
    """
    A state, operator or channel violates its defining invariant.
    """


class DomainError(LandauerError, ValueError):
    """
    A physical parameter lies outside its admissible range.
    """


class ProtocolError(LandauerError):
    """
    A Landauer-process precondition is violated.

    Parameters
    ----------
    message : str
        Human readable description.
    criterion : str
        The violated criterion: 'i' (system/reservoir split), 'ii'
        (uncorrelated initial state), 'iii' (Gibbs reservoir), 'iv' (unitary
        interaction) or 'interferometer'.
    """
    def __init__(self, message: str, criterion: str) -> None:
        super().__init__(f'criterion ({criterion}): {message}')
        self.criterion = criterion


class GateError(LandauerError, ValueError):
    """
    Unknown gate kind or invalid gate wiring.
    """


class CompilationError(LandauerError):
    """
    A gate cannot be turned into a pulse program for the given molecule.
    """


class CompensationError(CompilationError):
    """
    The residual of a compiled program is not a product of local z rotations.

    Parameters
    ----------
    message : str
        Human readable description.
    residual_generator : np.ndarray
        Hermitian generator G of the residual, L = exp(-iG).
    """
    def __init__(self, message: str, residual_generator: np.ndarray) -> None:
        super().__init__(message)
        self.residual_generator = residual_generator


class ReconstructionError(LandauerError):
    """
    Fourier inversion produced probabilities that are not round-off.

    Parameters
    ----------
    message : str
        Human readable description.
    diagnostics : dict[str, Any]
        Heat bins, raw bin values and grid metadata.
    """
    def __init__(self, message: str, diagnostics: dict[str, Any]) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics


class ConfigError(LandauerError):
    """
    Missing, unreadable or inconsistent configuration.
    """


class FitError(LandauerError):
    """
    The reservoir gap fit failed.

    Parameters
    ----------
    message : str
        Human readable description.
    residuals : list[float]
        Relative residuals per table row (empty if none were computed).
    """
    def __init__(self, message: str, residuals: list[float] | None = None) \
            -> None:
        super().__init__(message)
        self.residuals = residuals or []


class SweepError(LandauerError):
    """
    A row-level check of a sweep failed.

    Parameters
    ----------
    message : str
        Human readable description.
    temperature : float
        (beta*hbar)^-1 of the offending sweep point in Hz.
    phi : float or None
        Partial-swap angle of the offending point.
    """
    def __init__(self, message: str, temperature: float,
                 phi: float | None = None) -> None:
        where = f'T = {temperature:g} Hz'
        if phi is not None:
            where += f', phi = {phi:.6g}'
        super().__init__(f'{where}: {message}')
        self.temperature = temperature
        self.phi = phi


class ReportIOError(LandauerError, OSError):
    """
    A report or data file could not be written or read.

    Parameters
    ----------
    message : str
        Human readable description.
    path : Path or str
        The file involved.
    """
    def __init__(self, message: str, path: Path | str) -> None:
        super().__init__(f'{message} ({Path(path).absolute()})')
        self.path = Path(path)


class SpectralLeakageWarning(UserWarning):
    """
    The sampling grid does not fit an integer number of reservoir periods.
    """
