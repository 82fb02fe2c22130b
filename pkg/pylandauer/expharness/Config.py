"""
pylandauer.expharness.Config
============================

Experiment configuration of the sweeps.

A configuration file (JSON or YAML) may contain the keys

- `process`: 'cnot' or 'partial_swap'
- `temperatures_hz`: list of (beta*hbar)^-1 in Hz; `.inf` means beta = 0
- `alphas_rad`: list of preparation angles, an alternative to temperatures
- `phis_rad`: partial-swap angles
- `mode`: 'ideal' or 'pulse'
- `noise`: phase damping on or off
- `molecule`: path to a molecule description
- `gap_rad_s`: reservoir gap
- `samples`: characteristic function samples per gap period
- `workers`: threads for the sweep points
- `out`, `format`: report file and format

Keys that are missing take the defaults of `ExperimentConfig`.
"""

# Libs
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

# pylandauer
from pylandauer.gates import SWEEP_PHI_SET
from pylandauer.heatstats import InterferometerMode, TimeGrid
from pylandauer.io import ConfigFile, ReportFile
from pylandauer.msc.Errors import ConfigError, LandauerError
from pylandauer.nmrsim import MoleculeSpec, NoiseSpec
from pylandauer.thermo import ThermalReservoirSpec
from pylandauer.expharness.Fit import CNOT_TABLE, CNOT_TABLE_GAP


__all__ = ['Process', 'ExperimentConfig', 'SWAP_TEMPERATURES_HZ']


# Temperature of the partial-swap sweep if none is configured
SWAP_TEMPERATURES_HZ = (324.0,)


class Process(Enum):
    CNOT = 'cnot'
    PARTIAL_SWAP = 'partial_swap'

    @classmethod
    def parse(cls, process: 'Process | str') -> 'Process':
        if isinstance(process, cls):
            return process
        name = str(process).lower().replace('-', '_')
        if name == 'swap':
            name = 'partial_swap'
        try:
            return cls(name)
        except ValueError:
            raise ConfigError(f'Unknown process "{process}", expected one of '
                              f'{[p.value for p in cls]}') from None


def _floats(values: Any, key: str) -> tuple[float, ...]:
    if values is None:
        return ()
    if isinstance(values, (int, float, str)):
        values = [values]
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError) as e:
        raise ConfigError(f'"{key}" must be a list of numbers: {e}') from e


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything one sweep needs.

    Attributes
    ----------
    process : Process
        Interaction between system and reservoir.
    temperatures_hz : tuple[float, ...]
        (beta*hbar)^-1 values in Hz, positive; inf means beta = 0.
    alphas_rad : tuple[float, ...]
        Preparation angles in (0, pi/2], swept after the temperatures.
    phis_rad : tuple[float, ...]
        Partial-swap angles.
    mode : InterferometerMode
        Ideal gates or compiled pulse programs.
    noise : bool
        Phase damping during acquisition.
    molecule : Path or None
        Molecule description; the packaged one if None.
    gap_rad_s : float
        Reservoir gap.
    samples : int
        Characteristic function samples per gap period.
    workers : int
        Threads evaluating sweep points.
    out : Path or None
        Report file.
    format : str or None
        Report format; taken from the suffix of `out` if None.
    """
    process: Process = Process.CNOT
    temperatures_hz: tuple[float, ...] = ()
    alphas_rad: tuple[float, ...] = ()
    phis_rad: tuple[float, ...] = SWEEP_PHI_SET
    mode: InterferometerMode = InterferometerMode.IDEAL
    noise: bool = False
    molecule: Path | None = None
    gap_rad_s: float = CNOT_TABLE_GAP
    samples: int = 8
    workers: int = 1
    out: Path | None = None
    format: str | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'process', Process.parse(self.process))
        object.__setattr__(self, 'mode', InterferometerMode.parse(self.mode))
        object.__setattr__(self, 'temperatures_hz',
                           _floats(self.temperatures_hz, 'temperatures_hz'))
        object.__setattr__(self, 'alphas_rad',
                           _floats(self.alphas_rad, 'alphas_rad'))
        object.__setattr__(self, 'phis_rad',
                           _floats(self.phis_rad, 'phis_rad'))

        for f in self.temperatures_hz:
            if not f > 0:
                raise ConfigError(f'Temperatures must be > 0 Hz, got {f}')
        for alpha in self.alphas_rad:
            if not 0 < alpha <= math.pi / 2:
                raise ConfigError(f'Preparation angles must lie in '
                                  f'(0, pi/2], got {alpha}')
        for phi in self.phis_rad:
            if not math.isfinite(phi):
                raise ConfigError(f'Swap angles must be finite, got {phi}')
        if self.process is Process.PARTIAL_SWAP and not self.phis_rad:
            raise ConfigError('The partial-swap sweep needs at least one '
                              'angle.')
        if not (math.isfinite(self.gap_rad_s) and self.gap_rad_s > 0):
            raise ConfigError(f'Reservoir gap must be > 0, got '
                              f'{self.gap_rad_s}')
        if int(self.samples) != self.samples or self.samples < 3:
            raise ConfigError(f'At least 3 samples are needed, got '
                              f'{self.samples}')
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigError(f'At least one worker is needed, got '
                              f'{self.workers}')

        if self.molecule is not None:
            molecule = Path(self.molecule)
            if not molecule.is_file():
                raise ConfigError(f'Molecule file "{molecule.absolute()}" '
                                  f'not found.')
            object.__setattr__(self, 'molecule', molecule)
        if self.out is not None:
            object.__setattr__(self, 'out', Path(self.out))
        if self.format is not None or self.out is not None:
            try:
                object.__setattr__(self, 'format', ReportFile.infer_format(
                    self.out or f'report.{self.format}', self.format))
            except LandauerError as e:
                raise ConfigError(str(e)) from e

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], **overrides: Any) \
            -> 'ExperimentConfig':
        """
        Builds a configuration from a parsed file; `overrides` win over file values.

        Raises
        ------
        ConfigError
            If a key is unknown or a value is invalid.
        """
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f'Unknown configuration keys {unknown}')
        values = dict(data)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_file(cls, path: Path | str, **overrides: Any) \
            -> 'ExperimentConfig':
        return cls.from_mapping(ConfigFile(path).data, **overrides)

    def with_overrides(self, **overrides: Any) -> 'ExperimentConfig':
        return replace(self, **{k: v for k, v in overrides.items()
                                if v is not None})

    def reservoirs(self) -> list[ThermalReservoirSpec]:
        """
        Returns the reservoir of every sweep temperature.

        Without configured temperatures the CNOT sweep runs the table
        temperatures and the partial-swap sweep `SWAP_TEMPERATURES_HZ`.
        """
        temperatures = self.temperatures_hz
        if not temperatures and not self.alphas_rad:
            temperatures = tuple(float(row.beta_inv_hz)
                                 for row in CNOT_TABLE) \
                if self.process is Process.CNOT else SWAP_TEMPERATURES_HZ
        reservoirs = [ThermalReservoirSpec.from_beta_inv_hz(f, self.gap_rad_s)
                      for f in temperatures]
        reservoirs += [ThermalReservoirSpec.from_alpha(a, self.gap_rad_s)
                       for a in self.alphas_rad]
        return reservoirs

    def grid(self) -> TimeGrid:
        return TimeGrid.for_gap(self.gap_rad_s, n=self.samples)

    def load_molecule(self) -> MoleculeSpec:
        if self.molecule is None:
            return MoleculeSpec.default()
        return MoleculeSpec.from_file(self.molecule)

    def noise_spec(self, molecule: MoleculeSpec) -> NoiseSpec | None:
        return NoiseSpec.from_molecule(molecule) if self.noise else None
