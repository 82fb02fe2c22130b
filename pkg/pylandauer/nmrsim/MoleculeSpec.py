"""
pylandauer.nmrsim.MoleculeSpec
==============================

Physical parameters of the three-spin molecule.

A molecule description is a JSON or YAML file with the keys

- `qubits`: list of labels, e.g. [A, R, S]
- `offsets_hz`: label -> (omega_j - omega_A) / 2pi in Hz
- `couplings_hz`: "X-Y" -> J in Hz
- `t1_s`, `t2star_s`: label -> relaxation time in s

The package ships `molecules/trifluoroiodoethylene.yaml`, loaded by
`MoleculeSpec.default()`.
"""

# Libs
import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping

# pylandauer
from pylandauer.io import ConfigFile
from pylandauer.msc.Errors import ConfigError, LabelError, ValidationError
from pylandauer.qstate import QubitRegister, canonical_labels


__all__ = ['MoleculeSpec', 'DEFAULT_MOLECULE_FILE']


DEFAULT_MOLECULE_FILE = 'trifluoroiodoethylene.yaml'


def _pair(key: Any) -> tuple[str, str]:
    if isinstance(key, str):
        parts = tuple(p.strip() for p in key.split('-'))
    else:
        parts = tuple(key)
    if len(parts) != 2 or not all(parts):
        raise ConfigError(f'Coupling key "{key}" must name two qubits as '
                          f'"X-Y".')
    return canonical_labels(parts)  # type: ignore


@dataclass(frozen=True, eq=False)
class MoleculeSpec:
    """
    Offsets, couplings and relaxation times of an NMR spin system.

    Attributes
    ----------
    qubits : tuple[str, ...]
        Qubit labels in canonical order.
    offsets_hz : Mapping[str, float]
        Frequency offsets relative to the ancilla in Hz; the ancilla offset
        is zero.
    couplings_hz : Mapping[tuple[str, str], float]
        Scalar couplings J in Hz, keyed by label pairs in canonical order.
    t1_s, t2star_s : Mapping[str, float]
        Longitudinal and transversal relaxation times in s.
    name : str
        Name of the molecule.
    ancilla : str
        Label of the qubit that defines the rotating frame.
    """
    qubits: tuple[str, ...]
    offsets_hz: Mapping[str, float] = field(default_factory=dict)
    couplings_hz: Mapping[Any, float] = field(default_factory=dict)
    t1_s: Mapping[str, float] = field(default_factory=dict)
    t2star_s: Mapping[str, float] = field(default_factory=dict)
    name: str = ''
    ancilla: str = 'A'

    def __post_init__(self) -> None:
        register = QubitRegister(tuple(self.qubits))
        labels = register.labels
        object.__setattr__(self, 'qubits', labels)

        # Offsets; the ancilla defines the rotating frame
        offsets = {l: 0.0 for l in labels}
        for label, value in dict(self.offsets_hz).items():
            register.position(label)
            offsets[label] = float(value)
        if self.ancilla in offsets and offsets[self.ancilla] != 0:
            raise ValidationError(f'Ancilla "{self.ancilla}" must have zero '
                                  f'offset in its own rotating frame, got '
                                  f'{offsets[self.ancilla]} Hz')

        # Couplings, symmetric by construction
        couplings: dict[tuple[str, str], float] = {}
        for key, value in dict(self.couplings_hz).items():
            pair = _pair(key)
            if pair[0] == pair[1]:
                raise ValidationError(f'Self-coupling "{key}" is not '
                                      f'allowed.')
            for label in pair:
                register.position(label)
            if pair in couplings and couplings[pair] != float(value):
                raise ValidationError(f'Coupling {pair} given twice with '
                                      f'different values.')
            couplings[pair] = float(value)

        # Relaxation times
        for attr in ('t1_s', 't2star_s'):
            times = {l: float(v) for l, v in dict(getattr(self, attr)).items()}
            for label in labels:
                value = times.get(label)
                if value is None or not value > 0 or math.isnan(value):
                    raise ValidationError(f'{attr} of qubit "{label}" must be '
                                          f'positive, got {value}')
            object.__setattr__(self, attr, MappingProxyType(times))

        object.__setattr__(self, 'offsets_hz', MappingProxyType(offsets))
        object.__setattr__(self, 'couplings_hz', MappingProxyType(couplings))

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> 'MoleculeSpec':
        """
        Builds a spec from a parsed configuration dictionary.

        Raises
        ------
        ConfigError
            If a mandatory key is missing.
        """
        missing = [k for k in ('qubits', 't2star_s', 't1_s') if k not in data]
        if missing:
            raise ConfigError(f'Molecule description lacks {missing}')
        try:
            return cls(qubits=tuple(data['qubits']),
                       offsets_hz=data.get('offsets_hz') or {},
                       couplings_hz=data.get('couplings_hz') or {},
                       t1_s=data['t1_s'], t2star_s=data['t2star_s'],
                       name=str(data.get('name', '')),
                       ancilla=str(data.get('ancilla', 'A')))
        except (LabelError, ValidationError) as e:
            raise ConfigError(f'Invalid molecule description: {e}') from e

    @classmethod
    def from_file(cls, path: Path | str) -> 'MoleculeSpec':
        """
        Loads a molecule description from a JSON or YAML file.
        """
        spec = cls.from_mapping(ConfigFile(path).data)
        logging.info(f'Molecule "{spec.name or Path(path).stem}" with qubits '
                     f'{spec.qubits}')
        return spec

    @classmethod
    def default(cls) -> 'MoleculeSpec':
        """
        Loads the packaged trifluoroiodoethylene description.
        """
        source = resources.files('pylandauer.nmrsim') / 'molecules' \
            / DEFAULT_MOLECULE_FILE
        with resources.as_file(source) as path:
            return cls.from_file(path)

    @property
    def register(self) -> QubitRegister:
        return QubitRegister(self.qubits)

    def offset(self, label: str) -> float:
        self.register.position(label)
        return self.offsets_hz[label]

    def coupling(self, a: str, b: str) -> float:
        """
        Returns J_ab in Hz, zero for uncoupled pairs.
        """
        self.register.position(a)
        self.register.position(b)
        return self.couplings_hz.get(canonical_labels((a, b)), 0.0)

    def t2star(self, label: str) -> float:
        return self.t2star_s[label]
