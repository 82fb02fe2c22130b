"""
Shared fixtures. Every randomized test draws from a seeded generator.
"""

import math

import numpy as np
import pytest

from pylandauer.expharness import CNOT_TABLE_GAP
from pylandauer.nmrsim import MoleculeSpec
from pylandauer.qstate import maximally_mixed
from pylandauer.thermo import ThermalReservoirSpec


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20251018)


@pytest.fixture
def gap() -> float:
    return CNOT_TABLE_GAP


@pytest.fixture
def reservoir_123(gap) -> ThermalReservoirSpec:
    """Coldest table temperature, x = beta * gap ~ 6.55."""
    return ThermalReservoirSpec.from_beta_inv_hz(123.0, gap)


@pytest.fixture
def reservoir_hot(gap) -> ThermalReservoirSpec:
    """beta = 0."""
    return ThermalReservoirSpec.from_beta_inv_hz(math.inf, gap)


@pytest.fixture
def mixed_system():
    return maximally_mixed(['S'])


@pytest.fixture(scope='session')
def molecule() -> MoleculeSpec:
    return MoleculeSpec.default()


@pytest.fixture
def molecule_file(tmp_path):
    """A small JSON molecule description with zero offsets."""
    path = tmp_path / 'molecule.json'
    path.write_text('{"qubits": ["A", "R", "S"],'
                    ' "offsets_hz": {"A": 0, "R": 0, "S": 0},'
                    ' "couplings_hz": {"R-S": 47.65, "A-R": 128.8,'
                    ' "A-S": 20.0},'
                    ' "t1_s": {"A": 5, "R": 5, "S": 5},'
                    ' "t2star_s": {"A": 0.15, "R": 0.15, "S": 0.15}}',
                    encoding='utf-8')
    return path
