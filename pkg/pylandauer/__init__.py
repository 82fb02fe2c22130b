#  Copyright (c) 2025 Corvin Gröning
"""
pylandauer
==========

Density-matrix simulation of a three-qubit NMR test of Landauer's principle.

Sub-packages:
- `qstate`: labeled qubit registers, density operators and channels.
- `thermo`: Gibbs states, entropies, heat and entropy production.
- `gates`: ideal gate library and the ancilla interferometer.
- `nmrsim`: Ising Hamiltonian, pulse programs and the dephasing model.
- `heatstats`: two-point-measurement heat statistics and Fourier inversion.
- `expharness`: CNOT temperature and partial-swap sweeps, gap fit, reports and CLI.
"""

__version__ = '0.1.0'
