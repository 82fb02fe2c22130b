"""
pylandauer.msc.Tolerance
========================

Numerical tolerances used for invariant checks.

All values are absolute and apply to dimensionless quantities (matrix
entries of states and unitaries, probabilities, entropies in nats). Checks
on matrices carrying energy units scale them by the largest entry.
"""

HERMITICITY = 1e-12
TRACE = 1e-12
UNITARITY = 1e-12
COMPLETENESS = 1e-12

# Round-off negativity of eigenvalues and identity residuals
POSITIVITY = 1e-10
IDENTITY = 1e-10
EXPECTATION_IMAG = 1e-10

# Eigenvalues below this count as outside the support of a state
SUPPORT = 1e-14

PROCESS_DISTANCE = 1e-6
OFF_DIAGONAL = 1e-6

# Fourier reconstruction
PROBABILITY_CLIP = 1e-8
PROBABILITY_SUM = 1e-8
ATOM_FLOOR = 1e-14

# Decay correction
ENVELOPE_FLOOR = 1e-3

# Sweep checks
ENTROPY_CHANGE = 1e-12
HEAT_CONSISTENCY = 1e-8
PULSE_AGREEMENT = 1e-5
