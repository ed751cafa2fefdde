"""Quantum-logic state detection of a single trapped molecular ion.

Subpackages: spectro (line catalogs, ac-Stark shifts, scattering),
dynamics (classical crystal motion), thermometry (sideband Rabi
analysis), protocol (signal conversion and error budget), cli.
"""

__version__ = "0.1.0"
