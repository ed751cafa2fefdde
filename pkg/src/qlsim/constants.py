"""Physical constants (CODATA, via scipy) used throughout the package.

All internal rates and frequencies are angular (rad/s) unless a name says
otherwise; the CLI converts to Hz at the output boundary.
"""

from dataclasses import dataclass

import scipy.constants as _c


@dataclass(frozen=True)
class PhysicalConstants:
    epsilon0: float = _c.epsilon_0
    hbar: float = _c.hbar
    h: float = _c.h
    c: float = _c.c
    e: float = _c.e
    amu: float = _c.atomic_mass
    # vacuum wave impedance, sqrt(mu0/eps0)
    eta_impedance: float = _c.physical_constants["characteristic impedance of vacuum"][0]


CONST = PhysicalConstants()

# Ion masses used by the default scenarios (kg).
MASS_CA = 39.9625909 * CONST.amu
MASS_N2 = 28.0061448 * CONST.amu
