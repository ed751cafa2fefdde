"""Static properties of one- and two-ion linear crystals.

The trap is modelled as a common harmonic potential 1/2 kt x^2 per ion,
with kt fixed by a reference ion mass and its axial frequency. Mixed
crystals then get mass-dependent mode frequencies for free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.constants as sc

from qlsim.constants import MASS_CA
from qlsim.errors import DomainError

_COULOMB = sc.e**2 / (4.0 * math.pi * sc.epsilon_0)


@dataclass(frozen=True)
class CrystalConfig:
    """Axial trap plus one or two singly charged ions.

    omega_ref is the angular axial frequency a reference ion of mass
    m_ref would have; masses lists the actual crystal, ordered along
    the axis (index 0 sits at negative x).
    """

    masses: tuple  # kg, one or two entries
    omega_ref: float  # rad/s
    m_ref: float = MASS_CA  # kg

    def __post_init__(self):
        if len(self.masses) not in (1, 2):
            raise DomainError("only 1- and 2-ion crystals are supported")
        if any(m <= 0 for m in self.masses):
            raise DomainError("masses must be > 0")
        if self.omega_ref <= 0 or self.m_ref <= 0:
            raise DomainError("omega_ref and m_ref must be > 0")
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))

    @property
    def kt(self) -> float:
        """Trap spring constant m_ref omega_ref^2, N/m."""
        return self.m_ref * self.omega_ref**2

    @property
    def n_ions(self) -> int:
        return len(self.masses)

    def equilibrium_positions(self) -> np.ndarray:
        """Equilibrium x of each ion, m (ordered, index 0 negative)."""
        if self.n_ions == 1:
            return np.zeros(1)
        # solves kt x0 = coul/(2 x0)^2
        x0 = (_COULOMB / (4.0 * self.kt)) ** (1.0 / 3.0)
        return np.array([-x0, x0])

    def static_energy(self) -> float:
        """Potential energy at equilibrium, J (zero for a single ion)."""
        if self.n_ions == 1:
            return 0.0
        x = self.equilibrium_positions()
        return (
            0.5 * self.kt * float(x @ x)
            + _COULOMB / abs(x[1] - x[0])
        )

    def mode_frequencies(self) -> np.ndarray:
        """Axial normal-mode angular frequencies, ascending, rad/s."""
        w, _ = self.normal_modes()
        return w

    def normal_modes(self):
        """(omega, vectors): mass-weighted axial modes, ascending.

        vectors[:, i] is the i-th mass-weighted eigenvector (orthonormal);
        the physical displacement pattern is vectors[j, i] / sqrt(m_j).
        Phases are fixed so the lighter ion moves in +x.
        """
        if self.n_ions == 1:
            return (
                np.array([math.sqrt(self.kt / self.masses[0])]),
                np.ones((1, 1)),
            )
        m1, m2 = self.masses
        x = self.equilibrium_positions()
        c = 2.0 * _COULOMB / abs(x[1] - x[0]) ** 3  # equals kt for equal charges
        K = np.array([[self.kt + c, -c], [-c, self.kt + c]])
        sqm = np.sqrt(np.array([m1, m2]))
        A = K / np.outer(sqm, sqm)
        w2, vecs = np.linalg.eigh(A)
        if np.any(w2 <= 0):
            raise DomainError("crystal is not stable (non-positive mode)")
        light = int(np.argmin(self.masses))
        for i in range(2):
            if vecs[light, i] < 0:
                vecs[:, i] = -vecs[:, i]
        return np.sqrt(w2), vecs

    def mode_amplitude_coefficient(self, mode: int, ion: int) -> float:
        """Dimensionless participation beta of `ion` in `mode`.

        Defined so the ion's zero-point spread in that mode is
        beta * sqrt(hbar / (2 m_ion omega_mode)).
        """
        w, vecs = self.normal_modes()
        if not (0 <= mode < len(w)) or not (0 <= ion < self.n_ions):
            raise DomainError("mode/ion index out of range")
        return float(abs(vecs[ion, mode]))
