"""Line catalog for one vibronic band of the A-X system."""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as sc

from qlsim.errors import DomainError
from qlsim.spectro.honl_london import _pi_mixing, honl_london
from qlsim.spectro.states import (
    MolecularConstants,
    RovibronicState,
    term_value,
)

_DJ = {"P": -1.0, "Q": 0.0, "R": 1.0}


@dataclass(frozen=True)
class TransitionLine:
    """One allowed rovibronic line (lower in X, upper in A)."""

    lower: RovibronicState
    upper: RovibronicState
    frequency: float  # Hz, cyclic
    branch_label: str
    honl_london: float
    reduced_dipole_sq: float  # (C m)^2
    einstein_A: float  # vibronic coefficient, 1/s

    def __post_init__(self):
        if self.frequency <= 0:
            raise DomainError("line frequency must be > 0")
        if self.honl_london < 0 or self.reduced_dipole_sq < 0:
            raise DomainError("line strengths must be >= 0")
        if abs(self.upper.J - self.lower.J) > 1 + 1e-9:
            raise DomainError("electric-dipole selection rule dJ in {-1,0,+1} violated")


def reduced_dipole_sq(omega: float, j_upper: float, s_hl: float, a_vib: float) -> float:
    """|<j| mu_red |i>|^2 from the vibronic Einstein coefficient.

    omega is the angular transition frequency (rad/s).
    """
    return (
        3.0 * sc.epsilon_0 * sc.h * sc.c**3 / (2.0 * omega**3)
        * (2.0 * j_upper + 1.0)
        * s_hl
        * a_vib
    )


def _omega_label(y: float, j_upper: float, fi_up: int) -> float:
    """Which |Omega| the fi-th eigenvalue correlates with (see states)."""
    z = j_upper * (j_upper + 1)
    h11 = -0.5 * y + (z + 0.25)
    h22 = 0.5 * y + (z - 1.75)
    half_is_lower = h11 < h22
    if (fi_up == 1) == half_is_lower:
        return 0.5
    return 1.5


def build_line_catalog(
    constants: MolecularConstants, band: tuple[int, int], n_max: int
) -> list[TransitionLine]:
    """All allowed lines of an (v_up, v_low) band with N'' <= n_max."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    v_up, v_low = band
    constants.require_band(v_up, v_low)
    a_vib = constants.A_vib[(v_up, v_low)]
    y = constants.A_so / constants.B[("A", v_up)]

    lines = []
    for n in range(n_max + 1):
        for j_lower in (n - 0.5, n + 0.5):
            if j_lower < 0.5:
                continue
            fi_lo = 1 if j_lower > n else 2
            lower = RovibronicState("X", v_low, j_lower, N=n)
            for dj_name, dj in _DJ.items():
                j_upper = j_lower + dj
                if j_upper < 0.5 - 1e-9:
                    continue
                for fi_up in (1, 2):
                    if _pi_mixing(y, j_upper, fi_up) is None:
                        continue
                    branch = f"{dj_name}{fi_up}{fi_lo}"
                    s_hl = honl_london(branch, j_lower, y=y)
                    omega_lbl = _omega_label(y, j_upper, fi_up)
                    upper = RovibronicState("A", v_up, j_upper, Omega=omega_lbl)
                    nu = term_value(constants, upper) - term_value(constants, lower)
                    if nu <= 0:
                        raise DomainError(
                            f"non-positive line frequency for {branch}({j_lower})"
                        )
                    lines.append(
                        TransitionLine(
                            lower=lower,
                            upper=upper,
                            frequency=nu,
                            branch_label=branch,
                            honl_london=s_hl,
                            reduced_dipole_sq=reduced_dipole_sq(
                                2.0 * math.pi * nu, j_upper, s_hl, a_vib
                            ),
                            einstein_A=a_vib,
                        )
                    )
    return lines
