"""Off-resonant photon scattering from the lattice beams.

Rate convention: Einstein coefficients and every rate returned here are
events per second (1/s), while detunings and optical frequencies are
angular (rad/s). The paper-style anchors (85 kHz upper-state decay,
~300 uHz scattering) come out in 1/s under this convention.
"""

from __future__ import annotations

import math

import scipy.constants as sc

from qlsim.errors import ConfigError, DomainError, SingularityError
from qlsim.spectro.catalog import TransitionLine
from qlsim.spectro.stark import LatticeConfig, SINGULARITY_GUARD, _connected, _coupling_sq
from qlsim.spectro.states import MolecularConstants, RovibronicState

#: v'' range the decay-rate sum must cover
DECAY_SUM_V_LOWER = range(0, 6)


def upper_state_decay_rate(constants: MolecularConstants, v_upper: int) -> float:
    """Total decay rate of the A-state v_upper level, 1/s.

    Sum of the vibronic Einstein coefficients to v'' = 0..5; missing table
    entries are a configuration error.
    """
    missing = [v for v in DECAY_SUM_V_LOWER if (v_upper, v) not in constants.A_vib]
    if missing:
        raise ConfigError(
            f"A_vib table incomplete for v'={v_upper}: missing v''={missing}"
        )
    return sum(constants.A_vib[(v_upper, v)] for v in DECAY_SUM_V_LOWER)


def scattering_rate(
    state: RovibronicState,
    lattice: LatticeConfig,
    catalog: list[TransitionLine],
    constants: MolecularConstants,
) -> float:
    """Photon scattering rate of `state` (1/s) in the far-detuned limit."""
    i0 = lattice.peak_intensity
    if i0 == 0.0:
        return 0.0
    omega_laser = lattice.omega
    rate = 0.0
    for line in catalog:
        hit = _connected(state, line)
        if hit is None:
            continue
        partner, sign = hit
        if sign < 0:
            continue  # state is the upper partner; no excitation channel
        detuning = omega_laser - 2.0 * math.pi * line.frequency
        if abs(detuning) < SINGULARITY_GUARD * 2.0 * math.pi * line.einstein_A:
            raise SingularityError(
                f"detuning too close to {line.branch_label}({line.lower.J})"
            )
        mu_sq = _coupling_sq(state, partner, line, lattice)
        population = i0 * mu_sq / (2.0 * sc.epsilon_0 * sc.hbar**2 * sc.c * detuning**2)
        rate += upper_state_decay_rate(constants, partner.v) * population
    return rate


def scattering_probability(rate: float, exposure: float) -> float:
    """Probability of scattering at least one photon within `exposure` s."""
    if rate < 0 or exposure < 0:
        raise DomainError("rate and exposure must be >= 0")
    return -math.expm1(-rate * exposure)
