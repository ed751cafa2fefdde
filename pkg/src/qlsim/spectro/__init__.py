"""Rovibronic line catalog, ac-Stark shifts, optical-dipole forces and
off-resonant scattering for the N2+ A-X (Meinel) system."""

from qlsim.spectro.angular import wigner3j
from qlsim.spectro.states import (
    RovibronicState,
    MolecularConstants,
    load_molecular_constants,
    default_constants_path,
)
from qlsim.spectro.honl_london import honl_london, BRANCHES, HL_SUM_CONVENTION
from qlsim.spectro.catalog import TransitionLine, build_line_catalog
from qlsim.spectro.stark import (
    LatticeConfig,
    ac_stark_shift,
    odf_amplitude,
    odf_spectrum,
)
from qlsim.spectro.scattering import (
    upper_state_decay_rate,
    scattering_rate,
    scattering_probability,
)

__all__ = [
    "wigner3j",
    "RovibronicState",
    "MolecularConstants",
    "load_molecular_constants",
    "default_constants_path",
    "honl_london",
    "BRANCHES",
    "HL_SUM_CONVENTION",
    "TransitionLine",
    "build_line_catalog",
    "LatticeConfig",
    "ac_stark_shift",
    "odf_amplitude",
    "odf_spectrum",
    "upper_state_decay_rate",
    "scattering_rate",
    "scattering_probability",
]
