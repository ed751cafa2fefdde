import math

import pytest
import scipy.constants as sc

from qlsim.constants import MASS_CA, MASS_N2
from qlsim.dynamics import CrystalConfig
from qlsim.protocol import ProbeLaser
from qlsim.spectro import LatticeConfig, build_line_catalog, load_molecular_constants

OMEGA_T = 2.0 * math.pi * 641.15e3  # reference Ca+ axial frequency, rad/s


@pytest.fixture(scope="session")
def constants():
    return load_molecular_constants()


@pytest.fixture(scope="session")
def catalog20(constants):
    return build_line_catalog(constants, (2, 0), 10)


@pytest.fixture(scope="session")
def catalog31(constants):
    return build_line_catalog(constants, (3, 1), 10)


@pytest.fixture(scope="session")
def crystal_two():
    return CrystalConfig((MASS_N2, MASS_CA), OMEGA_T)


@pytest.fixture(scope="session")
def crystal_one():
    return CrystalConfig((MASS_CA,), OMEGA_T)


@pytest.fixture(scope="session")
def lattice_anchor():
    """Single-beam peak intensity 1e7 W/m^2 at 786.7 nm, pi polarized."""
    waist = 25e-6
    power = 1e7 * math.pi * waist**2 / 2.0
    return LatticeConfig(power=power, waist=waist, wavelength=786.7e-9)


@pytest.fixture(scope="session")
def lattice_fig5():
    return LatticeConfig(power=15e-3, waist=25e-6, wavelength=786.5e-9)


@pytest.fixture(scope="session")
def probe():
    return ProbeLaser(omega0=math.pi / 7e-6)
