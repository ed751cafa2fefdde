"""State-dependent ac-Stark shifts and optical-dipole-force amplitudes.

The shift of a state is the perturbative sum over all catalog lines
connected to it, with a sign per line depending on whether the state is
the lower or the upper partner, evaluated at the peak intensity of a
single lattice beam.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.constants as sc

from qlsim.errors import DomainError, SingularityError
from qlsim.spectro.angular import wigner3j
from qlsim.spectro.catalog import TransitionLine
from qlsim.spectro.states import RovibronicState

# spherical basis vectors in the quantization frame (q = +1, 0, -1)
_C_PLUS = np.array([-1.0, 1.0j, 0.0]) / math.sqrt(2.0)
_C_ZERO = np.array([0.0, 0.0, 1.0])
_C_MINUS = np.array([1.0, 1.0j, 0.0]) / math.sqrt(2.0)

#: |detuning| below this multiple of the natural width is refused
SINGULARITY_GUARD = 1.0e6


def polarization_pi() -> np.ndarray:
    """Linear polarization along the quantization axis."""
    return np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class LatticeConfig:
    """Two counter-propagating beams forming a running 1D lattice."""

    power: float  # single-beam power, W
    waist: float  # 1/e^2 radius, m
    wavelength: float  # m
    polarization: np.ndarray = field(default_factory=polarization_pi)
    beat_frequency: float = 0.0  # rad/s
    phase_offset: float = 0.0  # rad
    quantization_axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        if self.power < 0 or self.waist <= 0 or self.wavelength <= 0:
            raise DomainError("power must be >= 0; waist and wavelength > 0")
        pol = np.asarray(self.polarization, dtype=complex)
        n = np.linalg.norm(pol)
        if abs(n - 1.0) > 1e-9:
            raise DomainError("polarization vector must have unit norm")
        axis = np.asarray(self.quantization_axis, dtype=float)
        if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
            raise DomainError("quantization axis must be a unit vector")
        object.__setattr__(self, "polarization", pol)
        object.__setattr__(self, "quantization_axis", axis)

    @property
    def peak_intensity(self) -> float:
        """Single-beam peak intensity 2P/(pi w0^2), W/m^2."""
        return 2.0 * self.power / (math.pi * self.waist**2)

    @property
    def k(self) -> float:
        """Laser wavevector, rad/m."""
        return 2.0 * math.pi / self.wavelength

    @property
    def omega(self) -> float:
        """Laser angular frequency, rad/s."""
        return 2.0 * math.pi * sc.c / self.wavelength

    @property
    def rayleigh_range(self) -> float:
        return math.pi * self.waist**2 / self.wavelength

    def check_rayleigh(self, excursion: float, factor: float = 50.0):
        """Warn when the plane-wave approximation gets marginal."""
        if self.rayleigh_range < factor * excursion:
            warnings.warn(
                f"Rayleigh range {self.rayleigh_range:.3g} m is not large against "
                f"the ion excursion {excursion:.3g} m",
                stacklevel=2,
            )

    def spherical_projection(self, q: int) -> complex:
        """c^(q) . polarization, in the frame of the quantization axis."""
        axis = self.quantization_axis
        # build an orthonormal frame (e1, e2, axis)
        seed = np.array([1.0, 0.0, 0.0])
        if abs(np.dot(seed, axis)) > 0.9:
            seed = np.array([0.0, 1.0, 0.0])
        e1 = seed - np.dot(seed, axis) * axis
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(axis, e1)
        pol_frame = np.array(
            [np.dot(self.polarization, e1), np.dot(self.polarization, e2),
             np.dot(self.polarization, axis)]
        )
        c = {1: _C_PLUS, 0: _C_ZERO, -1: _C_MINUS}[q]
        return complex(np.dot(c, pol_frame))


def _connected(state: RovibronicState, line: TransitionLine):
    """(partner, sign) if the line touches the state, else None.

    sign is +1 when the state is the lower partner (E_i < E_j).
    """
    key = state.level_key()
    if line.lower.level_key() == key:
        return line.upper, +1.0
    if line.upper.level_key() == key:
        return line.lower, -1.0
    return None


def _coupling_sq(state, partner, line, lattice) -> float:
    """|<j|mu|i>|^2 including the polarization and m_J geometry, (C m)^2."""
    if state.m_J is None:
        raise DomainError("ac-Stark shift needs a state with m_J set")
    total = 0.0
    for q in (-1, 0, 1):
        proj = lattice.spherical_projection(q)
        if abs(proj) < 1e-15:
            continue
        m_partner = state.m_J - q
        if abs(m_partner) > partner.J + 1e-9:
            continue
        amp = wigner3j(state.J, 1.0, partner.J, -state.m_J, q, m_partner)
        total += line.reduced_dipole_sq * (abs(proj) * amp) ** 2
    return total


def ac_stark_shift(
    state: RovibronicState,
    lattice: LatticeConfig,
    catalog: list[TransitionLine],
) -> float:
    """Signed ac-Stark shift (J) of `state` at single-beam peak intensity."""
    i0 = lattice.peak_intensity
    if i0 == 0.0:
        return 0.0
    omega_laser = lattice.omega
    shift = 0.0
    n_connected = 0
    for line in catalog:
        hit = _connected(state, line)
        if hit is None:
            continue
        partner, sign = hit
        n_connected += 1
        detuning = omega_laser - 2.0 * math.pi * line.frequency
        natural_width = 2.0 * math.pi * line.einstein_A
        if abs(detuning) < SINGULARITY_GUARD * natural_width:
            raise SingularityError(
                f"detuning {detuning:.3g} rad/s too close to line "
                f"{line.branch_label}({line.lower.J}) at {line.frequency:.6g} Hz"
            )
        mu_sq = _coupling_sq(state, partner, line, lattice)
        shift += sign * mu_sq / detuning
    if n_connected == 0:
        warnings.warn("state has no connected lines in the catalog; shift is 0")
        return 0.0
    return i0 / (2.0 * sc.epsilon_0 * sc.hbar * sc.c) * shift


def odf_amplitude(
    state: RovibronicState,
    lattice: LatticeConfig,
    catalog: list[TransitionLine],
) -> float:
    """Peak optical-dipole force 4 k |dE_ac,0| (N); sign via ac_stark_shift."""
    return 4.0 * lattice.k * abs(ac_stark_shift(state, lattice, catalog))


def odf_spectrum(
    state: RovibronicState,
    lattice: LatticeConfig,
    catalog: list[TransitionLine],
    wavelengths,
) -> list[tuple[float, float]]:
    """Per-wavelength ODF amplitude; singular points reported as NaN."""
    out = []
    for lam in wavelengths:
        cfg = replace(lattice, wavelength=float(lam))
        try:
            force = odf_amplitude(state, cfg, catalog)
        except SingularityError as exc:
            warnings.warn(f"singular point at {lam:.6g} m skipped: {exc}")
            force = math.nan
        out.append((float(lam), force))
    return out
