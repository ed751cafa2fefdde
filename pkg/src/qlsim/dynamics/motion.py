"""Classical motion of 1- and 2-ion crystals under a running-lattice force.

The driving force on ion i is -F_i sin(2k x_i - dw t + dphi) with F_i
the per-ion peak optical-dipole force (4 k |dE_ac|, signed by the shift).
Integration is fixed-step RK4 with the step tied to the fastest relevant
period.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
import scipy.constants as sc

from qlsim.dynamics import backend
from qlsim.dynamics.crystal import CrystalConfig
from qlsim.errors import DomainError, IntegrationError


@dataclass(frozen=True)
class DriveSpec:
    """Running-lattice drive: per-ion force amplitudes plus geometry.

    amplitudes are signed peak forces in N (one per ion; the sign carries
    the sign of the underlying ac-Stark shift). two_k is the lattice
    wavevector 2k in rad/m, beat the beam beat frequency dw in rad/s.
    """

    amplitudes: tuple  # N
    two_k: float  # rad/m
    beat: float  # rad/s
    phase: float = 0.0  # rad

    def __post_init__(self):
        if self.two_k <= 0:
            raise DomainError("two_k must be > 0")
        object.__setattr__(self, "amplitudes", tuple(float(a) for a in self.amplitudes))

    def force(self, ion: int, x: float, t: float) -> float:
        """Instantaneous lattice force on `ion` at (x, t), N."""
        return -self.amplitudes[ion] * math.sin(
            self.two_k * x - self.beat * t + self.phase
        )


@dataclass(frozen=True)
class StepControl:
    """Fixed-step integration control.

    steps_per_period divides the shortest period among the crystal modes
    and the beat note; max_samples caps the stored trajectory length.
    """

    steps_per_period: int = 2000
    max_samples: int = 4096

    def __post_init__(self):
        if self.steps_per_period < 16:
            raise DomainError("steps_per_period must be >= 16")
        if self.max_samples < 2:
            raise DomainError("max_samples must be >= 2")

    def time_step(self, crystal: CrystalConfig, drive: DriveSpec) -> float:
        omega_max = float(np.max(crystal.mode_frequencies()))
        if drive.beat != 0.0:
            omega_max = max(omega_max, abs(drive.beat))
        return 2.0 * math.pi / omega_max / self.steps_per_period


@dataclass(frozen=True)
class Trajectory:
    """Sampled phase-space history of a simulation run."""

    t: np.ndarray  # (nsamp,)
    x: np.ndarray  # (n_ions, nsamp)
    v: np.ndarray  # (n_ions, nsamp)
    crystal: CrystalConfig
    drive: DriveSpec
    dt: float  # integrator step actually used, s

    @property
    def duration(self) -> float:
        return float(self.t[-1])

    def mode_coordinates(self, mode: int):
        """(s, sdot): mass-weighted normal coordinate of `mode` over time."""
        w, vecs = self.crystal.normal_modes()
        if not (0 <= mode < len(w)):
            raise DomainError("mode index out of range")
        sqm = np.sqrt(np.array(self.crystal.masses))
        dx = self.x - self.crystal.equilibrium_positions()[:, None]
        s = (sqm * vecs[:, mode]) @ dx
        sdot = (sqm * vecs[:, mode]) @ self.v
        return s, sdot

    def mode_energy(self, mode: int) -> np.ndarray:
        """Energy in one normal mode over time, J (zero at equilibrium)."""
        w, _ = self.crystal.normal_modes()
        s, sdot = self.mode_coordinates(mode)
        return 0.5 * (sdot**2 + (w[mode] * s) ** 2)

    def total_energy(self) -> np.ndarray:
        """Total mechanical energy above the equilibrium value, J."""
        ms = np.array(self.crystal.masses)[:, None]
        kin = 0.5 * np.sum(ms * self.v**2, axis=0)
        pot = 0.5 * self.crystal.kt * np.sum(self.x**2, axis=0)
        if self.crystal.n_ions == 2:
            coul = sc.e**2 / (4.0 * math.pi * sc.epsilon_0)
            pot = pot + coul / np.abs(self.x[0] - self.x[1])
        return kin + pot - self.crystal.static_energy()

    def to_csv(self, path):
        """Write t, x_i, v_i columns (SI units) to `path`."""
        n = self.crystal.n_ions
        header = ["t_s"]
        header += [f"x{i}_m" for i in range(n)]
        header += [f"v{i}_m_per_s" for i in range(n)]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for j in range(len(self.t)):
                row = [f"{self.t[j]:.9e}"]
                row += [f"{self.x[i, j]:.9e}" for i in range(n)]
                row += [f"{self.v[i, j]:.9e}" for i in range(n)]
                writer.writerow(row)


def _plan(duration, dt, max_samples):
    if duration <= 0:
        raise DomainError("duration must be > 0")
    nsteps = max(1, int(math.ceil(duration / dt)))
    stride = max(1, nsteps // max_samples)
    nsamp = nsteps // stride + 1
    return nsteps, stride, nsamp


def simulate_single(
    crystal: CrystalConfig,
    drive: DriveSpec,
    duration: float,
    control: StepControl = StepControl(),
    x0: float = 0.0,
    v0: float = 0.0,
) -> Trajectory:
    """Integrate one driven ion for `duration` seconds."""
    if crystal.n_ions != 1 or len(drive.amplitudes) != 1:
        raise DomainError("simulate_single needs a 1-ion crystal and 1 amplitude")
    dt = control.time_step(crystal, drive)
    nsteps, stride, nsamp = _plan(duration, dt, control.max_samples)
    xs = np.empty(nsamp)
    vs = np.empty(nsamp)
    backend.rk4_single(
        crystal.masses[0], crystal.kt, drive.amplitudes[0], drive.two_k,
        drive.beat, drive.phase, x0, v0, dt, nsteps, stride, xs, vs,
    )
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(vs))):
        raise IntegrationError("non-finite state in single-ion integration")
    t = np.arange(nsamp) * (stride * dt)
    return Trajectory(t=t, x=xs[None, :], v=vs[None, :],
                      crystal=crystal, drive=drive, dt=dt)


def simulate_two(
    crystal: CrystalConfig,
    drive: DriveSpec,
    duration: float,
    control: StepControl = StepControl(),
    offsets=(0.0, 0.0),
    velocities=(0.0, 0.0),
) -> Trajectory:
    """Integrate a two-ion crystal; offsets are relative to equilibrium."""
    if crystal.n_ions != 2 or len(drive.amplitudes) != 2:
        raise DomainError("simulate_two needs a 2-ion crystal and 2 amplitudes")
    dt = control.time_step(crystal, drive)
    nsteps, stride, nsamp = _plan(duration, dt, control.max_samples)
    eq = crystal.equilibrium_positions()
    coul = sc.e**2 / (4.0 * math.pi * sc.epsilon_0)
    xs1 = np.empty(nsamp)
    vs1 = np.empty(nsamp)
    xs2 = np.empty(nsamp)
    vs2 = np.empty(nsamp)
    crossed = backend.rk4_two(
        crystal.masses[0], crystal.masses[1], crystal.kt, coul,
        drive.amplitudes[0], drive.amplitudes[1], drive.two_k,
        drive.beat, drive.phase,
        eq[0] + offsets[0], velocities[0], eq[1] + offsets[1], velocities[1],
        dt, nsteps, stride, xs1, vs1, xs2, vs2,
    )
    if crossed >= 0:
        raise IntegrationError(
            f"ions crossed at t = {crossed * dt:.3e} s; "
            "the 1D ordered-crystal model broke down"
        )
    x = np.vstack([xs1, xs2])
    v = np.vstack([vs1, vs2])
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
        raise IntegrationError("non-finite state in two-ion integration")
    t = np.arange(nsamp) * (stride * dt)
    return Trajectory(t=t, x=x, v=v, crystal=crystal, drive=drive, dt=dt)


def energy_to_nbar(energy: float, omega: float) -> float:
    """Mean phonon number of a mode holding `energy` J at `omega` rad/s."""
    if omega <= 0:
        raise DomainError("omega must be > 0")
    if energy < 0:
        raise DomainError("energy must be >= 0")
    return energy / (sc.hbar * omega)


def convergence_defect(
    crystal: CrystalConfig,
    drive: DriveSpec,
    duration: float,
    control: StepControl = StepControl(),
) -> float:
    """Relative energy change when the step is halved (RK4 sanity check).

    Runs the appropriate simulation twice, once at the requested step and
    once at twice the resolution, and compares final total energies.
    """
    fine = StepControl(steps_per_period=2 * control.steps_per_period,
                       max_samples=control.max_samples)
    sim = simulate_single if crystal.n_ions == 1 else simulate_two
    e1 = float(sim(crystal, drive, duration, control).total_energy()[-1])
    e2 = float(sim(crystal, drive, duration, fine).total_energy()[-1])
    scale = max(abs(e1), abs(e2), 1e-300)
    return abs(e1 - e2) / scale
