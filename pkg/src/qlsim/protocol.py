"""Molecule-to-atom signal conversion, background model and shot budget.

Implements the six-step pipeline that maps a molecular optical-dipole
force acting on one ion of a two-ion crystal onto the equivalent force
on a single atomic ion, plus the discrimination metric and the
error-budget arithmetic around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.constants as sc

from qlsim.dynamics import (
    CrystalConfig,
    DriveSpec,
    StepControl,
    simulate_single,
    simulate_two,
)
from qlsim.errors import ConversionError, DomainError
from qlsim.spectro import LatticeConfig, ac_stark_shift
from qlsim.thermometry import (
    FitResult,
    RabiTrace,
    SidebandCoupling,
    coherent_distribution,
    fit_nbar,
    lamb_dicke,
    synthesize_trace,
)

#: default probe-time grid for synthesized sideband traces
DEFAULT_TIMES = np.linspace(0.0, 100e-6, 51)


@dataclass(frozen=True)
class ProbeLaser:
    """Logic-laser parameters for sideband thermometry on the atom."""

    omega0: float  # bare Rabi frequency, rad/s
    wavelength: float = 729e-9  # m
    sideband: str = "red"
    detuning: float = 0.0  # rad/s

    def __post_init__(self):
        if self.omega0 <= 0 or self.wavelength <= 0:
            raise DomainError("omega0 and wavelength must be > 0")

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    def coupling(self, eta: float) -> SidebandCoupling:
        return SidebandCoupling(self.omega0, eta, self.sideband, self.detuning)


@dataclass(frozen=True)
class ConversionResult:
    """Outcome of the two-ion to single-ion force conversion."""

    f_two: float  # molecular ODF on the two-ion crystal, N
    trace_two: RabiTrace  # predicted two-ion sideband signal
    nbar_one: float  # fitted with the single-ion Lamb-Dicke factor
    fit: FitResult
    f_one: float  # equivalent single-ion ODF, N
    stark_shift: float  # required single-beam |dE_ac,0|, J
    closure_rms: float  # rms(single-ion reconstruction - two-ion trace)
    intensity: float | None = None  # W/m^2, if a Stark coefficient was given

    def __post_init__(self):
        if self.f_two < 0 or self.f_one < 0 or self.nbar_one < 0:
            raise DomainError("forces and nbar must be >= 0")


def _mode_setup(crystal: CrystalConfig, probe: ProbeLaser, atom_index: int):
    """(omega_minus, eta_atom) for the in-phase mode of a two-ion crystal."""
    w, _ = crystal.normal_modes()
    beta = crystal.mode_amplitude_coefficient(0, atom_index)
    eta = lamb_dicke(probe.k, crystal.masses[atom_index], w[0], beta)
    return w[0], eta


def molecular_signal(
    state,
    lattice: LatticeConfig,
    crystal: CrystalConfig,
    catalog,
    t_odf: float,
    probe: ProbeLaser,
    times=None,
    molecule_index: int = 0,
    control: StepControl = StepControl(),
) -> RabiTrace:
    """Predicted atom sideband trace after an ODF pulse on the molecule.

    Steps 1-3: the lattice force on `state` drives the in-phase mode of
    the two-ion crystal for t_odf; the resulting mode energy is mapped
    to a coherent Fock distribution and probed on the atom sideband.
    """
    shift = ac_stark_shift(state, lattice, catalog)
    f_mol = 4.0 * lattice.k * shift  # signed peak force
    return driven_signal(f_mol, lattice, crystal, t_odf, probe,
                         times=times, molecule_index=molecule_index,
                         control=control)


def driven_signal(
    f_mol: float,
    lattice: LatticeConfig,
    crystal: CrystalConfig,
    t_odf: float,
    probe: ProbeLaser,
    times=None,
    molecule_index: int = 0,
    control: StepControl = StepControl(),
) -> RabiTrace:
    """Same as molecular_signal but with the peak force given directly."""
    if crystal.n_ions != 2:
        raise DomainError("the conversion pipeline needs a two-ion crystal")
    if times is None:
        times = DEFAULT_TIMES
    atom_index = 1 - molecule_index
    w_minus, eta2 = _mode_setup(crystal, probe, atom_index)
    beat = lattice.beat_frequency if lattice.beat_frequency != 0.0 else w_minus
    amplitudes = [0.0, 0.0]
    amplitudes[molecule_index] = f_mol
    drive = DriveSpec(tuple(amplitudes), 2.0 * lattice.k, beat,
                      lattice.phase_offset)
    if f_mol == 0.0:
        nbar = 0.0
    else:
        traj = simulate_two(crystal, drive, t_odf, control)
        energy = float(traj.mode_energy(0)[-1])
        nbar = energy / (sc.hbar * w_minus)
    dist = coherent_distribution(nbar)
    return synthesize_trace(dist, probe.coupling(eta2), times)


def _single_ion_energy(f1, crystal_one, drive_proto, t_odf, control):
    drive = DriveSpec((f1,), drive_proto.two_k, drive_proto.beat,
                      drive_proto.phase)
    traj = simulate_single(crystal_one, drive, t_odf, control)
    return float(traj.total_energy()[-1])


def convert_odf(
    f_two: float,
    crystal: CrystalConfig,
    lattice: LatticeConfig,
    t_odf: float,
    probe: ProbeLaser,
    times=None,
    molecule_index: int = 0,
    control: StepControl = StepControl(),
    stark_per_intensity: float | None = None,
    rel_tol: float = 1e-4,
) -> ConversionResult:
    """Steps 1-6: equivalent single-ion force for a molecular force f_two.

    Fits nbar_1 to the two-ion trace using the single-ion Lamb-Dicke
    factor, then bisects on log F for the single-ion force reproducing
    that mode energy, and finally inverts the ODF relation for the
    required single-beam ac-Stark shift.
    """
    if f_two < 0:
        raise DomainError("f_two must be >= 0")
    if times is None:
        times = DEFAULT_TIMES
    atom_index = 1 - molecule_index
    m_atom = crystal.masses[atom_index]
    trace_two = driven_signal(f_two, lattice, crystal, t_odf, probe,
                              times=times, molecule_index=molecule_index,
                              control=control)

    # step 4: interpret the trace as if it came from a single atom
    w_t = math.sqrt(crystal.kt / m_atom)
    eta1 = lamb_dicke(probe.k, m_atom, w_t)
    trace_for_fit = RabiTrace(trace_two.times, trace_two.excitation,
                              probe.coupling(eta1))
    crystal_one = CrystalConfig((m_atom,), w_t, m_ref=m_atom)
    drive_proto = DriveSpec((0.0,), 2.0 * lattice.k, w_t,
                            lattice.phase_offset)

    if f_two == 0.0:
        nbar_one = 0.0
        fit = FitResult(nbar=0.0, nbar_sigma=0.0, residual=0.0,
                        omega0=probe.omega0)
        f_one = 0.0
        closure = 0.0
    else:
        fit = fit_nbar(trace_for_fit)
        nbar_one = fit.nbar
        target = nbar_one * sc.hbar * w_t

        # step 5: bisection on log F around the equal-force guess. The
        # energy is only monotone in the small-oscillation regime, so
        # grow the bracket outward from the guess instead of straddling
        # the whole allowed range at once.
        if target == 0.0:
            f_one = 0.0
        else:
            f_cap_lo = 1e-3 * f_two
            f_cap_hi = 1e3 * f_two
            f = f_two
            e = _single_ion_energy(f, crystal_one, drive_proto, t_odf, control)
            if e < target:
                lo = f
                while e < target:
                    f *= 2.0
                    if f > f_cap_hi:
                        raise ConversionError(
                            f"no single-ion force below {f_cap_hi:.3e} N "
                            f"reaches the target energy {target:.3e} J"
                        )
                    lo = f / 2.0
                    e = _single_ion_energy(f, crystal_one, drive_proto,
                                           t_odf, control)
                hi = f
            else:
                hi = f
                while e > target:
                    f *= 0.5
                    if f < f_cap_lo:
                        raise ConversionError(
                            f"no single-ion force above {f_cap_lo:.3e} N "
                            f"stays below the target energy {target:.3e} J"
                        )
                    hi = f * 2.0
                    e = _single_ion_energy(f, crystal_one, drive_proto,
                                           t_odf, control)
                lo = f
            llo, lhi = math.log(lo), math.log(hi)
            f_one = f_two
            for _ in range(200):
                mid = 0.5 * (llo + lhi)
                f_one = math.exp(mid)
                e_mid = _single_ion_energy(f_one, crystal_one, drive_proto,
                                           t_odf, control)
                if abs(e_mid - target) <= rel_tol * target:
                    break
                if e_mid < target:
                    llo = mid
                else:
                    lhi = mid
            else:
                raise ConversionError("force bisection did not converge")

        # closure: reconstructed single-ion trace vs the two-ion trace
        e_one = _single_ion_energy(f_one, crystal_one, drive_proto, t_odf, control)
        dist = coherent_distribution(e_one / (sc.hbar * w_t))
        rebuilt = synthesize_trace(dist, probe.coupling(eta1), trace_two.times)
        closure = float(np.sqrt(np.mean(
            (rebuilt.excitation - trace_two.excitation) ** 2)))

    stark = f_one / (4.0 * lattice.k)
    intensity = None
    if stark_per_intensity is not None:
        if stark_per_intensity <= 0:
            raise DomainError("stark_per_intensity must be > 0")
        intensity = stark / stark_per_intensity
    return ConversionResult(
        f_two=f_two, trace_two=trace_two, nbar_one=nbar_one, fit=fit,
        f_one=f_one, stark_shift=stark, closure_rms=closure,
        intensity=intensity,
    )


def background_model(residual_nbar: float, coupling: SidebandCoupling,
                     times=None) -> RabiTrace:
    """Residual atom signal with the molecule dark (configurable nbar)."""
    if residual_nbar < 0:
        raise DomainError("residual_nbar must be >= 0")
    if times is None:
        times = DEFAULT_TIMES
    return synthesize_trace(coherent_distribution(residual_nbar), coupling, times)


@dataclass(frozen=True)
class Separation:
    """Distinguishability of two traces at a given shot count."""

    sigma: float  # max significance over the time grid
    time: float  # probe time where the maximum occurs, s
    shots: int


def distinguishability(a: RabiTrace, b: RabiTrace, shots: int = 400) -> Separation:
    """Max per-point separation |P_a - P_b| in combined binomial sigmas.

    Probabilities are clipped to the Laplace range [1/(shots+2),
    1 - 1/(shots+2)] before the sigma estimate, so saturated points do
    not produce infinite significance.
    """
    if shots < 1:
        raise DomainError("shots must be >= 1")
    if a.times.shape != b.times.shape or not np.allclose(a.times, b.times):
        raise DomainError("traces must share one probe-time grid")
    diff = np.abs(a.excitation - b.excitation)
    floor = 1.0 / (shots + 2)
    pa = np.clip(a.excitation, floor, 1.0 - floor)
    pb = np.clip(b.excitation, floor, 1.0 - floor)
    var = (pa * (1 - pa) + pb * (1 - pb)) / shots
    z = diff / np.sqrt(var)
    i = int(np.argmax(z))
    return Separation(sigma=float(z[i]), time=float(a.times[i]), shots=shots)


@dataclass(frozen=True)
class BudgetReport:
    """Shot-budget arithmetic for one detection scenario."""

    tau_chem: float  # s
    t_cycle: float  # s
    cycles: float  # expected cycles within one 1/e chemical lifetime
    per_pulse_scatter_p: float
    pulses_before_scatter: float
    shots_needed: float  # for the target discrimination significance
    target_sigma: float
    regime: str  # "chemistry-limited" or "scatter-limited"

    def __post_init__(self):
        if not (0 <= self.per_pulse_scatter_p <= 1):
            raise DomainError("per_pulse_scatter_p must be in [0, 1]")
        if min(self.tau_chem, self.t_cycle, self.cycles,
               self.pulses_before_scatter, self.shots_needed) < 0:
            raise DomainError("budget quantities must be nonnegative")

    def as_items(self):
        return [
            ("tau_chem_s", self.tau_chem),
            ("t_cycle_s", self.t_cycle),
            ("cycles", self.cycles),
            ("per_pulse_scatter_p", self.per_pulse_scatter_p),
            ("pulses_before_scatter", self.pulses_before_scatter),
            ("shots_needed", self.shots_needed),
            ("target_sigma", self.target_sigma),
            ("regime", self.regime),
        ]


def shot_budget(
    tau_chem: float,
    t_cycle: float,
    per_pulse_scatter_p: float,
    target_sigma: float = 5.0,
    per_shot_separation: float = 1.0,
) -> BudgetReport:
    """Cycles within the chemical lifetime vs pulses before a scatter.

    per_shot_separation is the single-shot significance of the signal
    difference (z-value per shot); shots_needed scales as its inverse
    square. The regime is chemistry-limited when the molecule is likely
    lost to chemistry before a photon is scattered.
    """
    if t_cycle <= 0:
        raise DomainError("t_cycle must be > 0")
    if tau_chem < 0:
        raise DomainError("tau_chem must be >= 0")
    if not (0 <= per_pulse_scatter_p <= 1):
        raise DomainError("per_pulse_scatter_p must be in [0, 1]")
    if target_sigma < 0 or per_shot_separation < 0:
        raise DomainError("target_sigma and per_shot_separation must be >= 0")
    cycles = tau_chem / t_cycle
    pulses = math.inf if per_pulse_scatter_p == 0 else 1.0 / per_pulse_scatter_p
    if per_shot_separation == 0:
        shots = math.inf
    else:
        shots = math.ceil((target_sigma / per_shot_separation) ** 2)
    regime = "chemistry-limited" if cycles <= pulses else "scatter-limited"
    return BudgetReport(
        tau_chem=tau_chem, t_cycle=t_cycle, cycles=cycles,
        per_pulse_scatter_p=per_pulse_scatter_p,
        pulses_before_scatter=pulses, shots_needed=shots,
        target_sigma=target_sigma, regime=regime,
    )
