"""Sideband Rabi thermometry on the shared motional mode.

Models the excitation dynamics of a two-level atom coupled to one
harmonic mode with Fock populations p_n, and fits a coherent-state
(Poissonian) distribution to measured red-sideband traces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.constants as sc
from scipy.special import eval_genlaguerre
from scipy.stats import poisson

from qlsim.errors import DegenerateFitError, DomainError

#: Fock-space truncation: keep states until the residual tail is below this
DEFAULT_TAIL = 1e-9

SIDEBANDS = ("red", "carrier", "blue")


@dataclass(frozen=True)
class FockDistribution:
    """Truncated population vector over Fock states 0..n_max."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("probs must be a non-empty 1D array")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-6:
            raise DomainError("probs must be non-negative and sum to 1")
        object.__setattr__(self, "probs", p / p.sum())

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    @property
    def nbar(self) -> float:
        return float(np.arange(self.probs.size) @ self.probs)


def coherent_distribution(nbar: float, tail: float = DEFAULT_TAIL) -> FockDistribution:
    """Poissonian Fock distribution of a coherent state with mean `nbar`."""
    if nbar < 0:
        raise DomainError("nbar must be >= 0")
    if not (0 < tail < 1):
        raise DomainError("tail must be in (0, 1)")
    if nbar == 0:
        return FockDistribution(np.array([1.0]))
    # smallest n_max with P(N > n_max) < tail
    n_max = int(poisson.isf(tail, nbar)) + 1
    p = poisson.pmf(np.arange(n_max + 1), nbar)
    return FockDistribution(p / p.sum())


def lamb_dicke(k: float, mass: float, omega: float, beta: float = 1.0) -> float:
    """Lamb-Dicke parameter k beta sqrt(hbar / (2 m omega))."""
    if k <= 0 or mass <= 0 or omega <= 0:
        raise DomainError("k, mass and omega must be > 0")
    return k * beta * math.sqrt(sc.hbar / (2.0 * mass * omega))


def rabi_frequency(n: int, omega0: float, eta: float, sideband: str = "red") -> float:
    """Coupling Rabi frequency from Fock state n on the given sideband.

    red: n -> n-1 (zero for n = 0), carrier: n -> n, blue: n -> n+1.
    All frequencies angular (rad/s).
    """
    if sideband not in SIDEBANDS:
        raise DomainError(f"sideband must be one of {SIDEBANDS}")
    if n < 0:
        raise DomainError("n must be >= 0")
    x = eta * eta
    pref = omega0 * math.exp(-0.5 * x)
    if sideband == "carrier":
        return pref * eval_genlaguerre(n, 0, x)
    if sideband == "red":
        if n == 0:
            return 0.0
        return pref * eta * eval_genlaguerre(n - 1, 1, x) / math.sqrt(n)
    return pref * eta * eval_genlaguerre(n, 1, x) / math.sqrt(n + 1)


@dataclass(frozen=True)
class SidebandCoupling:
    """Probe-laser coupling: bare Rabi frequency, Lamb-Dicke factor, target."""

    omega0: float  # rad/s
    eta: float
    sideband: str = "red"
    detuning: float = 0.0  # rad/s off the sideband resonance

    def __post_init__(self):
        if self.omega0 <= 0:
            raise DomainError("omega0 must be > 0")
        if not (0 < self.eta < 1):
            raise DomainError("eta must be in (0, 1) (Lamb-Dicke regime)")
        if self.sideband not in SIDEBANDS:
            raise DomainError(f"sideband must be one of {SIDEBANDS}")

    def rabi(self, n: int) -> float:
        return rabi_frequency(n, self.omega0, self.eta, self.sideband)


@dataclass(frozen=True)
class RabiTrace:
    """Excitation probability versus probe time."""

    times: np.ndarray  # s
    excitation: np.ndarray  # P_e in [0, 1]
    coupling: SidebandCoupling
    shots: int | None = None  # per-point shots if noise was added

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        p = np.asarray(self.excitation, dtype=float)
        if t.shape != p.shape or t.ndim != 1:
            raise DomainError("times and excitation must be equal-length 1D")
        if np.any(p < -1e-12) or np.any(p > 1 + 1e-12):
            raise DomainError("excitation must lie in [0, 1]")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "excitation", np.clip(p, 0.0, 1.0))


def synthesize_trace(
    dist: FockDistribution,
    coupling: SidebandCoupling,
    times,
) -> RabiTrace:
    """Noise-free excitation trace P_e(t) = sum_n p_n sin^2 dynamics."""
    t = np.asarray(times, dtype=float)
    if np.any(t < 0):
        raise DomainError("probe times must be >= 0")
    pe = np.zeros_like(t)
    d = coupling.detuning
    for n, p in enumerate(dist.probs):
        if p == 0.0:
            continue
        om = coupling.rabi(n)
        if om == 0.0 and d == 0.0:
            continue
        om_eff = math.hypot(om, d)
        if om_eff == 0.0:
            continue
        pe += p * (om / om_eff) ** 2 * np.sin(0.5 * om_eff * t) ** 2
    return RabiTrace(times=t, excitation=pe, coupling=coupling)


def add_shot_noise(trace: RabiTrace, shots: int, seed: int) -> RabiTrace:
    """Binomial projection noise with `shots` measurements per point."""
    if shots < 1:
        raise DomainError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    counts = rng.binomial(shots, trace.excitation)
    return RabiTrace(
        times=trace.times,
        excitation=counts / shots,
        coupling=trace.coupling,
        shots=shots,
    )


@dataclass(frozen=True)
class FitResult:
    nbar: float
    nbar_sigma: float
    residual: float  # rms of the best fit
    omega0: float  # rad/s actually used (co-fit or fixed)


def _trace_model(nbar, coupling, times, tail):
    return synthesize_trace(coherent_distribution(nbar, tail), coupling, times).excitation


def fit_nbar(
    trace: RabiTrace,
    nbar_max: float = 50.0,
    fit_omega0: bool = False,
    tail: float = 1e-7,
) -> FitResult:
    """Least-squares fit of a coherent distribution to a sideband trace.

    Scans nbar on a coarse grid, then refines by golden-section search.
    With fit_omega0 the bare Rabi frequency is co-fit (+-20% bracket).
    """
    t = trace.times
    y = trace.excitation
    if t.size < 3:
        raise DegenerateFitError("need at least 3 points to fit")

    om_grid = (
        np.linspace(0.8, 1.2, 17) * trace.coupling.omega0
        if fit_omega0
        else np.array([trace.coupling.omega0])
    )

    # with known shot counts use the binomial deviance, which carries an
    # absolute scale (delta = 1 marks the 1-sigma interval); otherwise plain
    # least squares with the noise level estimated from the residuals
    if trace.shots is not None:
        k_succ = y * trace.shots
        k_fail = trace.shots - k_succ

        def sq(nbar, om):
            c = SidebandCoupling(om, trace.coupling.eta,
                                 trace.coupling.sideband,
                                 trace.coupling.detuning)
            p = np.clip(_trace_model(nbar, c, t, tail), 1e-9, 1.0 - 1e-9)
            return float(-2.0 * (k_succ @ np.log(p) + k_fail @ np.log1p(-p)))
    else:

        def sq(nbar, om):
            c = SidebandCoupling(om, trace.coupling.eta,
                                 trace.coupling.sideband,
                                 trace.coupling.detuning)
            r = _trace_model(nbar, c, t, tail) - y
            return float(r @ r)

    grid = np.concatenate([[0.0], np.geomspace(0.01, nbar_max, 60)])
    best = None
    for om in om_grid:
        vals = np.array([sq(nb, om) for nb in grid])
        i = int(np.argmin(vals))
        if best is None or vals[i] < best[0]:
            best = (vals[i], i, om, vals)
    chi_min, i, om_best, vals = best
    if np.ptp(vals) < 1e-12 * max(1.0, chi_min):
        raise DegenerateFitError("objective is flat over the whole nbar range")

    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    if lo == hi:
        nb_best = lo
    else:
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c1 = b - invphi * (b - a)
        c2 = a + invphi * (b - a)
        f1, f2 = sq(c1, om_best), sq(c2, om_best)
        for _ in range(60):
            if f1 < f2:
                b, c2, f2 = c2, c1, f1
                c1 = b - invphi * (b - a)
                f1 = sq(c1, om_best)
            else:
                a, c1, f1 = c1, c2, f2
                c2 = a + invphi * (b - a)
                f2 = sq(c2, om_best)
            if b - a < 1e-6 * max(1.0, b):
                break
        nb_best = 0.5 * (a + b)
    chi_best = sq(nb_best, om_best)

    # curvature-based 1-sigma from the chi^2 parabola around the minimum
    h = max(1e-3, 1e-2 * max(nb_best, 1.0))
    chi_p = sq(nb_best + h, om_best)
    chi_m = sq(max(nb_best - h, 0.0), om_best)
    curv = (chi_p - 2 * chi_best + chi_m) / h**2
    if curv <= 0:
        sigma = math.inf
    elif trace.shots is not None:
        # absolute variances: delta chi^2 = 1 marks the 1-sigma interval
        sigma = math.sqrt(2.0 / curv)
    else:
        # unknown noise scale: estimate it from the residual per point
        dof = max(t.size - (2 if fit_omega0 else 1), 1)
        sigma = math.sqrt(max(2.0 * chi_best / dof / curv, 0.0))

    c_best = SidebandCoupling(om_best, trace.coupling.eta,
                              trace.coupling.sideband, trace.coupling.detuning)
    r_best = _trace_model(nb_best, c_best, t, tail) - y
    return FitResult(
        nbar=float(nb_best),
        nbar_sigma=float(sigma),
        residual=float(np.sqrt(np.mean(r_best**2))),
        omega0=float(om_best),
    )
