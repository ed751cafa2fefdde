"""Sideband Rabi flopping synthesis and thermal-occupation fits."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlsim.errors import DegenerateFitError, DomainError
from qlsim.thermometry import (
    FockDistribution,
    RabiTrace,
    SidebandCoupling,
    add_shot_noise,
    coherent_distribution,
    fit_nbar,
    lamb_dicke,
    rabi_frequency,
    synthesize_trace,
)


@pytest.fixture(scope="module")
def coupling():
    return SidebandCoupling(omega0=2 * math.pi * 71428.6, eta=0.1,
                            sideband="red")


@given(st.floats(min_value=0.01, max_value=40.0))
@settings(max_examples=40, deadline=None)
def test_coherent_distribution_normalized_with_right_mean(nbar):
    dist = coherent_distribution(nbar)
    p = dist.probs
    assert p.sum() == pytest.approx(1.0, abs=1e-6)
    mean = np.sum(np.arange(p.size) * p)
    assert mean == pytest.approx(nbar, rel=1e-3)


def test_coherent_distribution_zero():
    dist = coherent_distribution(0.0)
    assert dist.probs[0] == pytest.approx(1.0)
    assert dist.nbar == 0.0
    with pytest.raises(DomainError):
        coherent_distribution(-0.5)


def test_lamb_dicke_values():
    import scipy.constants as sc
    m = 40 * sc.atomic_mass
    w = 2 * math.pi * 690.2e3
    k = 2 * math.pi / 729e-9
    eta = lamb_dicke(k, m, w)
    assert eta == pytest.approx(
        k * math.sqrt(sc.hbar / (2 * m * w)), rel=1e-12)
    assert lamb_dicke(k, m, w, beta=0.5) == pytest.approx(0.5 * eta)
    with pytest.raises(DomainError):
        lamb_dicke(k, m, 0.0)


def test_rabi_frequency_explicit_laguerre():
    """Check couplings against the explicit low-order Laguerre polynomials."""
    omega0 = 2 * math.pi * 71428.6
    eta = 0.1
    pref = omega0 * math.exp(-eta**2 / 2)
    # n=0 has no red sideband
    assert rabi_frequency(0, omega0, eta, "red") == 0.0
    # L_0^1(x) = 1:       Omega_1,0 = pref * eta / sqrt(1)
    assert rabi_frequency(1, omega0, eta, "red") == pytest.approx(
        pref * eta, rel=1e-12)
    # L_1^1(x) = 2 - x:   Omega_2,1 = pref * eta * (2 - eta^2) / sqrt(2)
    assert rabi_frequency(2, omega0, eta, "red") == pytest.approx(
        pref * eta * (2 - eta**2) / math.sqrt(2), rel=1e-12)
    # carrier: L_2(x) = 1 - 2x + x^2/2
    x = eta**2
    assert rabi_frequency(2, omega0, eta, "carrier") == pytest.approx(
        pref * (1 - 2 * x + x**2 / 2), rel=1e-12)
    # blue sideband from n=0 couples through the same matrix element
    assert rabi_frequency(0, omega0, eta, "blue") == pytest.approx(
        pref * eta, rel=1e-12)
    with pytest.raises(DomainError):
        rabi_frequency(0, omega0, eta, "green")


def test_synthesize_trace_single_fock(coupling):
    """A pure Fock state flops sinusoidally at its own Rabi frequency."""
    dist = FockDistribution(np.array([0.0, 1.0]))
    times = np.linspace(0, 50e-6, 200)
    trace = synthesize_trace(dist, coupling, times)
    w1 = rabi_frequency(1, coupling.omega0, coupling.eta, "red")
    assert trace.excitation == pytest.approx(np.sin(w1 * times / 2) ** 2,
                                             abs=1e-12)


def test_detuned_flop_amplitude():
    omega0 = 2 * math.pi * 7e4
    eta = 0.1
    w1 = rabi_frequency(1, omega0, eta, "red")
    coupling = SidebandCoupling(omega0, eta, "red", detuning=w1)
    dist = FockDistribution(np.array([0.0, 1.0]))
    times = np.linspace(0, 100e-6, 800)
    trace = synthesize_trace(dist, coupling, times)
    assert trace.excitation.max() == pytest.approx(0.5, abs=0.01)


@pytest.mark.parametrize("nbar", [0.1, 1.0, 5.0, 20.0])
def test_noiseless_roundtrip(nbar, coupling):
    times = np.linspace(0, 200e-6, 101)
    trace = synthesize_trace(coherent_distribution(nbar), coupling, times)
    fit = fit_nbar(trace)
    assert fit.nbar == pytest.approx(nbar, rel=0.02)


def test_noisy_fit_coverage(coupling):
    """Fitted 1-sigma intervals cover the truth at a plausible rate."""
    nbar = 5.0
    times = np.linspace(0, 200e-6, 101)
    clean = synthesize_trace(coherent_distribution(nbar), coupling, times)
    hits = 0
    for seed in range(30):
        noisy = add_shot_noise(clean, shots=400, seed=seed)
        fit = fit_nbar(noisy)
        if abs(fit.nbar - nbar) <= fit.nbar_sigma:
            hits += 1
    assert hits >= 0.6 * 30


def test_shot_noise_deterministic(coupling):
    times = np.linspace(0, 100e-6, 40)
    clean = synthesize_trace(coherent_distribution(2.0), coupling, times)
    a = add_shot_noise(clean, shots=400, seed=11)
    b = add_shot_noise(clean, shots=400, seed=11)
    c = add_shot_noise(clean, shots=400, seed=12)
    assert np.array_equal(a.excitation, b.excitation)
    assert not np.array_equal(a.excitation, c.excitation)
    assert np.all((0 <= a.excitation) & (a.excitation <= 1))
    assert a.shots == 400
    with pytest.raises(DomainError):
        add_shot_noise(clean, shots=0, seed=1)


def test_degenerate_fit_rejected(coupling):
    # sampling only at t=0 gives the same model for every nbar
    with pytest.raises(DegenerateFitError):
        fit_nbar(RabiTrace(np.zeros(5), np.full(5, 0.3), coupling))
    with pytest.raises(DegenerateFitError):
        fit_nbar(RabiTrace(np.zeros(2), np.zeros(2), coupling))


def test_zero_temperature_fit(coupling):
    times = np.linspace(0, 200e-6, 101)
    trace = synthesize_trace(coherent_distribution(0.0), coupling, times)
    fit = fit_nbar(trace)
    assert fit.nbar == pytest.approx(0.0, abs=1e-3)
