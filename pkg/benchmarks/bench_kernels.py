"""Throughput comparison of the compiled and pure-Python RK4 kernels.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np
import scipy.constants as sc

from qlsim.constants import MASS_CA, MASS_N2
from qlsim.dynamics import _rk4py

try:
    from qlsim.dynamics import _rk4core
except ImportError:
    _rk4core = None

OMEGA_T = 2 * math.pi * 641.15e3
COULOMB = sc.e**2 / (4 * math.pi * sc.epsilon_0)


def bench_single(mod, nsteps, repeat):
    kt = MASS_CA * OMEGA_T**2
    dt = 2 * math.pi / OMEGA_T / 500
    stride = max(nsteps // 1000, 1)
    nsamp = nsteps // stride + 1
    xs, vs = np.empty(nsamp), np.empty(nsamp)
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        mod.rk4_single(MASS_CA, kt, 1e-25, 2 * 2 * math.pi / 786.5e-9,
                       OMEGA_T, 0.0, 0.0, 0.0, dt, nsteps, stride, xs, vs)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_two(mod, nsteps, repeat):
    kt = 40 * sc.atomic_mass * OMEGA_T**2
    x0 = (COULOMB / (4.0 * kt)) ** (1.0 / 3.0)
    dt = 2 * math.pi / OMEGA_T / 500
    stride = max(nsteps // 1000, 1)
    nsamp = nsteps // stride + 1
    outs = [np.empty(nsamp) for _ in range(4)]
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        mod.rk4_two(MASS_N2, MASS_CA, kt, COULOMB, 1e-25, 0.0,
                    2 * 2 * math.pi / 786.5e-9, OMEGA_T, 0.0,
                    -x0, 0.0, x0, 0.0, dt, nsteps, stride, *outs)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _rk4py)]
    if _rk4core is not None:
        backends.insert(0, ("cython", _rk4core))
    else:
        print("compiled kernel not available; benchmarking pure Python only")

    print(f"{args.steps:,} RK4 steps, best of {args.repeat}\n")
    print(f"{'kernel':<12} {'backend':<8} {'time':>10} {'steps/s':>12}")
    results = {}
    for kernel, fn in (("single-ion", bench_single), ("two-ion", bench_two)):
        for name, mod in backends:
            dt = fn(mod, args.steps, args.repeat)
            results[(kernel, name)] = dt
            print(f"{kernel:<12} {name:<8} {dt:>9.3f}s {args.steps / dt:>12.3e}")
    if _rk4core is not None:
        for kernel in ("single-ion", "two-ion"):
            ratio = results[(kernel, "python")] / results[(kernel, "cython")]
            print(f"\n{kernel}: compiled kernel is {ratio:.0f}x faster")


if __name__ == "__main__":
    main()
