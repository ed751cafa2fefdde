"""Pure-Python RK4 kernels; reference implementation and import fallback.

Same signatures and semantics as the compiled module. Plain-float inner
loops: correct but roughly two orders of magnitude slower.
"""

from __future__ import annotations

import math

BACKEND = "python"


def rk4_single(m, kt, f0, twok, dw, dphi, x0, v0, dt, nsteps, stride, xs, vs):
    """Integrate m x'' = -kt x - f0 sin(twok x - dw t + dphi).

    Samples (x, v) every `stride` steps into xs/vs, index 0 holding the
    initial condition. Returns 0 (kept for signature parity with the
    two-ion kernel).
    """
    x = float(x0)
    v = float(v0)
    xs[0] = x
    vs[0] = v
    isamp = 1
    inv_m = 1.0 / m
    for i in range(nsteps):
        t = i * dt

        a1 = (-kt * x - f0 * math.sin(twok * x - dw * t + dphi)) * inv_m
        k1x, k1v = v, a1

        th = t + 0.5 * dt
        x2 = x + 0.5 * dt * k1x
        v2 = v + 0.5 * dt * k1v
        a2 = (-kt * x2 - f0 * math.sin(twok * x2 - dw * th + dphi)) * inv_m
        k2x, k2v = v2, a2

        x3 = x + 0.5 * dt * k2x
        v3 = v + 0.5 * dt * k2v
        a3 = (-kt * x3 - f0 * math.sin(twok * x3 - dw * th + dphi)) * inv_m
        k3x, k3v = v3, a3

        tf = t + dt
        x4 = x + dt * k3x
        v4 = v + dt * k3v
        a4 = (-kt * x4 - f0 * math.sin(twok * x4 - dw * tf + dphi)) * inv_m
        k4x, k4v = v4, a4

        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

        if (i + 1) % stride == 0:
            xs[isamp] = x
            vs[isamp] = v
            isamp += 1
    return 0


def rk4_two(
    m1, m2, kt, coul, f01, f02, twok, dw, dphi,
    x10, v10, x20, v20, dt, nsteps, stride,
    xs1, vs1, xs2, vs2,
):
    """Two-ion chain with Coulomb repulsion and per-ion lattice forces.

    coul is e^2/(4 pi eps0). Returns -1 on success, otherwise the step
    index at which the ions crossed (the integration stops there).
    """
    x1, v1 = float(x10), float(v10)
    x2, v2 = float(x20), float(v20)
    order = 1.0 if x1 > x2 else -1.0
    xs1[0], vs1[0] = x1, v1
    xs2[0], vs2[0] = x2, v2
    isamp = 1
    inv_m1 = 1.0 / m1
    inv_m2 = 1.0 / m2

    def accel(x1, x2, t):
        d = x1 - x2
        rep = coul / (d * d)
        s = 1.0 if d > 0 else -1.0
        f_l1 = -f01 * math.sin(twok * x1 - dw * t + dphi)
        f_l2 = -f02 * math.sin(twok * x2 - dw * t + dphi)
        a1 = (-kt * x1 + s * rep + f_l1) * inv_m1
        a2 = (-kt * x2 - s * rep + f_l2) * inv_m2
        return a1, a2

    for i in range(nsteps):
        t = i * dt
        a1, a2 = accel(x1, x2, t)
        k1 = (v1, a1, v2, a2)

        th = t + 0.5 * dt
        a1, a2 = accel(x1 + 0.5 * dt * k1[0], x2 + 0.5 * dt * k1[2], th)
        k2 = (v1 + 0.5 * dt * k1[1], a1, v2 + 0.5 * dt * k1[3], a2)

        a1, a2 = accel(x1 + 0.5 * dt * k2[0], x2 + 0.5 * dt * k2[2], th)
        k3 = (v1 + 0.5 * dt * k2[1], a1, v2 + 0.5 * dt * k2[3], a2)

        tf = t + dt
        a1, a2 = accel(x1 + dt * k3[0], x2 + dt * k3[2], tf)
        k4 = (v1 + dt * k3[1], a1, v2 + dt * k3[3], a2)

        x1 += dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        v1 += dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        x2 += dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        v2 += dt / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])

        if (x1 - x2) * order <= 0.0:
            return i + 1

        if (i + 1) % stride == 0:
            xs1[isamp], vs1[isamp] = x1, v1
            xs2[isamp], vs2[isamp] = x2, v2
            isamp += 1
    return -1
