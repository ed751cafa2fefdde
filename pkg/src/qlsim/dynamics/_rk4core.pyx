# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels for the ion-motion simulations."""

from libc.math cimport sin

BACKEND = "cython"


def rk4_single(double m, double kt, double f0, double twok, double dw,
               double dphi, double x0, double v0, double dt,
               long nsteps, long stride,
               double[::1] xs, double[::1] vs):
    cdef double x = x0, v = v0
    cdef double inv_m = 1.0 / m
    cdef double t, th, tf
    cdef double a1, a2, a3, a4
    cdef double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v
    cdef double x2, v2, x3, v3, x4, v4
    cdef long i, isamp = 1
    xs[0] = x
    vs[0] = v
    with nogil:
        for i in range(nsteps):
            t = i * dt

            a1 = (-kt * x - f0 * sin(twok * x - dw * t + dphi)) * inv_m
            k1x = v; k1v = a1

            th = t + 0.5 * dt
            x2 = x + 0.5 * dt * k1x
            v2 = v + 0.5 * dt * k1v
            a2 = (-kt * x2 - f0 * sin(twok * x2 - dw * th + dphi)) * inv_m
            k2x = v2; k2v = a2

            x3 = x + 0.5 * dt * k2x
            v3 = v + 0.5 * dt * k2v
            a3 = (-kt * x3 - f0 * sin(twok * x3 - dw * th + dphi)) * inv_m
            k3x = v3; k3v = a3

            tf = t + dt
            x4 = x + dt * k3x
            v4 = v + dt * k3v
            a4 = (-kt * x4 - f0 * sin(twok * x4 - dw * tf + dphi)) * inv_m
            k4x = v4; k4v = a4

            x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

            if (i + 1) % stride == 0:
                xs[isamp] = x
                vs[isamp] = v
                isamp += 1
    return 0


def rk4_two(double m1, double m2, double kt, double coul,
            double f01, double f02, double twok, double dw, double dphi,
            double x10, double v10, double x20, double v20,
            double dt, long nsteps, long stride,
            double[::1] xs1, double[::1] vs1,
            double[::1] xs2, double[::1] vs2):
    cdef double x1 = x10, v1 = v10, x2 = x20, v2 = v20
    cdef double order = 1.0 if x1 > x2 else -1.0
    cdef double inv_m1 = 1.0 / m1, inv_m2 = 1.0 / m2
    cdef double t, th, tf, d, rep, s
    cdef double a1, a2
    cdef double k1x1, k1v1, k1x2, k1v2
    cdef double k2x1, k2v1, k2x2, k2v2
    cdef double k3x1, k3v1, k3x2, k3v2
    cdef double k4x1, k4v1, k4x2, k4v2
    cdef double p1, p2
    cdef long i, isamp = 1
    cdef long crossed = -1
    xs1[0] = x1; vs1[0] = v1
    xs2[0] = x2; vs2[0] = v2
    with nogil:
        for i in range(nsteps):
            t = i * dt

            d = x1 - x2
            rep = coul / (d * d)
            s = 1.0 if d > 0 else -1.0
            a1 = (-kt * x1 + s * rep - f01 * sin(twok * x1 - dw * t + dphi)) * inv_m1
            a2 = (-kt * x2 - s * rep - f02 * sin(twok * x2 - dw * t + dphi)) * inv_m2
            k1x1 = v1; k1v1 = a1; k1x2 = v2; k1v2 = a2

            th = t + 0.5 * dt
            p1 = x1 + 0.5 * dt * k1x1
            p2 = x2 + 0.5 * dt * k1x2
            d = p1 - p2
            rep = coul / (d * d)
            s = 1.0 if d > 0 else -1.0
            a1 = (-kt * p1 + s * rep - f01 * sin(twok * p1 - dw * th + dphi)) * inv_m1
            a2 = (-kt * p2 - s * rep - f02 * sin(twok * p2 - dw * th + dphi)) * inv_m2
            k2x1 = v1 + 0.5 * dt * k1v1; k2v1 = a1
            k2x2 = v2 + 0.5 * dt * k1v2; k2v2 = a2

            p1 = x1 + 0.5 * dt * k2x1
            p2 = x2 + 0.5 * dt * k2x2
            d = p1 - p2
            rep = coul / (d * d)
            s = 1.0 if d > 0 else -1.0
            a1 = (-kt * p1 + s * rep - f01 * sin(twok * p1 - dw * th + dphi)) * inv_m1
            a2 = (-kt * p2 - s * rep - f02 * sin(twok * p2 - dw * th + dphi)) * inv_m2
            k3x1 = v1 + 0.5 * dt * k2v1; k3v1 = a1
            k3x2 = v2 + 0.5 * dt * k2v2; k3v2 = a2

            tf = t + dt
            p1 = x1 + dt * k3x1
            p2 = x2 + dt * k3x2
            d = p1 - p2
            rep = coul / (d * d)
            s = 1.0 if d > 0 else -1.0
            a1 = (-kt * p1 + s * rep - f01 * sin(twok * p1 - dw * tf + dphi)) * inv_m1
            a2 = (-kt * p2 - s * rep - f02 * sin(twok * p2 - dw * tf + dphi)) * inv_m2
            k4x1 = v1 + dt * k3v1; k4v1 = a1
            k4x2 = v2 + dt * k3v2; k4v2 = a2

            x1 += dt / 6.0 * (k1x1 + 2.0 * k2x1 + 2.0 * k3x1 + k4x1)
            v1 += dt / 6.0 * (k1v1 + 2.0 * k2v1 + 2.0 * k3v1 + k4v1)
            x2 += dt / 6.0 * (k1x2 + 2.0 * k2x2 + 2.0 * k3x2 + k4x2)
            v2 += dt / 6.0 * (k1v2 + 2.0 * k2v2 + 2.0 * k3v2 + k4v2)

            if (x1 - x2) * order <= 0.0:
                crossed = i + 1
                break

            if (i + 1) % stride == 0:
                xs1[isamp] = x1; vs1[isamp] = v1
                xs2[isamp] = x2; vs2[isamp] = v2
                isamp += 1
    return crossed
