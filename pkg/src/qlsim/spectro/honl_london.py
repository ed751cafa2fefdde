"""Rotational line strengths for a 2Pi <- 2Sigma+ band.

The Sigma state is expanded from case (b) into signed-Omega case (a)
components; the Pi state is the intermediate-coupling eigenvector of the
2x2 spin-orbit + rotation matrix. The line strength is the coherent sum of
the two transition amplitudes, which reproduces the classic closed-form
branch factors in both coupling limits.

Normalization convention (exposed as HL_SUM_CONVENTION): for a fixed lower
level (N'', J'') the six branches reaching it sum to
(2J''+1) * (2 - delta_{0, Lambda'+Lambda''}) = 2*(2J''+1).
"""

import math

from qlsim.errors import DomainError
from qlsim.spectro.angular import wigner3j

#: the 12 branch labels of a 2Pi <- 2Sigma band: dJ + upper/lower spin index
BRANCHES = (
    "P11", "Q11", "R11",
    "P21", "Q21", "R21",
    "P12", "Q12", "R12",
    "P22", "Q22", "R22",
)

#: factor such that the per-lower-level branch sum equals HL_SUM_CONVENTION(J'')
def HL_SUM_CONVENTION(j_lower):
    return 2.0 * (2.0 * j_lower + 1.0)

# A_so/B for the N2+ A-state v=2 level; callers with other bands pass y.
DEFAULT_Y = -43.96

_DJ = {"P": -1.0, "Q": 0.0, "R": 1.0}


def _sigma_case_b(N, J):
    """Case (b) -> case (a) coefficients of a 2Sigma+ level, keyed by Sigma."""
    return {
        sigma: math.sqrt(2 * N + 1) * wigner3j(J, 0.5, N, sigma, -sigma, 0.0)
        for sigma in (-0.5, 0.5)
    }


def _pi_mixing(y, J, fi):
    """(c_half, c_threehalf) of a 2Pi level in intermediate coupling.

    y = A_so/B. fi=1 is the lower-energy eigenvalue. Returns None when the
    level does not exist (J=1/2 only supports the pure Omega=1/2 level,
    which belongs to the component correlating with Omega=1/2).
    """
    z = J * (J + 1)
    if abs(J - 0.5) < 1e-9:
        # single level; assign it to the component that Omega=1/2 correlates with
        h11 = -0.5 * y + (z + 0.25)
        h22_virtual = 0.5 * y + (z - 1.75)
        half_is_lower = h11 < h22_virtual
        if (fi == 1) == half_is_lower:
            return (1.0, 0.0)
        return None
    h11 = -0.5 * y + (z + 0.25)
    h22 = 0.5 * y + (z - 1.75)
    # sign fixed by the case (b) limit: main branches (dN = dJ) must carry
    # the strength while satellites vanish at high J
    h12 = math.sqrt(z - 0.75)
    mean = 0.5 * (h11 + h22)
    r = math.hypot(0.5 * (h11 - h22), h12)
    e = mean - r if fi == 1 else mean + r
    vx, vy = h12, e - h11
    n = math.hypot(vx, vy)
    c = (vx / n, vy / n)
    if c[0] + c[1] < 0:  # fix overall sign only; relative sign is physical
        c = (-c[0], -c[1])
    return c


def _amplitude(c_lower, c_upper, j_lower, j_upper):
    """Coherent sum over signed components; Omega' = Sigma'' + 1."""
    t = 0.0
    for sigma, omega_up, cu in (
        (-0.5, 0.5, c_upper[0]),
        (0.5, 1.5, c_upper[1]),
    ):
        if j_upper + 1e-9 < omega_up:
            continue
        t += (
            c_lower[sigma]
            * cu
            * (-1.0) ** (j_upper - omega_up)
            * wigner3j(j_upper, 1.0, j_lower, -omega_up, 1.0, sigma)
        )
    return t


def honl_london(branch, j_lower, y=DEFAULT_Y):
    """Honl-London factor of one branch at lower-state J''.

    branch: one of BRANCHES, e.g. "R11" (dJ=+1, upper F1 <- lower F1).
    Returns 0.0 for lines that vanish or address nonexistent levels;
    raises DomainError for malformed branch ids or J'' < 1/2.
    """
    if branch not in BRANCHES:
        raise DomainError(f"invalid branch id {branch!r}; expected one of {BRANCHES}")
    if abs(2 * j_lower - round(2 * j_lower)) > 1e-9 or j_lower < 0.5:
        raise DomainError("J'' must be a half-integer >= 1/2")
    dj = _DJ[branch[0]]
    fi_up, fi_lo = int(branch[1]), int(branch[2])

    n_lower = j_lower - 0.5 if fi_lo == 1 else j_lower + 0.5
    n_lower = int(round(n_lower))
    j_upper = j_lower + dj
    if j_upper < 0.5 - 1e-9:
        return 0.0
    if abs(j_upper - j_lower) < 1e-9 and abs(j_upper - 0.0) < 1e-9:
        return 0.0

    c_up = _pi_mixing(y, j_upper, fi_up)
    if c_up is None:
        return 0.0
    c_lo = _sigma_case_b(n_lower, j_lower)
    t = _amplitude(c_lo, c_up, j_lower, j_upper)
    return 2.0 * (2 * j_upper + 1) * (2 * j_lower + 1) * t * t
