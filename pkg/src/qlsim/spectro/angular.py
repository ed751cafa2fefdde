"""Wigner 3j symbols for half-integer angular momenta.

Evaluated with the Racah single-sum formula over precomputed log-factorials.
Double precision is ample for the j <= 10 needed here; the alternating sum
is rescaled by its largest term to avoid overflow.
"""

import math

_LGF_MAX = 200
_LGF = [math.lgamma(n + 1) for n in range(_LGF_MAX + 1)]

from qlsim.errors import DomainError


def _two(x, name):
    """Return round(2x) after checking x is (half-)integer."""
    t = 2.0 * x
    r = round(t)
    if abs(t - r) > 1e-9:
        raise DomainError(f"{name}={x} is not integer or half-integer")
    return int(r)


def _lf(two_n):
    """log((two_n/2)!) for an even doubled integer."""
    if two_n % 2:
        raise DomainError("internal: factorial of a half-integer")
    n = two_n // 2
    if n < 0:
        raise DomainError("internal: factorial of a negative number")
    return _LGF[n]


def wigner3j(j1, j2, j3, m1, m2, m3):
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3).

    Returns 0.0 when the triangle rule or m1+m2+m3=0 is violated; raises
    DomainError for arguments that are not (half-)integers or have |m|>j.
    """
    tj1, tj2, tj3 = _two(j1, "j1"), _two(j2, "j2"), _two(j3, "j3")
    tm1, tm2, tm3 = _two(m1, "m1"), _two(m2, "m2"), _two(m3, "m3")
    for tj, tm, nm in ((tj1, tm1, "m1"), (tj2, tm2, "m2"), (tj3, tm3, "m3")):
        if tj < 0:
            raise DomainError("j must be non-negative")
        if (tj - tm) % 2:
            raise DomainError(f"{nm} must differ from its j by an integer")
        if abs(tm) > tj:
            raise DomainError(f"|{nm}| exceeds its j")

    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if tj3 > tj1 + tj2 or tj3 < abs(tj1 - tj2):
        return 0.0
    if (tj1 + tj2 + tj3) % 2:
        return 0.0

    # triangle coefficient, log
    log_delta = 0.5 * (
        _lf(tj1 + tj2 - tj3)
        + _lf(tj1 - tj2 + tj3)
        + _lf(-tj1 + tj2 + tj3)
        - _lf(tj1 + tj2 + tj3 + 2)
    )
    log_pref = 0.5 * (
        _lf(tj1 + tm1) + _lf(tj1 - tm1)
        + _lf(tj2 + tm2) + _lf(tj2 - tm2)
        + _lf(tj3 + tm3) + _lf(tj3 - tm3)
    )

    # Racah sum over k (doubled-integer bookkeeping: tk is 2k, k integer)
    k_min = max(0, tj2 - tj3 - tm1, tj1 - tj3 + tm2) // 2
    k_max = min(tj1 + tj2 - tj3, tj1 - tm1, tj2 + tm2) // 2
    if k_max < k_min:
        return 0.0

    log_terms = []
    for k in range(k_min, k_max + 1):
        tk = 2 * k
        log_terms.append(
            -(
                _lf(tk)
                + _lf(tj1 + tj2 - tj3 - tk)
                + _lf(tj1 - tm1 - tk)
                + _lf(tj2 + tm2 - tk)
                + _lf(tj3 - tj2 + tm1 + tk)
                + _lf(tj3 - tj1 - tm2 + tk)
            )
        )
    log_max = max(log_terms)
    total = 0.0
    for k, lt in zip(range(k_min, k_max + 1), log_terms):
        total += (-1.0) ** k * math.exp(lt - log_max)

    sign = (-1.0) ** ((tj1 - tj2 - tm3) // 2)
    return sign * total * math.exp(log_delta + log_pref + log_max)
