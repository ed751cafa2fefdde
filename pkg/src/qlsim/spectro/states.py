"""Quantum-number records and spectroscopic constants for the N2+ A-X system.

The X ground state is treated in Hund's case (b) (good N), the A state in
intermediate coupling between case (a) components Omega=1/2 and 3/2. Nuclear
spin is carried but fixed to I=0 for all numerics; hyperfine and Zeeman
energetics are out of scope.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources

from qlsim.errors import ConfigError, DomainError


def _is_half_int(x):
    return abs(2 * x - round(2 * x)) < 1e-9


@dataclass(frozen=True)
class RovibronicState:
    """One molecular (or atomic-proxy) level.

    For X states the level is identified by (v, N, J); for A states by
    (v, J, Omega) where Omega in {1/2, 3/2} labels the spin component the
    level correlates with (the intermediate-coupling eigenvectors mix both).
    """

    electronic: str  # "X" or "A"
    v: int
    J: float
    N: int | None = None  # defined for X
    Omega: float | None = None  # defined for A
    m_J: float | None = None
    S: float = 0.5
    I: int = 0
    F: float | None = None
    m_F: float | None = None

    def __post_init__(self):
        if self.electronic not in ("X", "A"):
            raise DomainError(f"unknown electronic label {self.electronic!r}")
        if self.v < 0:
            raise DomainError("v must be >= 0")
        if not _is_half_int(self.J) or self.J <= 0:
            raise DomainError("J must be a positive half-integer")
        if abs(self.S - 0.5) > 1e-9:
            raise DomainError("only S=1/2 is supported")
        if self.I not in (0, 2):
            raise DomainError("I must be 0 or 2 (ortho-N2+)")
        if self.electronic == "X":
            if self.N is None or self.N < 0:
                raise DomainError("X states need N >= 0")
            if abs(abs(self.J - self.N) - 0.5) > 1e-9:
                raise DomainError("X states need J = N +/- 1/2")
        else:
            if self.Omega is None or self.Omega not in (0.5, 1.5):
                raise DomainError("A states need Omega in {1/2, 3/2}")
            if self.J + 1e-9 < self.Omega:
                raise DomainError("A states need J >= Omega")
        if self.m_J is not None:
            if not _is_half_int(self.m_J) or abs(self.m_J) > self.J + 1e-9:
                raise DomainError("m_J must be half-integer with |m_J| <= J")

    @property
    def fi(self) -> int:
        """Spin-component index: 1 = lower-energy component, 2 = upper.

        X (case b): F1 has J = N + 1/2. A (inverted, A_so < 0): F1
        correlates with Omega = 3/2.
        """
        if self.electronic == "X":
            return 1 if self.J > self.N else 2
        return 1 if self.Omega == 1.5 else 2

    def level_key(self):
        """Identity of the level ignoring magnetic quantum numbers."""
        if self.electronic == "X":
            return ("X", self.v, self.N, round(2 * self.J))
        return ("A", self.v, round(2 * self.Omega), round(2 * self.J))


@dataclass(frozen=True)
class MolecularConstants:
    """Band origins, rotational and coupling constants, Einstein coefficients.

    All frequencies in Hz (cyclic); Einstein coefficients in 1/s. Term
    values T share a single zero (the X v=0 vibronic origin).
    """

    T: dict  # (electronic, v) -> Hz
    B: dict  # (electronic, v) -> Hz
    gamma_X: float  # spin-rotation constant, Hz
    A_so: float  # A-state spin-orbit constant, Hz (negative: inverted)
    A_vib: dict  # (v_upper, v_lower) -> 1/s
    source: str = ""

    def __post_init__(self):
        for k, b in self.B.items():
            if b <= 0:
                raise ConfigError(f"B{k} must be > 0")
        for k, a in self.A_vib.items():
            if a < 0:
                raise ConfigError(f"A_vib{k} must be >= 0")

    def band_origin(self, v_up: int, v_low: int) -> float:
        """Vibronic A(v_up) - X(v_low) origin in Hz (no rotational part)."""
        try:
            return self.T[("A", v_up)] - self.T[("X", v_low)]
        except KeyError as exc:
            raise ConfigError(f"missing band origin for ({v_up},{v_low})") from exc

    def require_band(self, v_up: int, v_low: int):
        missing = []
        for key in (("A", v_up), ("X", v_low)):
            if key not in self.T:
                missing.append(f"T{key}")
            if key not in self.B:
                missing.append(f"B{key}")
        if (v_up, v_low) not in self.A_vib:
            missing.append(f"A_vib({v_up},{v_low})")
        if missing:
            raise ConfigError(
                f"constants incomplete for band ({v_up},{v_low}): " + ", ".join(missing)
            )


def x_rot_energy(constants: MolecularConstants, v: int, N: int, J: float) -> float:
    """Rotational + spin-rotation term of an X level, Hz above its T_v."""
    B = constants.B[("X", v)]
    g = constants.gamma_X
    e = B * N * (N + 1)
    if J > N:  # F1
        return e + 0.5 * g * N
    return e - 0.5 * g * (N + 1)


def a_rot_energy(constants: MolecularConstants, v: int, J: float, Omega: float) -> float:
    """Rotational + spin-orbit term of an A level, Hz above its T_v.

    Eigenvalue of the 2x2 intermediate-coupling matrix; the Omega label
    selects the component the level correlates with (A_so < 0: Omega=3/2
    is the lower eigenvalue).
    """
    ev, _ = a_level_eigen(constants, v, J, Omega)
    return ev


def a_level_eigen(constants: MolecularConstants, v: int, J: float, Omega: float):
    """(eigenvalue Hz, (c_half, c_threehalf)) for an A-state level.

    Basis order is (|Omega|=1/2, |Omega|=3/2); the eigenvector phase is
    fixed so that the dominant component is positive.
    """
    B = constants.B[("A", v)]
    A = constants.A_so
    z = J * (J + 1)
    if abs(J - 0.5) < 1e-9:
        if Omega == 1.5:
            raise DomainError("J=1/2 has no Omega=3/2 component")
        return -0.5 * A + B * (z + 0.25), (1.0, 0.0)
    h11 = -0.5 * A + B * (z + 0.25)  # Omega = 1/2
    h22 = 0.5 * A + B * (z - 1.75)  # Omega = 3/2
    h12 = B * math.sqrt(z - 0.75)  # same phase convention as honl_london._pi_mixing
    mean = 0.5 * (h11 + h22)
    half_diff = 0.5 * (h11 - h22)
    r = math.hypot(half_diff, h12)
    e_lo, e_hi = mean - r, mean + r
    # eigenvector of e for basis (1/2, 3/2): (h12, e - h11) normalized
    def vec(e):
        vx, vy = h12, e - h11
        n = math.hypot(vx, vy)
        if n == 0:  # h12=0 and degenerate never happens for B>0, J>1/2
            return (1.0, 0.0)
        vx, vy = vx / n, vy / n
        return (vx, vy)

    # Omega=3/2 correlates with the lower eigenvalue when A_so < 0.
    three_half_is_lower = (0.5 * A + B * (z - 1.75)) < (-0.5 * A + B * (z + 0.25))
    if (Omega == 1.5) == three_half_is_lower:
        e = e_lo
    else:
        e = e_hi
    c = vec(e)
    # sign convention: dominant component positive
    dom = 0 if Omega == 0.5 else 1
    if c[dom] < 0 or (c[dom] == 0 and c[1 - dom] < 0):
        c = (-c[0], -c[1])
    return e, c


def term_value(constants: MolecularConstants, state: RovibronicState) -> float:
    """Absolute term value of a level in Hz (zero at the X v=0 origin)."""
    key = (state.electronic, state.v)
    if key not in constants.T or key not in constants.B:
        raise ConfigError(f"no constants for {key}")
    if state.electronic == "X":
        return constants.T[key] + x_rot_energy(constants, state.v, state.N, state.J)
    return constants.T[key] + a_rot_energy(constants, state.v, state.J, state.Omega)


# ---------------------------------------------------------------------------
# constants file: line-oriented "key_unit = value" text with [section] headers

_UNIT_SCALE = {"Hz": 1.0, "per_s": 1.0}
_SECTION_RE = re.compile(r"^\[(state|band)\s+(.+)\]$")


def default_constants_path():
    return resources.files("qlsim.spectro").joinpath("data/n2plus_meinel.txt")


def load_molecular_constants(path=None) -> MolecularConstants:
    """Parse a constants file; validates shape, units and positivity."""
    if path is None:
        path = default_constants_path()
        text = path.read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()

    T, B, A_vib = {}, {}, {}
    gamma_X = None
    A_so = None
    source_lines = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _SECTION_RE.match(line)
        if m:
            kind, label = m.group(1), m.group(2).strip()
            if kind == "state":
                if label not in ("X", "A"):
                    raise ConfigError(f"line {lineno}: unknown state {label!r}")
                section = ("state", label)
            else:
                try:
                    vu, vl = (int(x) for x in label.split(","))
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: bad band label {label!r}") from exc
                section = ("band", (vu, vl))
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = (s.strip() for s in line.partition("="))
        if key == "source":
            source_lines.append(val)
            continue
        try:
            value = float(val)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: non-numeric value {val!r}") from exc
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        if "_" not in key:
            raise ConfigError(f"line {lineno}: key {key!r} lacks a unit suffix")
        base, unit = key.rsplit("_", 1) if not key.endswith("per_s") else (
            key[: -len("_per_s")],
            "per_s",
        )
        if unit not in _UNIT_SCALE:
            raise ConfigError(f"line {lineno}: unknown unit suffix {unit!r} in {key!r}")
        value *= _UNIT_SCALE[unit]

        kind, label = section
        if kind == "state":
            if base.startswith("T"):
                T[(label, int(base[1:]))] = value
            elif base.startswith("B"):
                B[(label, int(base[1:]))] = value
            elif base == "gamma" and label == "X":
                gamma_X = value
            elif base == "A_so" and label == "A":
                A_so = value
            else:
                raise ConfigError(f"line {lineno}: unexpected key {key!r} in [{kind} {label}]")
        else:
            if base != "A_vib":
                raise ConfigError(f"line {lineno}: unexpected key {key!r} in a band section")
            A_vib[label] = value

    if gamma_X is None:
        raise ConfigError("missing gamma_Hz in [state X]")
    if A_so is None:
        raise ConfigError("missing A_so_Hz in [state A]")
    if not T or not B or not A_vib:
        raise ConfigError("constants file is missing T/B/A_vib entries")
    return MolecularConstants(
        T=T, B=B, gamma_X=gamma_X, A_so=A_so, A_vib=A_vib, source="; ".join(source_lines)
    )
