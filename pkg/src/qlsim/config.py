"""Run configuration: unit-suffixed key-value files with [section] headers.

Every numeric key must carry an explicit unit suffix (power_W, waist_m,
omega_ref_Hz, ...). Frequencies in configs are cyclic Hz; conversion to
angular units happens at the library boundary, not here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from qlsim.errors import ConfigError

#: accepted unit suffixes for numeric keys
UNIT_SUFFIXES = (
    "Hz", "s", "m", "W", "N", "J", "u", "per_s", "rad", "nm",
    "count", "frac", "mW",
)

_SCALE = {
    "Hz": 1.0, "s": 1.0, "m": 1.0, "W": 1.0, "N": 1.0, "J": 1.0,
    "u": 1.0, "per_s": 1.0, "rad": 1.0, "count": 1.0, "frac": 1.0,
    "nm": 1e-9, "mW": 1e-3,
}

#: canonical unit each scaled suffix maps onto
_CANON = {"nm": "m", "mW": "W"}

_SECTION_RE = re.compile(r"^\[([A-Za-z0-9_]+)\]$")
_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


@dataclass
class RunConfig:
    """Parsed configuration: scenario id plus per-section key-value maps."""

    scenario: str
    sections: dict = field(default_factory=dict)
    path: str = "<memory>"

    def section(self, name: str) -> dict:
        if name not in self.sections:
            raise ConfigError(f"{self.path}: missing [{name}] section")
        return self.sections[name]

    def has(self, name: str) -> bool:
        return name in self.sections

    def get(self, section: str, key: str, default=None):
        sec = self.section(section)
        if key not in sec:
            if default is not None:
                return default
            raise ConfigError(f"{self.path}: [{section}] is missing {key!r}")
        return sec[key]

    def get_list(self, section: str, key: str) -> list:
        val = self.get(section, key)
        return val if isinstance(val, list) else [val]


def _parse_value(key, raw, path, lineno):
    """Validate the unit suffix and return (canonical_key, value)."""
    if _NUMBER_RE.match(raw):
        for suffix in sorted(UNIT_SUFFIXES, key=len, reverse=True):
            if key.endswith("_" + suffix):
                base = key[: -len(suffix) - 1]
                canon = _CANON.get(suffix, suffix)
                return f"{base}_{canon}", float(raw) * _SCALE[suffix]
        raise ConfigError(
            f"{path}:{lineno}: numeric key {key!r} lacks a unit suffix "
            f"(one of {', '.join(UNIT_SUFFIXES)})"
        )
    return key, raw


def parse_config(path) -> RunConfig:
    """Read and validate a config file; raises ConfigError with locations."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, path=str(path))


def parse_config_text(text: str, path: str = "<memory>") -> RunConfig:
    sections: dict = {}
    scenario = None
    current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            current = m.group(1)
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = (s.strip() for s in line.partition("="))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if current is None:
            if key == "scenario":
                scenario = val
                continue
            raise ConfigError(
                f"{path}:{lineno}: only 'scenario' may appear before sections"
            )
        canon_key, value = _parse_value(key, val, path, lineno)
        sec = sections[current]
        if canon_key in sec:
            prev = sec[canon_key]
            if not isinstance(prev, list):
                prev = [prev]
            prev.append(value)
            sec[canon_key] = prev
        else:
            sec[canon_key] = value

    if scenario is None:
        raise ConfigError(f"{path}: missing top-level 'scenario = <id>' line")
    return RunConfig(scenario=scenario, sections=sections, path=path)
