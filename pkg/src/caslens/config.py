"""Unit parsing, key-value configuration files and separation grids.

Everything inside the package is strict SI; these helpers convert at the
command-line boundary only.  Lengths accept the suffixes nm, um, mm, cm, m
(bare numbers are metres); temperatures accept an optional trailing K.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

_LENGTH_FACTORS = {
    "nm": 1.0e-9,
    "um": 1.0e-6,
    "mm": 1.0e-3,
    "cm": 1.0e-2,
    "m": 1.0,
}

_NUMBER_WITH_UNIT = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([a-zA-Z]*)\s*$"
)


def parse_length(text: str | float) -> float:
    """Parse a length with an optional unit suffix into metres."""
    if isinstance(text, (int, float)):
        return float(text)
    match = _NUMBER_WITH_UNIT.match(text)
    if not match:
        raise ValueError(f"cannot parse length {text!r}")
    number, unit = match.groups()
    if unit == "":
        unit = "m"
    if unit not in _LENGTH_FACTORS:
        raise ValueError(f"unknown length unit {unit!r} in {text!r}")
    value = float(number) * _LENGTH_FACTORS[unit]
    if not math.isfinite(value):
        raise ValueError(f"length {text!r} is not finite")
    return value


def parse_temperature(text: str | float) -> float:
    """Parse a temperature in kelvin (optional trailing K)."""
    if isinstance(text, (int, float)):
        return float(text)
    match = _NUMBER_WITH_UNIT.match(text)
    if not match:
        raise ValueError(f"cannot parse temperature {text!r}")
    number, unit = match.groups()
    if unit not in ("", "K"):
        raise ValueError(f"unknown temperature unit {unit!r} in {text!r}")
    value = float(number)
    if not math.isfinite(value):
        raise ValueError(f"temperature {text!r} is not finite")
    return value


def parse_kv_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key = value`` text file; # starts a comment."""
    settings: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ValueError(f"{path}:{lineno}: empty key or value in {raw!r}")
        settings[key] = value
    return settings


def build_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid; empty when stop < start.

    The end point is included with a small tolerance so decimal steps like
    0.05 um land exactly 41 points on [1 um, 3 um].
    """
    if not start > 0.0:
        raise ValueError(f"grid start must be positive, got {start!r}")
    if stop < start:
        return []
    if not step > 0.0:
        raise ValueError(f"grid step must be positive, got {step!r}")
    count = int(math.floor((stop - start) / step + 1.0e-9)) + 1
    return [start + i * step for i in range(count)]
