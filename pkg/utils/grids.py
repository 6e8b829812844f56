'''
Copyright 2025 HardyCheck developers

Grid spec mini-language used by the scans:
  geom:40        t = 2^-j for j = 0..40, ascending
  lin:10         t = k/10 for k = 1..10
  0.1,0.5,1      explicit list
'''
from __future__ import annotations

import re
from typing import List

from core.errors import ParseError

__all__ = [
    "DEFAULT_GRID",
    "GRID_RE",
    "geometric_grid",
    "linear_grid",
    "parse_grid",
    "parse_floats",
    "suffix_starts",
]

DEFAULT_GRID = "geom:40"

#   <kind>:<count>
GRID_RE = re.compile(r'^\s*(geom|lin)\s*:\s*(\d+)\s*$')


def geometric_grid(n: int) -> List[float]:
    return [2.0 ** (-j) for j in range(n, -1, -1)]


def linear_grid(n: int) -> List[float]:
    if n < 1:
        raise ParseError(f"lin grid needs at least one point, got {n}")
    return [k / n for k in range(1, n + 1)]


def parse_floats(text: str) -> List[float]:
    """
    "0.1, 0.5,1" -> [0.1, 0.5, 1.0]
    Empty items are rejected rather than skipped.
    """
    items = [s.strip() for s in text.split(",")]
    if not items or any(s == "" for s in items):
        raise ParseError(f"empty item in list {text!r}")
    try:
        return [float(s) for s in items]
    except ValueError as e:
        raise ParseError(f"bad number in list {text!r}: {e}") from e


def parse_grid(spec: str) -> List[float]:
    m = GRID_RE.match(spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return geometric_grid(n) if kind == "geom" else linear_grid(n)
    if ":" in spec:
        raise ParseError(f"unknown grid spec {spec!r} (expected geom:n, lin:n or a list)")
    return parse_floats(spec)


def suffix_starts(grid: List[float], right: float = 1.0) -> List[float]:
    """Turn interval lengths into suffix starts right - t, ascending."""
    return sorted(right - t for t in grid)
