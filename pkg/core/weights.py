# core/weights.py
'''
Copyright 2025 HardyCheck developers

Weight families: closed-form power weights and piecewise-constant weights.
Both admit exact integrals of f^s, which is all the Hardy and A_p machinery needs.
'''
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, ClassVar, Dict, Sequence, Tuple, Union

import numpy as np

from core.errors import DomainError, Divergent, ParseError

__all__ = [
    "PowerWeight",
    "PiecewiseConstantWeight",
    "Weight",
    "discretize",
    "weight_from_dict",
]


# s*a within this of -1 counts as the log-divergent borderline at the origin.
EXPONENT_ATOL = 1e-12


def _finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


@dataclass(slots=True, frozen=True)
class PowerWeight:
    """
    f(t) = scale * (t - origin)^exponent on [origin, +inf).

    exponent > -1 so that f is integrable at the origin.
    """
    kind: ClassVar[str] = "power"

    exponent: float
    origin: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "exponent", _finite(self.exponent, "exponent"))
        object.__setattr__(self, "origin", _finite(self.origin, "origin"))
        object.__setattr__(self, "scale", _finite(self.scale, "scale"))
        if self.exponent <= -1.0:
            raise DomainError(f"power weight needs exponent > -1, got {self.exponent}")
        if self.scale <= 0.0:
            raise DomainError(f"power weight needs scale > 0, got {self.scale}")

    @property
    def domain(self) -> Tuple[float, float]:
        return (self.origin, math.inf)

    def is_nondecreasing(self) -> bool:
        return self.exponent >= 0.0

    def is_nonincreasing(self) -> bool:
        return self.exponent <= 0.0

    def value(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return self.scale * np.power(x - self.origin, self.exponent)

    def primitive(self, x):
        """Integral of f from the origin to x."""
        x = np.asarray(x, dtype=float)
        e = self.exponent + 1.0
        return self.scale * np.power(x - self.origin, e) / e

    def power_integral(self, s: float, lo: float, hi: float) -> float:
        """Exact integral of f^s over (lo, hi); lo >= origin."""
        e = s * self.exponent
        u = lo - self.origin
        v = hi - self.origin
        coef = self.scale ** s
        k = e + 1.0
        if hi == lo:
            return 0.0
        if u == 0.0:
            if k <= EXPONENT_ATOL:
                raise Divergent(f"integral of t^{e:g} diverges at the origin {self.origin}")
            return coef * v ** k / k
        if k == 0.0:
            return coef * math.log(v / u)
        # expm1 keeps the k -> 0 limit (log form) accurate.
        return coef * u ** k * math.expm1(k * math.log(v / u)) / k

    def scaled(self, c: float) -> "PowerWeight":
        return PowerWeight(self.exponent, self.origin, self.scale * c)

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {"kind": "power", "a": self.exponent, "origin": self.origin}
        if self.scale != 1.0:
            d["scale"] = self.scale
        return d


@dataclass(slots=True, frozen=True)
class PiecewiseConstantWeight:
    """
    f = values[i] on (breakpoints[i], breakpoints[i+1]).

    With monotone=True the values are asserted non-decreasing on construction.
    """
    kind: ClassVar[str] = "piecewise"

    breakpoints: Tuple[float, ...]
    values: Tuple[float, ...]
    monotone: bool = False

    _edges: np.ndarray = field(init=False, repr=False, compare=False)
    _vals: np.ndarray = field(init=False, repr=False, compare=False)
    _cum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        bps = tuple(float(x) for x in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

        if len(vals) < 1:
            raise DomainError("piecewise weight needs at least one cell")
        if len(bps) != len(vals) + 1:
            raise DomainError(
                f"piecewise weight needs len(breakpoints) == len(values) + 1, "
                f"got {len(bps)} and {len(vals)}"
            )
        edges = np.array(bps, dtype=float)
        v = np.array(vals, dtype=float)
        if not np.all(np.isfinite(edges)):
            raise DomainError("breakpoints must be finite")
        if not np.all(np.diff(edges) > 0.0):
            raise DomainError("breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(v)) and np.all(v > 0.0)):
            raise DomainError("values must be finite and strictly positive")
        if self.monotone and not np.all(np.diff(v) >= 0.0):
            raise DomainError("monotone flag set but values are not non-decreasing")

        cum = np.concatenate(([0.0], np.cumsum(v * np.diff(edges))))
        for arr in (edges, v, cum):
            arr.setflags(write=False)
        object.__setattr__(self, "_edges", edges)
        object.__setattr__(self, "_vals", v)
        object.__setattr__(self, "_cum", cum)

    # ------------------------------------------------------------------ #
    # construction helpers
    # ------------------------------------------------------------------ #

    @classmethod
    def from_samples(cls, xs: Sequence[float], ys: Sequence[float],
                     domain: Tuple[float, float] | None = None) -> "PiecewiseConstantWeight":
        """
        Nearest-sample interpolation: each sample owns the cell reaching halfway
        to its neighbours. The domain defaults to (xs[0], xs[-1]).
        """
        x = np.asarray(xs, dtype=float)
        y = np.asarray(ys, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 1:
            raise DomainError("samples need matching one-dimensional xs and ys")
        if x.size > 1 and not np.all(np.diff(x) > 0.0):
            raise DomainError("sample positions must be strictly increasing")
        lo, hi = domain if domain is not None else (float(x[0]), float(x[-1]))
        if not lo < hi:
            raise DomainError(f"empty sample domain ({lo}, {hi})")
        if not (lo <= x[0] and x[-1] <= hi):
            raise DomainError("samples must lie inside the domain")
        mids = 0.5 * (x[:-1] + x[1:])
        edges = np.concatenate(([lo], mids, [hi]))
        return cls(tuple(edges), tuple(y))

    @property
    def domain(self) -> Tuple[float, float]:
        return (self.breakpoints[0], self.breakpoints[-1])

    @property
    def cells(self) -> int:
        return len(self.values)

    def is_nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self._vals) >= 0.0))

    def is_nonincreasing(self) -> bool:
        return bool(np.all(np.diff(self._vals) <= 0.0))

    def _cell_index(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._edges, x, side="right") - 1
        return np.clip(idx, 0, len(self._vals) - 1)

    def value(self, x):
        """Right-continuous evaluation; the right endpoint maps to the last cell."""
        x = np.asarray(x, dtype=float)
        return self._vals[self._cell_index(x)]

    def primitive(self, x):
        """Integral of f from the left endpoint to x."""
        x = np.asarray(x, dtype=float)
        i = self._cell_index(x)
        return self._cum[i] + self._vals[i] * (x - self._edges[i])

    def power_integral(self, s: float, lo: float, hi: float) -> float:
        """Exact integral of f^s over (lo, hi): sum of v_i^s times the cell overlaps."""
        if s == 0.0:
            return hi - lo
        overlap = np.minimum(hi, self._edges[1:]) - np.maximum(lo, self._edges[:-1])
        overlap = np.clip(overlap, 0.0, None)
        return math.fsum(np.power(self._vals, s) * overlap)

    def reflected(self) -> "PiecewiseConstantWeight":
        """x -> x0 + xk - x; suffix intervals become prefix intervals."""
        x0, xk = self.domain
        edges = tuple(x0 + xk - b for b in reversed(self.breakpoints))
        # Pin the ends so the domain survives rounding.
        edges = (x0,) + edges[1:-1] + (xk,)
        return PiecewiseConstantWeight(edges, tuple(reversed(self.values)))

    def scaled(self, c: float) -> "PiecewiseConstantWeight":
        return PiecewiseConstantWeight(
            self.breakpoints, tuple(v * c for v in self.values), self.monotone
        )

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "kind": "piecewise",
            "breakpoints": list(self.breakpoints),
            "values": list(self.values),
        }
        if self.monotone:
            d["monotone"] = True
        return d


Weight = Union[PowerWeight, PiecewiseConstantWeight]


def discretize(weight: Weight, n: int, interval: Tuple[float, float]) -> PiecewiseConstantWeight:
    """Replace weight on interval by its averages over n equal cells."""
    lo, hi = interval
    if n < 1:
        raise DomainError(f"need at least one cell, got {n}")
    if not lo < hi:
        raise DomainError(f"empty interval ({lo}, {hi})")
    d0, d1 = weight.domain
    if lo < d0 or hi > d1:
        raise DomainError(f"interval ({lo}, {hi}) leaves the weight domain ({d0}, {d1})")
    edges = np.linspace(lo, hi, n + 1)
    means = np.diff(weight.primitive(edges)) / np.diff(edges)
    return PiecewiseConstantWeight(tuple(edges), tuple(means))


def _require(d: Dict[str, Any], key: str) -> Any:
    if key not in d:
        raise ParseError(f"weight spec is missing '{key}'")
    return d[key]


def weight_from_dict(d: Dict[str, Any]) -> Weight:
    """
    Parse the weight JSON lingua franca:
      {"kind": "power", "a": 0.5, "origin": 0.0}
      {"kind": "piecewise", "breakpoints": [0, 0.5, 1], "values": [1, 2]}
    """
    if not isinstance(d, dict):
        raise ParseError(f"weight spec must be an object, got {type(d).__name__}")
    kind = _require(d, "kind")
    try:
        if kind == "power":
            return PowerWeight(
                float(_require(d, "a")),
                float(d.get("origin", 0.0)),
                float(d.get("scale", 1.0)),
            )
        if kind == "piecewise":
            return PiecewiseConstantWeight(
                tuple(_require(d, "breakpoints")),
                tuple(_require(d, "values")),
                bool(d.get("monotone", False)),
            )
    except (TypeError, ValueError) as e:
        # DomainError is a ValueError; keep it, wrap only malformed values.
        if isinstance(e, DomainError):
            raise
        raise ParseError(f"malformed weight spec: {e}") from e
    raise ParseError(f"unknown weight kind '{kind}'")
