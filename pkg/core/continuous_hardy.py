# core/continuous_hardy.py
'''
Copyright 2025 HardyCheck developers

Continuous Hardy operator with negative exponents.

  Hf(x) = (1/(x-a)) * integral_a^x f

Power weights f = c (x-a)^d are evaluated in closed form; everything else goes
through adaptive quadrature with the weight's breakpoints as known kinks.
'''
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from core.discrete_hardy import WeightedSequence, corollary21_sides
from core.errors import DomainError, Divergent, HypothesisViolated, InvalidExponents
from core.log import Log
from core.numerics import DEFAULT_QUADRATURE, QuadratureConfig, adaptive_integral
from core.report import InequalityReport, json_float, make_report
from core.weights import PiecewiseConstantWeight, PowerWeight, Weight, discretize

__all__ = [
    "SweepPoint",
    "hardy_mean",
    "theorem1_sides",
    "theoremD_sides",
    "sharpness_sweep",
    "lemma31_residual",
    "discrete_counterpart",
    "discrete_approximation",
    "METHODS",
]

METHODS = ("auto", "closed", "quadrature")

# Probe for t * psi(t)^a -> 0 near the origin.
LEMMA31_PROBE_OFFSET = 1e-8
LEMMA31_PROBE_LIMIT = 1e-3

################################################################################################

@dataclass(slots=True, frozen=True)
class SweepPoint:
    d: float
    lhs: float
    rhs: float
    ratio: float

    def to_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "lhs": json_float(self.lhs), "rhs": json_float(self.rhs),
                "ratio": json_float(self.ratio)}

    def csv_row(self) -> List[Any]:
        return [self.d, json_float(self.lhs), json_float(self.rhs), json_float(self.ratio)]

################################################################################################

def _check_interval(weight: Weight, interval: Tuple[float, float]) -> Tuple[float, float]:
    a, b = float(interval[0]), float(interval[1])
    d0, d1 = weight.domain
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    if a < d0 or b > d1:
        raise DomainError(f"interval ({a}, {b}) leaves the weight domain ({d0}, {d1})")
    return a, b


def _check_pq(p: float, q: float) -> Tuple[float, float]:
    p, q = float(p), float(q)
    if not (math.isfinite(p) and p > 0.0):
        raise InvalidExponents(f"need p > 0, got p={p}")
    if not (math.isfinite(q) and 0.0 < q <= p):
        raise InvalidExponents(f"need 0 < q <= p, got p={p}, q={q}")
    return p, q


def hardy_mean(weight: Weight, origin: float, x: float) -> float:
    """(1/(x - origin)) * integral of f from origin to x."""
    origin, x = float(origin), float(x)
    d0, d1 = weight.domain
    if not x > origin:
        raise DomainError(f"hardy_mean needs x > origin, got x={x}, origin={origin}")
    if origin < d0 or x > d1:
        raise DomainError(f"({origin}, {x}) leaves the weight domain ({d0}, {d1})")
    if isinstance(weight, PowerWeight) and origin == weight.origin:
        return weight.scale * (x - origin) ** weight.exponent / (weight.exponent + 1.0)
    return float(weight.primitive(x) - weight.primitive(origin)) / (x - origin)


def _hardy_mean_array(weight: Weight, origin: float, x: np.ndarray) -> np.ndarray:
    """Vectorised hardy_mean; x == origin takes the right limit f(origin+)."""
    x = np.asarray(x, dtype=float)
    width = x - origin
    at_origin = width <= 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        if isinstance(weight, PowerWeight) and origin == weight.origin:
            h = weight.scale * np.power(width, weight.exponent) / (weight.exponent + 1.0)
        else:
            h = (weight.primitive(x) - weight.primitive(origin)) / width
    if np.any(at_origin):
        h = np.where(at_origin, weight.value(np.full_like(x, origin)), h)
    return h


def _breakpoints(weight: Weight) -> Sequence[float]:
    if isinstance(weight, PiecewiseConstantWeight):
        return weight.breakpoints[1:-1]
    return ()


def _closed_form_sides(weight: PowerWeight, a: float, b: float, p: float, q: float):
    """lhs and rhs integral for f = c (x-a)^d on (a, b)."""
    d = weight.exponent
    c = weight.scale
    k = 1.0 - d * p
    if k <= 0.0:
        raise Divergent(f"integral of (Hf)^-p diverges for d*p = {d * p:g} >= 1")
    base = (b - a) ** k / k
    lhs = c ** (-p) * (d + 1.0) ** p * base
    rhs_integral = c ** (-p) * (d + 1.0) ** (p - q) * base
    return lhs, rhs_integral


def _quadrature_sides(weight: Weight, a: float, b: float, p: float, q: float,
                      cfg: QuadratureConfig):
    points = _breakpoints(weight)

    def lhs_integrand(x):
        with np.errstate(divide="ignore", over="ignore"):
            return np.power(_hardy_mean_array(weight, a, x), -p)

    def rhs_integrand(x):
        h = _hardy_mean_array(weight, a, x)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.power(weight.value(x), -q)
            if q != p:
                out = out * np.power(h, q - p)
        return out

    lhs = adaptive_integral(lhs_integrand, (a, b), cfg, points)
    rhs_integral = adaptive_integral(rhs_integrand, (a, b), cfg, points)
    return lhs, rhs_integral


def theorem1_sides(
    weight: Weight,
    interval: Tuple[float, float],
    p: float,
    q: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> InequalityReport:
    """
    integral (Hf)^-p  <=  ((p+1)/p)^q  integral (Hf)^{q-p} f^-q   over interval, 0 < q <= p.

    method "closed" needs a power weight whose origin is the left end of interval;
    "auto" picks it whenever that applies and falls back to quadrature.
    """
    p, q = _check_pq(p, q)
    a, b = _check_interval(weight, interval)
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}, expected one of {METHODS}")

    closed_ok = isinstance(weight, PowerWeight) and weight.origin == a
    if method == "closed" and not closed_ok:
        raise DomainError("closed forms need a power weight whose origin is the interval start")
    use_closed = closed_ok and method != "quadrature"

    if use_closed:
        lhs, rhs_integral = _closed_form_sides(weight, a, b, p, q)
    else:
        lhs, rhs_integral = _quadrature_sides(weight, a, b, p, q, cfg)
    rhs = ((p + 1.0) / p) ** q * rhs_integral

    Log.debug(f"theorem1_sides({weight.kind}, ({a}, {b}), p={p}, q={q}, "
              f"{'closed' if use_closed else 'quadrature'}): lhs={lhs:.12g} rhs={rhs:.12g}", 2)
    return make_report(lhs, rhs, p=p, q=q, a=a, b=b,
                       method="closed" if use_closed else "quadrature")


def theoremD_sides(
    weight: Weight,
    interval: Tuple[float, float],
    p: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> InequalityReport:
    """theorem1_sides with q = p: integral (Hf)^-p <= ((p+1)/p)^p integral f^-p."""
    return theorem1_sides(weight, interval, p, p, cfg, method)


def sharpness_sweep(p: float, q: float, d_values: Sequence[float]) -> List[SweepPoint]:
    """
    Ratios lhs/rhs of theorem1_sides for f(x) = x^d on (0, 1).
    They equal ((d+1) p/(p+1))^q and rise to 1 as d -> 1/p from below.
    """
    p, q = _check_pq(p, q)
    out = []
    for d in d_values:
        d = float(d)
        if not (-1.0 < d < 1.0 / p):
            raise DomainError(f"sweep needs -1 < d < 1/p = {1.0 / p:g}, got d={d}")
        r = theorem1_sides(PowerWeight(d), (0.0, 1.0), p, q, method="closed")
        out.append(SweepPoint(d, r.lhs, r.rhs, r.ratio))
    return out


def lemma31_residual(
    psi_weight: Weight,
    a_exp: float,
    u: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """
    |LHS - RHS| of the integration-by-parts identity

        a * int_0^u psi^{a-1} g  =  u psi(u)^a + (a-1) * int_0^u psi^a

    where psi is the running mean of g from the start of its domain, so (t psi)' = g.
    Both integrals go through adaptive_integral; the result should sit at quadrature
    tolerance.
    """
    g = psi_weight
    a_exp = float(a_exp)
    if not a_exp > 1.0:
        raise DomainError(f"need a > 1, got a={a_exp}")
    o = g.domain[0]
    u = float(u)
    if not (o < u <= g.domain[1]):
        raise DomainError(f"need {o} < u <= {g.domain[1]}, got u={u}")

    t0 = o + LEMMA31_PROBE_OFFSET
    with np.errstate(divide="ignore", over="ignore"):
        probe = float(LEMMA31_PROBE_OFFSET * np.power(hardy_mean(g, o, t0), a_exp))
    if not (math.isfinite(probe) and probe <= LEMMA31_PROBE_LIMIT):
        raise HypothesisViolated(f"t * psi(t)^a = {probe:.3g} at t = {LEMMA31_PROBE_OFFSET:g}, "
                                 f"does not tend to 0")

    points = _breakpoints(g)

    def lhs_integrand(t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.power(_hardy_mean_array(g, o, t), a_exp - 1.0) * g.value(t)

    def psi_power(t):
        with np.errstate(divide="ignore", over="ignore"):
            return np.power(_hardy_mean_array(g, o, t), a_exp)

    lhs = a_exp * adaptive_integral(lhs_integrand, (o, u), cfg, points)
    rhs = (u - o) * hardy_mean(g, o, u) ** a_exp + (a_exp - 1.0) * adaptive_integral(
        psi_power, (o, u), cfg, points)
    residual = abs(lhs - rhs)
    Log.debug(f"lemma31_residual(a={a_exp}, u={u}): lhs={lhs:.15g} rhs={rhs:.15g} "
              f"residual={residual:.3g}", 2)
    return residual


def discrete_counterpart(weight: Weight, interval: Tuple[float, float], n: int) -> WeightedSequence:
    """Cell averages of f over n equal cells of interval, with unit weights."""
    cells = discretize(weight, n, _check_interval(weight, interval))
    return WeightedSequence(cells.values)


def discrete_approximation(
    weight: Weight,
    interval: Tuple[float, float],
    p: float,
    q: float,
    n: int,
) -> InequalityReport:
    """
    corollary21_sides on the n-cell averages, both sides multiplied by the cell width,
    i.e. Riemann sums of the two theorem1_sides integrals.
    """
    p, q = _check_pq(p, q)
    a, b = _check_interval(weight, interval)
    seq = discrete_counterpart(weight, (a, b), n)
    r = corollary21_sides(seq.a, p, q)
    h = (b - a) / n
    return make_report(r.lhs * h, r.rhs * h, p=p, q=q, a=a, b=b, n=n)
