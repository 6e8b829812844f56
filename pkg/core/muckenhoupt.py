# core/muckenhoupt.py
'''
Copyright 2025 HardyCheck developers

A_p characteristics of weights and the self-improvement of prefix A_q conditions.

The A_p characteristic of f on an interval I is

    (avg_I f) * (avg_I f^{-1/(p-1)})^{p-1}

and is >= 1 on every interval, with equality for constant weights.
'''
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.continuous_hardy import theorem1_sides
from core.errors import DomainError, Divergent, NotMonotone, OutOfRange
from core.log import Log
from core.numerics import DEFAULT_QUADRATURE, QuadratureConfig, bisect, integrate_power
from core.report import InequalityReport, json_float, make_report
from core.weights import PiecewiseConstantWeight, PowerWeight, Weight

__all__ = [
    "ApScan",
    "P0Solution",
    "TheoremFReport",
    "P0_TOL",
    "P0_MARGIN",
    "ap_characteristic",
    "prefix_scan",
    "suffix_scan",
    "interval_scan",
    "pair_grid",
    "solve_p0",
    "power_weight_constant",
    "self_improvement_bound",
    "exact_prefix_sup",
    "exact_suffix_sup",
    "theorem3_check",
    "hardy_step_check",
    "theorem_f_scan",
]

# Bisection width for p0.
P0_TOL = 1e-15
# p within this of p0 is treated as p0 itself: the bound blows up there.
P0_MARGIN = 1e-10
# Characteristics below 1 by more than this point at a numerical problem.
AP_FLOOR_RTOL = 1e-12

SIDES = ("prefix", "suffix")

################################################################################################

@dataclass(slots=True, frozen=True)
class ApScan:
    """A_p characteristic per grid entry; divergent entries are +inf."""
    p: float
    kind: str
    grid: tuple
    characteristics: tuple
    sup: float
    weight: Dict[str, Any] = field(default_factory=dict, compare=False)
    monotone: bool = True

    def to_dict(self) -> Dict[str, Any]:
        grid = [list(g) if isinstance(g, tuple) else g for g in self.grid]
        return {
            "p": self.p,
            "kind": self.kind,
            "grid": grid,
            "characteristics": [json_float(c) for c in self.characteristics],
            "sup": json_float(self.sup),
            "monotone": self.monotone,
            "weight": self.weight,
        }

    def csv_rows(self) -> List[List[Any]]:
        rows = []
        for g, c in zip(self.grid, self.characteristics):
            lo, hi = g if isinstance(g, tuple) else (None, g)
            rows.append([lo, hi, json_float(c)])
        return rows


@dataclass(slots=True, frozen=True)
class P0Solution:
    """Root of the p0 equation. bracket_width bounds |p0 - true root|; residual may not."""
    p0: float
    residual: float
    iterations: int
    bracket_width: float
    q: float
    M: float

    def to_dict(self) -> Dict[str, Any]:
        return {"p0": self.p0, "residual": json_float(self.residual),
                "iterations": self.iterations, "bracket_width": self.bracket_width,
                "q": self.q, "M": self.M}


@dataclass(slots=True, frozen=True)
class TheoremFReport:
    """Prefix, suffix and all-interval sups over one point set. Only finiteness is claimed."""
    p: float
    prefix_sup: float
    suffix_sup: float
    all_sup: float
    ratio: float
    monotone: bool
    intervals: int

    @property
    def finite(self) -> bool:
        return math.isfinite(self.all_sup)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "prefix_sup": json_float(self.prefix_sup),
            "suffix_sup": json_float(self.suffix_sup),
            "all_sup": json_float(self.all_sup),
            "ratio": json_float(self.ratio),
            "monotone": self.monotone,
            "intervals": self.intervals,
            "finite": self.finite,
        }

################################################################################################
# characteristics and scans

def _check_p(p: float) -> float:
    p = float(p)
    if not (math.isfinite(p) and p > 1.0):
        raise DomainError(f"A_p characteristic needs p > 1, got p={p}")
    return p


def ap_characteristic(weight: Weight, p: float, interval: Tuple[float, float]) -> float:
    """(avg f) * (avg f^{-1/(p-1)})^{p-1} on interval; Divergent when the second integral is."""
    p = _check_p(p)
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    length = b - a
    avg_f = integrate_power(weight, 1.0, (a, b)) / length
    avg_dual = integrate_power(weight, -1.0 / (p - 1.0), (a, b)) / length
    return avg_f * avg_dual ** (p - 1.0)


def _is_monotone(weight: Weight) -> bool:
    return weight.is_nondecreasing() or weight.is_nonincreasing()


def _scan(weight: Weight, p: float, kind: str, grid: Sequence, intervals: Sequence) -> ApScan:
    p = _check_p(p)
    if len(intervals) == 0:
        raise DomainError(f"{kind} scan needs a nonempty grid")
    chars = []
    for lo, hi in intervals:
        try:
            chars.append(ap_characteristic(weight, p, (lo, hi)))
        except Divergent:
            chars.append(math.inf)
    sup = max(chars)
    low = min(chars)
    if low < 1.0 - AP_FLOOR_RTOL:
        Log.debug(f"{kind}_scan: characteristic {low!r} below 1", 0)
    Log.debug(f"{kind}_scan(p={p}, {len(chars)} intervals): sup={sup:.12g}", 2)
    return ApScan(p, kind, tuple(grid), tuple(chars), sup, weight.to_dict(), _is_monotone(weight))


def _right_end(weight: Weight, right: Optional[float]) -> float:
    if right is not None:
        return float(right)
    end = weight.domain[1]
    # Power weights live on a half-line; their suffix intervals end at 1.
    return end if math.isfinite(end) else 1.0


def prefix_scan(weight: Weight, p: float, grid: Sequence[float]) -> ApScan:
    """Characteristic on (x0, t) for every t in grid, x0 the left end of the domain."""
    x0 = weight.domain[0]
    ts = [float(t) for t in grid]
    return _scan(weight, p, "prefix", ts, [(x0, t) for t in ts])


def suffix_scan(weight: Weight, p: float, grid: Sequence[float],
                right: Optional[float] = None) -> ApScan:
    """Characteristic on (t, right) for every t in grid; right defaults to the domain end."""
    end = _right_end(weight, right)
    ts = [float(t) for t in grid]
    return _scan(weight, p, "suffix", ts, [(t, end) for t in ts])


def interval_scan(weight: Weight, p: float, grid: Sequence[Tuple[float, float]]) -> ApScan:
    pairs = [(float(a), float(b)) for a, b in grid]
    return _scan(weight, p, "interval", pairs, pairs)


def pair_grid(points: Sequence[float]) -> List[Tuple[float, float]]:
    """Every (a, b) with a < b drawn from points."""
    pts = sorted({float(x) for x in points})
    return [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]

################################################################################################
# critical exponent and the self-improvement constant

def _check_qM(q: float, M: float) -> Tuple[float, float]:
    q, M = float(q), float(M)
    if not (math.isfinite(q) and q > 1.0):
        raise DomainError(f"need q > 1, got q={q}")
    if not (math.isfinite(M) and M >= 1.0):
        raise DomainError(f"need finite M >= 1, got M={M}")
    return q, M


def _p0_log_term(p: float, q: float, M: float) -> float:
    """log of ((q-p)/(q-1)) (M p)^{1/(q-1)} for p < q."""
    return math.log((q - p) / (q - 1.0)) + (math.log(M) + math.log(p)) / (q - 1.0)


def _p0_equation(p: float, q: float, M: float) -> float:
    if p >= q:
        return -1.0
    return math.expm1(min(_p0_log_term(p, q, M), 700.0))


def solve_p0(q: float, M: float) -> P0Solution:
    """
    Unique root p0 in [1, q] of ((q-p)/(q-1)) (M p)^{1/(q-1)} = 1.
    The left side minus 1 is strictly decreasing on (1, q], positive at 1 for M > 1
    and -1 at q; M = 1 gives p0 = 1.

    For q near 1 the equation is too steep for double precision: the bracket still
    closes (bracket_width <= P0_TOL) but the residual at p0 can be far above 1e-12:
    q=1.3, M=50 leaves ~1e-9 and q=1.01, M=2 is off the scale. Judge the root by
    bracket_width.
    """
    q, M = _check_qM(q, M)
    p0, iterations, width = bisect(lambda p: _p0_equation(p, q, M), (1.0, q), P0_TOL,
                                   full_output=True)
    residual = _p0_equation(p0, q, M)
    Log.debug(f"solve_p0(q={q}, M={M}): p0={p0!r} residual={residual:.3g} "
              f"after {iterations} iterations", 2)
    return P0Solution(p0, residual, iterations, width, q, M)


def power_weight_constant(q: float, a: float) -> float:
    """Prefix A_q characteristic of t^a (the same for every t): (1/(a+1)) ((q-1)/(q-1-a))^{q-1}."""
    q, a = float(q), float(a)
    if not q > 1.0:
        raise DomainError(f"need q > 1, got q={q}")
    if not 0.0 < a < q - 1.0:
        raise DomainError(f"need 0 < a < q - 1 = {q - 1.0:g}, got a={a}")
    return ((q - 1.0) / (q - 1.0 - a)) ** (q - 1.0) / (a + 1.0)


def self_improvement_bound(p: float, q: float, M: float) -> float:
    """
    M' such that a non-decreasing weight with prefix A_q characteristic <= M has
    prefix A_p characteristic <= M', for p0 < p <= q.

        c = M^{1/(q-1)}
        K = 1 - ((q-p)/(q-1)) p^{1/(q-1)} c
        L = ((p-1)/(q-1)) M^{1/(p-1)} c^{-(q-p)/(p-1)} / K
        M' = L^{p-1}

    K > 0 exactly when p > p0.
    """
    q, M = _check_qM(q, M)
    p = float(p)
    if not math.isfinite(p) or p > q:
        raise OutOfRange(f"need p <= q = {q}, got p={p}")
    if p == q:
        return M
    p0 = solve_p0(q, M).p0
    if p <= p0 + P0_MARGIN:
        raise OutOfRange(f"need p > p0 = {p0!r}, got p={p}")

    log_c = math.log(M) / (q - 1.0)
    # K = -(left side of the p0 equation - 1)
    K = -math.expm1(_p0_log_term(p, q, M))
    if not K > 0.0:
        raise OutOfRange(f"K = {K:.3g} <= 0 at p={p}, q={q}, M={M}")
    log_lam = (math.log((p - 1.0) / (q - 1.0)) + math.log(M) / (p - 1.0)
               - ((q - p) / (p - 1.0)) * log_c - math.log(K))
    log_bound = (p - 1.0) * log_lam
    bound = math.exp(log_bound) if log_bound < 709.0 else math.inf
    Log.debug(f"self_improvement_bound(p={p}, q={q}, M={M}): K={K:.6g} M'={bound:.12g}", 2)
    return bound

################################################################################################
# exact sups for the two weight families

def _piecewise_prefix_sup(weight: PiecewiseConstantWeight, p: float) -> float:
    """
    On each cell the prefix characteristic is F(s) G(s)^{p-1} / s^p with F, G affine in the
    prefix length s. Its only interior critical point is s* = -p a b / ((p-1) v b + w a)
    where F = a + v s, G = b + w s; so the sup is attained at a breakpoint or at some s*.
    """
    edges = np.asarray(weight.breakpoints, dtype=float)
    v = np.asarray(weight.values, dtype=float)
    w = np.power(v, -1.0 / (p - 1.0))
    s_edges = edges - edges[0]
    widths = np.diff(edges)
    F_edges = np.concatenate(([0.0], np.cumsum(v * widths)))
    G_edges = np.concatenate(([0.0], np.cumsum(w * widths)))

    alpha = F_edges[:-1] - v * s_edges[:-1]
    beta = G_edges[:-1] - w * s_edges[:-1]
    denom = (p - 1.0) * v * beta + w * alpha
    with np.errstate(divide="ignore", invalid="ignore"):
        s_star = -p * alpha * beta / denom
    inside = np.isfinite(s_star) & (s_star > s_edges[:-1]) & (s_star < s_edges[1:])

    s = np.concatenate((s_edges[1:], s_star[inside]))
    F = np.concatenate((F_edges[1:], alpha[inside] + v[inside] * s_star[inside]))
    G = np.concatenate((G_edges[1:], beta[inside] + w[inside] * s_star[inside]))
    chars = (F / s) * np.power(G / s, p - 1.0)
    # s -> 0 inside the first cell gives exactly 1.
    return float(max(1.0, np.max(chars)))


def exact_prefix_sup(weight: Weight, p: float) -> float:
    """Sup of the prefix A_p characteristic over every prefix of the domain (+inf if unbounded)."""
    p = _check_p(p)
    if isinstance(weight, PowerWeight):
        a = weight.exponent
        if a >= p - 1.0:
            return math.inf
        return ((p - 1.0) / (p - 1.0 - a)) ** (p - 1.0) / (a + 1.0)
    return _piecewise_prefix_sup(weight, p)


def exact_suffix_sup(weight: Weight, p: float) -> float:
    """Suffix intervals of a piecewise weight are prefixes of its reflection."""
    p = _check_p(p)
    if isinstance(weight, PowerWeight):
        raise DomainError("exact suffix sup is only available for piecewise weights")
    return _piecewise_prefix_sup(weight.reflected(), p)

################################################################################################
# Theorem-level checks

def theorem3_check(
    weight: Weight,
    q: float,
    p: float,
    grid: Sequence[float],
    side: str = "prefix",
) -> InequalityReport:
    """
    Self-improvement of the one-sided A_q condition.

    side="prefix": non-decreasing weight, intervals (x0, t) with t in grid.
    side="suffix": non-increasing piecewise weight, intervals (t, x_k) with t in grid.

    M is the larger of the grid sup and the exact sup at q, so M' is never computed
    from an underestimate. lhs is the grid sup at p, rhs is M'.
    """
    if side not in SIDES:
        raise DomainError(f"unknown side {side!r}, expected one of {SIDES}")
    if side == "prefix":
        if not weight.is_nondecreasing():
            raise NotMonotone("prefix self-improvement needs a non-decreasing weight")
        scan, exact = prefix_scan, exact_prefix_sup
    else:
        if isinstance(weight, PowerWeight):
            raise DomainError("suffix self-improvement is only available for piecewise weights")
        if not weight.is_nonincreasing():
            raise NotMonotone("suffix self-improvement needs a non-increasing weight")
        scan, exact = suffix_scan, exact_suffix_sup

    M = max(scan(weight, q, grid).sup, exact(weight, q), 1.0)
    if not math.isfinite(M):
        raise Divergent(f"{side} A_q characteristic is unbounded at q={q}")
    p0 = solve_p0(q, M).p0
    bound = self_improvement_bound(p, q, M)
    lhs = scan(weight, p, grid).sup
    Log.debug(f"theorem3_check({side}, q={q}, p={p}): M={M:.12g} p0={p0:.12g} "
              f"sup={lhs:.12g} M'={bound:.12g}", 1)
    return make_report(lhs, bound, q=q, p=p, M=M, p0=p0, M_prime=bound, side=side)


def hardy_step_check(
    weight: Weight,
    p: float,
    q: float,
    t: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> InequalityReport:
    """The continuous Hardy inequality with exponents 1/(p-1) >= 1/(q-1) on (x0, t), 1 < p <= q."""
    p, q = _check_p(p), _check_p(q)
    if p > q:
        raise DomainError(f"need p <= q, got p={p}, q={q}")
    x0 = weight.domain[0]
    return theorem1_sides(weight, (x0, float(t)), 1.0 / (p - 1.0), 1.0 / (q - 1.0), cfg)


def theorem_f_scan(
    weight: Weight,
    p: float,
    points: Sequence[float],
    right: Optional[float] = None,
) -> TheoremFReport:
    """
    Prefix, suffix and all-interval sups over the intervals spanned by points and the
    domain ends, plus all_sup / max(prefix_sup, suffix_sup).
    """
    p = _check_p(p)
    x0 = weight.domain[0]
    end = _right_end(weight, right)
    pts = sorted({float(x) for x in points if x0 <= x <= end} | {x0, end})
    if len(pts) < 3:
        raise DomainError("theorem_f_scan needs at least one interior point")

    prefix = prefix_scan(weight, p, [t for t in pts if t > x0])
    suffix = suffix_scan(weight, p, [t for t in pts if t < end], right=end)
    every = interval_scan(weight, p, pair_grid(pts))
    one_sided = max(prefix.sup, suffix.sup)
    ratio = every.sup / one_sided if math.isfinite(one_sided) else math.nan
    Log.debug(f"theorem_f_scan(p={p}, {len(every.grid)} intervals): prefix={prefix.sup:.6g} "
              f"suffix={suffix.sup:.6g} all={every.sup:.6g}", 1)
    return TheoremFReport(p, prefix.sup, suffix.sup, every.sup, ratio,
                          _is_monotone(weight), len(every.grid))
