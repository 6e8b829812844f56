# core/numerics.py
'''
Copyright 2025 HardyCheck developers

Shared numerical kernel:
  - integrate_power: exact integrals of f^s for both weight families
  - adaptive_integral: adaptive Gauss-Kronrod (G7/K15) with endpoint singularity handling
  - bisect: guarded midpoint bisection
  - compensated (Kahan) sums and running sums for long sequences
'''
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np

from core.errors import DomainError, Divergent, NoSignChange, ToleranceNotMet
from core.log import Log
from core.weights import Weight

__all__ = [
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "KAHAN_THRESHOLD",
    "KahanSum",
    "compensated_sum",
    "kahan_cumsum",
    "integrate_power",
    "adaptive_integral",
    "bisect",
]

# Sums over more terms than this are compensated.
KAHAN_THRESHOLD = 10_000

################################################################################################

@dataclass(slots=True, frozen=True)
class QuadratureConfig:
    """
    • abs_tol / rel_tol     – stop once the error estimate is below max(abs_tol, rel_tol*|I|)
    • max_subdivisions      – cap on the number of live segments
    • singularity_offset    – clip distance (relative to the interval length) from an
                              endpoint where the integrand blows up
    """
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 20_000
    singularity_offset: float = 1e-14

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "singularity_offset"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"QuadratureConfig.{name} must be finite and positive, got {v}")
        if self.max_subdivisions < 1:
            raise DomainError(f"QuadratureConfig.max_subdivisions must be >= 1, got {self.max_subdivisions}")


DEFAULT_QUADRATURE = QuadratureConfig()

################################################################################################
# Compensated summation

class KahanSum:
    """Running sum carrying the low-order bits lost by each addition."""

    __slots__ = ("total", "carry")

    def __init__(self):
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> float:
        value += self.carry
        previous = self.total
        self.total += value
        self.carry = (previous - self.total) + value
        return self.total


def compensated_sum(values: np.ndarray) -> float:
    """Sum of values; Kahan-compensated above KAHAN_THRESHOLD terms."""
    values = np.asarray(values, dtype=float)
    if values.size <= KAHAN_THRESHOLD:
        return float(np.sum(values))
    acc = KahanSum()
    for v in values.tolist():
        acc.add(v)
    return acc.total


def kahan_cumsum(values: np.ndarray) -> np.ndarray:
    """Running sums of values; Kahan-compensated above KAHAN_THRESHOLD terms."""
    values = np.asarray(values, dtype=float)
    if values.size <= KAHAN_THRESHOLD:
        return np.cumsum(values)
    acc = KahanSum()
    return np.fromiter((acc.add(v) for v in values.tolist()), dtype=float, count=values.size)

################################################################################################
# Exact power integrals

def integrate_power(weight: Weight, s: float, interval: Tuple[float, float]) -> float:
    """
    Exact integral of f^s over interval.

    Raises DomainError when the interval leaves the weight's domain and Divergent
    when the integral is infinite (power weight, s*a <= -1, interval starting at the origin).
    """
    lo, hi = float(interval[0]), float(interval[1])
    d0, d1 = weight.domain
    if not (d0 <= lo <= hi <= d1):
        raise DomainError(f"interval ({lo}, {hi}) is not inside the weight domain ({d0}, {d1})")
    return weight.power_integral(float(s), lo, hi)

################################################################################################
# Adaptive Gauss-Kronrod quadrature

# 15-point Kronrod nodes on [-1, 1] and the embedded 7-point Gauss weights.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

def _build_rule():
    half_nodes = np.array(_XGK[:7])
    nodes = np.concatenate((-half_nodes, [0.0], half_nodes[::-1]))
    wk_half = np.array(_WGK[:7])
    wk = np.concatenate((wk_half, [_WGK[7]], wk_half[::-1]))
    # Gauss nodes are the odd Kronrod positions 1, 3, 5 and the centre.
    wg_half = np.zeros(7)
    wg_half[1], wg_half[3], wg_half[5] = _WG[0], _WG[1], _WG[2]
    wg = np.concatenate((wg_half, [_WG[3]], wg_half[::-1]))
    return nodes, wk, wg

_NODES, _WK, _WG15 = _build_rule()


def _gauss_kronrod(g: Callable, a: float, b: float) -> Tuple[float, float]:
    """K15 value and |K15 - G7| error estimate on (a, b)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c + h * _NODES
    fx = np.broadcast_to(np.asarray(g(x), dtype=float), x.shape)
    if not np.all(np.isfinite(fx)):
        raise Divergent(f"integrand is not finite inside ({a!r}, {b!r})")
    k15 = h * float(np.dot(_WK, fx))
    g7 = h * float(np.dot(_WG15, fx))
    return k15, abs(k15 - g7)


def _finite_at(g: Callable, x: float) -> bool:
    with np.errstate(all="ignore"):
        v = np.asarray(g(np.array([x])), dtype=float)
    return bool(np.all(np.isfinite(v)))


def _endpoint_tail(g: Callable, lo: float, delta: float) -> Tuple[float, float]:
    """
    Integral of g over (lo, lo + delta) assuming g ~ C (x - lo)^alpha there, with
    alpha read off from two probes. Returns (tail, clip point).
    """
    x1 = lo + delta
    x2 = lo + 2.0 * delta
    d1 = x1 - lo
    d2 = x2 - lo
    g1, g2 = (float(v) for v in np.asarray(g(np.array([x1, x2])), dtype=float))
    if not (math.isfinite(g1) and math.isfinite(g2)):
        raise Divergent(f"integrand is not finite next to the endpoint {lo!r}")
    if g1 != 0.0 and g2 != 0.0 and (g1 > 0.0) == (g2 > 0.0):
        alpha = math.log(g2 / g1) / math.log(d2 / d1)
        if alpha <= -1.0:
            raise Divergent(f"non-integrable singularity at {lo!r} (local exponent {alpha:.6g})")
        return g1 * d1 / (alpha + 1.0), x1
    return g1 * d1, x1


def _geometric_edges(clip: float, lo: float, right: float) -> list:
    """Edges clip < lo + w/2^J < ... < lo + w/2 < right, w = right - lo."""
    w = right - lo
    levels = int(math.floor(math.log2(w / (clip - lo))))
    edges = [clip]
    for j in range(levels, 0, -1):
        e = lo + w * 2.0 ** (-j)
        if e > edges[-1]:
            edges.append(e)
    if right > edges[-1]:
        edges.append(right)
    return edges


def adaptive_integral(
    g: Callable,
    interval: Tuple[float, float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    points: Iterable[float] = (),
) -> float:
    """
    Integral of g over interval by adaptive G7/K15 subdivision.

    g is called with numpy arrays of nodes. It may blow up at the left endpoint:
    if g(lo) is not finite the first segment is clipped at lo + singularity_offset*(hi-lo),
    the clipped piece is estimated from the local power law, and the rest is split
    geometrically toward lo before refinement. Known kinks/jumps go in points.

    Raises ToleranceNotMet (with the achieved estimate) when max_subdivisions runs out.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
        raise DomainError(f"bad integration interval ({lo}, {hi})")
    if lo == hi:
        return 0.0

    edges = [lo] + sorted({float(p) for p in points if lo < p < hi}) + [hi]
    tail = 0.0
    if not _finite_at(g, lo):
        delta = cfg.singularity_offset * (hi - lo)
        tail, clip = _endpoint_tail(g, lo, delta)
        edges = _geometric_edges(clip, lo, edges[1]) + edges[2:]
        Log.debug(f"adaptive_integral: singular at {lo!r}, tail={tail:.6g}, "
                  f"{len(edges) - 1} initial segments", 3)

    heap = []
    for a, b in zip(edges[:-1], edges[1:]):
        val, err = _gauss_kronrod(g, a, b)
        heap.append((-err, a, b, val))
    heapq.heapify(heap)

    def tolerance(total: float) -> float:
        return max(cfg.abs_tol, cfg.rel_tol * abs(total))

    total = math.fsum(s[3] for s in heap) + tail
    err_total = math.fsum(-s[0] for s in heap)
    while err_total > tolerance(total):
        if len(heap) >= cfg.max_subdivisions:
            raise ToleranceNotMet(
                f"adaptive_integral: {len(heap)} segments, error estimate {err_total:.3g} "
                f"above tolerance {tolerance(total):.3g}",
                err_total, len(heap),
            )
        neg_err, a, b, val = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            raise ToleranceNotMet(
                f"adaptive_integral: segment ({a!r}, {b!r}) cannot be split further, "
                f"error estimate {err_total:.3g}",
                err_total, len(heap) + 1,
            )
        v1, e1 = _gauss_kronrod(g, a, mid)
        v2, e2 = _gauss_kronrod(g, mid, b)
        heapq.heappush(heap, (-e1, a, mid, v1))
        heapq.heappush(heap, (-e2, mid, b, v2))
        total += v1 + v2 - val
        err_total += e1 + e2 + neg_err
        if err_total <= tolerance(total):
            # Resync the running sums before accepting.
            total = math.fsum(s[3] for s in heap) + tail
            err_total = math.fsum(-s[0] for s in heap)

    Log.debug(f"adaptive_integral({lo!r}, {hi!r}) = {total!r} "
              f"[err {err_total:.3g}, {len(heap)} segments]", 3)
    return total

################################################################################################
# Bisection

def bisect(
    g: Callable[[float], float],
    bracket: Tuple[float, float],
    tol: float = 1e-12,
    full_output: bool = False,
):
    """
    Midpoint bisection for a root of g on bracket.

    Every iteration keeps a sign change between the bracket ends. Stops when the
    bracket is no wider than tol (or cannot be halved in floating point). With
    full_output the iteration count and the final bracket width are returned alongside
    the root.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo <= hi:
        raise DomainError(f"bracket ({lo}, {hi}) is reversed")
    g_lo = g(lo)
    g_hi = g(hi)
    iterations = 0
    width = 0.0

    if g_lo == 0.0:
        root = lo
    elif g_hi == 0.0:
        root = hi
    elif (g_lo > 0.0) == (g_hi > 0.0):
        raise NoSignChange(f"g({lo!r}) = {g_lo!r} and g({hi!r}) = {g_hi!r} have the same sign")
    else:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                break
            g_mid = g(mid)
            iterations += 1
            if g_mid == 0.0:
                lo = hi = mid
                break
            if (g_mid > 0.0) == (g_lo > 0.0):
                lo, g_lo = mid, g_mid
            else:
                hi, g_hi = mid, g_mid
        root = 0.5 * (lo + hi)
        width = hi - lo

    Log.debug(f"bisect: root {root!r} after {iterations} iterations", 3)
    if full_output:
        return root, iterations, width
    return root
