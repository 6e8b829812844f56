# core/discrete_hardy.py
'''
Copyright 2025 HardyCheck developers

Discrete weighted Hardy inequalities with negative exponents.

For positive a_n, lambda_n with running sums A_n = sum lambda_i a_i and
L_n = sum lambda_i, every check below works on the running means m_n = A_n / L_n.
'''
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence

import numpy as np

from core.errors import DomainError, InvalidExponents, ParseError
from core.log import Log
from core.numerics import compensated_sum, kahan_cumsum
from core.report import InequalityReport, json_float, make_report

__all__ = [
    "WeightedSequence",
    "PrefixSums",
    "HolderChain",
    "prefix_sums",
    "theorem2_sides",
    "lemma21_remainder",
    "lemma21_sides",
    "epsilon_sides",
    "theorem4_sides",
    "holder_chain",
    "elementary_gap",
    "two_point_gap",
    "corollary21_sides",
    "power_sequence",
]

################################################################################################

@dataclass(slots=True, frozen=True)
class WeightedSequence:
    """Finite positive sequence a with positive weights lam (default all ones)."""
    a: tuple
    lam: tuple = ()

    _a: np.ndarray = field(init=False, repr=False, compare=False)
    _lam: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = np.array([float(x) for x in self.a], dtype=float)
        lam = np.array([float(x) for x in self.lam], dtype=float) if len(self.lam) else np.ones_like(a)
        if a.size < 1:
            raise DomainError("sequence needs at least one term")
        if lam.shape != a.shape:
            raise DomainError(f"a and lam need equal lengths, got {a.size} and {lam.size}")
        if not (np.all(np.isfinite(a)) and np.all(a > 0.0)):
            raise DomainError("every a_n must be finite and strictly positive")
        if not (np.all(np.isfinite(lam)) and np.all(lam > 0.0)):
            raise DomainError("every lam_n must be finite and strictly positive")
        for arr in (a, lam):
            arr.setflags(write=False)
        object.__setattr__(self, "a", tuple(a.tolist()))
        object.__setattr__(self, "lam", tuple(lam.tolist()))
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_lam", lam)

    def __len__(self) -> int:
        return self._a.size

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "WeightedSequence":
        """{"a": [...], "lam": [...]} with lam optional."""
        if not isinstance(d, dict):
            raise ParseError(f"sequence spec must be an object, got {type(d).__name__}")
        if "a" not in d:
            raise ParseError("sequence spec is missing 'a'")
        try:
            return cls(tuple(d["a"]), tuple(d.get("lam") or ()))
        except (TypeError, ValueError) as e:
            if isinstance(e, DomainError):
                raise
            raise ParseError(f"malformed sequence spec: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {"a": list(self.a), "lam": list(self.lam)}


@dataclass(slots=True, frozen=True)
class PrefixSums:
    A: np.ndarray
    Lam: np.ndarray

    @property
    def means(self) -> np.ndarray:
        return self.A / self.Lam


@dataclass(slots=True, frozen=True)
class HolderChain:
    """J_{q1} <= J_{q2}^{q1/q2} * J_0^{1 - q1/q2}"""
    j_q1: float
    j_q2: float
    j_0: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.bound - self.j_q1 >= -1e-9 * max(abs(self.j_q1), abs(self.bound))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "j_q1": json_float(self.j_q1),
            "j_q2": json_float(self.j_q2),
            "j_0": json_float(self.j_0),
            "bound": json_float(self.bound),
            "holds": self.holds,
        }

################################################################################################
# helpers

def _sharp(p: float) -> float:
    return (p + 1.0) / p


def _check_p(p: float) -> float:
    p = float(p)
    if not (math.isfinite(p) and p > 0.0):
        raise InvalidExponents(f"need p > 0, got p={p}")
    return p


def _check_pq(p: float, q: float):
    p = _check_p(p)
    q = float(q)
    if not (math.isfinite(q) and 0.0 < q <= p):
        raise InvalidExponents(f"need 0 < q <= p, got p={p}, q={q}")
    return p, q


def _check_q1q2(p: float, q1: float, q2: float):
    p = _check_p(p)
    q1, q2 = float(q1), float(q2)
    if not (0.0 < q1 <= q2 <= p):
        raise InvalidExponents(f"need 0 < q1 <= q2 <= p, got p={p}, q1={q1}, q2={q2}")
    return p, q1, q2


def _j(seq: WeightedSequence, m: np.ndarray, p: float, q: float) -> float:
    """J_q = sum lam_n m_n^{q-p} a_n^{-q}; J_0 is the left side of the Hardy inequality."""
    if q == 0.0:
        terms = seq._lam * np.power(m, -p)
    else:
        terms = seq._lam * np.power(m, q - p) * np.power(seq._a, -q)
    return compensated_sum(terms)

################################################################################################

def prefix_sums(seq: WeightedSequence) -> PrefixSums:
    A = kahan_cumsum(seq._lam * seq._a)
    Lam = kahan_cumsum(seq._lam)
    return PrefixSums(A, Lam)


def theorem2_sides(seq: WeightedSequence, p: float, q: float) -> InequalityReport:
    """
    sum lam_n m_n^{-p}  <=  ((p+1)/p)^q  sum lam_n m_n^{q-p} a_n^{-q},   0 < q <= p.
    """
    p, q = _check_pq(p, q)
    m = prefix_sums(seq).means
    lhs = _j(seq, m, p, 0.0)
    rhs = _sharp(p) ** q * _j(seq, m, p, q)
    report = make_report(lhs, rhs, p=p, q=q, N=len(seq))
    Log.debug(f"theorem2_sides(N={len(seq)}, p={p}, q={q}): lhs={lhs:.12g} rhs={rhs:.12g}", 2)
    return report


def lemma21_remainder(seq: WeightedSequence, p: float) -> InequalityReport:
    """
    S_N = sum lam_n m_n^{-p} - (p/(p+1)) sum lam_n a_n m_n^{-p-1}  >=  (L_N/(p+1)) m_N^{-p}.

    Equality at N = 1 and for constant sequences. The report margin is lhs - rhs.
    """
    p = _check_p(p)
    ps = prefix_sums(seq)
    m = ps.means
    mp = np.power(m, -p)
    # One term per n so that fsum rounds the difference once.
    terms = seq._lam * mp * (1.0 - (p / (p + 1.0)) * (seq._a / m))
    lhs = math.fsum(terms.tolist())
    rhs = float(ps.Lam[-1]) / (p + 1.0) * float(mp[-1])
    Log.debug(f"lemma21_remainder(N={len(seq)}, p={p}): S_N={lhs:.12g} bound={rhs:.12g}", 2)
    return make_report(lhs, rhs, ">=", p=p, N=len(seq))


def lemma21_sides(seq: WeightedSequence, p: float) -> InequalityReport:
    """sum lam_n a_n m_n^{-p-1}  <=  ((p+1)/p) sum lam_n m_n^{-p}."""
    p = _check_p(p)
    m = prefix_sums(seq).means
    lhs = compensated_sum(seq._lam * np.power(m, -p) * (seq._a / m))
    rhs = _sharp(p) * _j(seq, m, p, 0.0)
    return make_report(lhs, rhs, p=p, N=len(seq))


def epsilon_sides(seq: WeightedSequence, p: float, eps: float) -> InequalityReport:
    """sum lam_n a_n^eps m_n^{-p-eps}  <=  ((p+1)/p)^eps sum lam_n m_n^{-p},   0 < eps <= 1."""
    p = _check_p(p)
    eps = float(eps)
    if not 0.0 < eps <= 1.0:
        raise InvalidExponents(f"need 0 < eps <= 1, got eps={eps}")
    m = prefix_sums(seq).means
    lhs = compensated_sum(seq._lam * np.power(m, -p) * np.power(seq._a / m, eps))
    rhs = _sharp(p) ** eps * _j(seq, m, p, 0.0)
    return make_report(lhs, rhs, p=p, eps=eps, N=len(seq))


def theorem4_sides(seq: WeightedSequence, p: float, q1: float, q2: float) -> InequalityReport:
    """J_{q1}  <=  ((p+1)/p)^{q2-q1} J_{q2},   0 < q1 <= q2 <= p."""
    p, q1, q2 = _check_q1q2(p, q1, q2)
    m = prefix_sums(seq).means
    lhs = _j(seq, m, p, q1)
    if q1 == q2:
        rhs = lhs
    else:
        rhs = _sharp(p) ** (q2 - q1) * _j(seq, m, p, q2)
    return make_report(lhs, rhs, p=p, q1=q1, q2=q2, N=len(seq))


def holder_chain(seq: WeightedSequence, p: float, q1: float, q2: float) -> HolderChain:
    """The interpolation step closing theorem4_sides."""
    p, q1, q2 = _check_q1q2(p, q1, q2)
    m = prefix_sums(seq).means
    j1 = _j(seq, m, p, q1)
    j2 = _j(seq, m, p, q2)
    j0 = _j(seq, m, p, 0.0)
    theta = q1 / q2
    bound = j2 ** theta * j0 ** (1.0 - theta)
    return HolderChain(j1, j2, j0, bound)


def elementary_gap(y: float, p: float) -> float:
    """p y^{p+1} - (p+1) y^p + 1, non-negative with its only zero at y = 1."""
    y = float(y)
    p = float(p)
    if y < 0.0:
        raise DomainError(f"need y >= 0, got {y}")
    if not p > 0.0:
        raise DomainError(f"need p > 0, got {p}")
    yp = y ** p
    return yp * (p * (y - 1.0) - 1.0) + 1.0


def two_point_gap(y1: float, y2: float, p: float) -> float:
    """y1^{-p} + p y1 y2^{-p-1} - (p+1) y2^{-p}, non-negative with zero iff y1 = y2."""
    y1, y2, p = float(y1), float(y2), float(p)
    if not (y1 > 0.0 and y2 > 0.0):
        raise DomainError(f"need y1, y2 > 0, got {y1}, {y2}")
    if not p > 0.0:
        raise DomainError(f"need p > 0, got {p}")
    z = y1 / y2
    return y2 ** (-p) * (z ** (-p) + p * z - (p + 1.0))


def corollary21_sides(a: Sequence[float], p: float, q: float) -> InequalityReport:
    """theorem2_sides with lam = 1, so m_n is the plain running mean."""
    return theorem2_sides(WeightedSequence(tuple(a)), p, q)


def power_sequence(n: int, d: float) -> WeightedSequence:
    """a_k = k^d for k = 1..n with unit weights."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    k = np.arange(1, n + 1, dtype=float)
    return WeightedSequence(tuple(np.power(k, float(d)).tolist()))
