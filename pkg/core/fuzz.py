# core/fuzz.py
'''
Copyright 2025 HardyCheck developers

Seeded random corpora for the inequality checks. The CLI's `fuzz` command and the
slow tests both run these; a given seed always draws the same cases.
'''
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from core.continuous_hardy import theorem1_sides
from core.discrete_hardy import (
    WeightedSequence,
    epsilon_sides,
    lemma21_remainder,
    theorem2_sides,
    theorem4_sides,
)
from core.log import Log
from core.muckenhoupt import exact_prefix_sup, solve_p0, theorem3_check
from core.numerics import DEFAULT_QUADRATURE, QuadratureConfig
from core.report import InequalityReport, json_float
from core.weights import PiecewiseConstantWeight
from utils.grids import DEFAULT_GRID, parse_grid

__all__ = [
    "FuzzSummary",
    "discrete_corpus",
    "continuous_corpus",
    "containment_corpus",
]


@dataclass(slots=True)
class FuzzSummary:
    name: str
    cases: int = 0
    failures: int = 0
    min_relative_margin: float = math.inf

    def record(self, report: InequalityReport):
        self.cases += 1
        if not report.holds:
            self.failures += 1
            Log.debug(f"{self.name}: violated {report.params} lhs={report.lhs!r} rhs={report.rhs!r}", 0)
        self.min_relative_margin = min(self.min_relative_margin, report.relative_margin)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "min_relative_margin": json_float(self.min_relative_margin),
        }


def _log_uniform(rng: np.random.Generator, lo: float, hi: float, n: int) -> np.ndarray:
    return 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), n)


def _open_unit(rng: np.random.Generator) -> float:
    """Uniform on (0, 1]."""
    return 1.0 - rng.random()


def _random_breakpoints(rng: np.random.Generator, cells: int) -> np.ndarray:
    inner = np.unique(rng.uniform(0.0, 1.0, cells - 1))
    inner = inner[(inner > 0.0) & (inner < 1.0)]
    return np.concatenate(([0.0], inner, [1.0]))


def discrete_corpus(seed: int, count: int = 10_000, max_n: int = 200, max_p: float = 10.0):
    """
    Random sequences with entries log-uniform in [1e-3, 1e3] and 0 < q <= p <= max_p.
    Each sequence runs the Hardy inequality, the remainder bound, the two-exponent
    bound and the eps-bound. Returns one FuzzSummary per check.
    """
    rng = np.random.default_rng(seed)
    summaries = {name: FuzzSummary(name) for name in ("theorem2", "lemma21", "theorem4", "epsilon")}
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        seq = WeightedSequence(tuple(_log_uniform(rng, 1e-3, 1e3, n)),
                               tuple(_log_uniform(rng, 1e-3, 1e3, n)))
        p = max_p * _open_unit(rng)
        q = p * _open_unit(rng)
        q1 = q * _open_unit(rng)
        eps = _open_unit(rng)
        summaries["theorem2"].record(theorem2_sides(seq, p, q))
        summaries["lemma21"].record(lemma21_remainder(seq, p))
        summaries["theorem4"].record(theorem4_sides(seq, p, q1, q))
        summaries["epsilon"].record(epsilon_sides(seq, p, eps))
    out = list(summaries.values())
    Log.debug(f"discrete_corpus(seed={seed}): {count} sequences, "
              f"{sum(s.failures for s in out)} failures", 1)
    return out


def continuous_corpus(seed: int, count: int = 1_000, max_cells: int = 50, max_p: float = 5.0,
                      cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> FuzzSummary:
    """Random piecewise weights on (0, 1) with values log-uniform in [1e-2, 1e2]."""
    rng = np.random.default_rng(seed)
    summary = FuzzSummary("theorem1")
    for _ in range(count):
        edges = _random_breakpoints(rng, int(rng.integers(1, max_cells + 1)))
        values = _log_uniform(rng, 1e-2, 1e2, edges.size - 1)
        weight = PiecewiseConstantWeight(tuple(edges), tuple(values))
        p = max_p * _open_unit(rng)
        q = p * _open_unit(rng)
        summary.record(theorem1_sides(weight, (0.0, 1.0), p, q, cfg))
    Log.debug(f"continuous_corpus(seed={seed}): {summary.cases} weights, "
              f"{summary.failures} failures", 1)
    return summary


def containment_corpus(seed: int, count: int = 200, max_cells: int = 20,
                       grid: Optional[Sequence[float]] = None) -> FuzzSummary:
    """
    Random non-decreasing piecewise weights with values in [0.1, 10] and q in [1.5, 3];
    p is drawn from (p0 + 0.01, q], or p = q when that range is empty.
    """
    rng = np.random.default_rng(seed)
    grid = list(grid) if grid is not None else parse_grid(DEFAULT_GRID)
    summary = FuzzSummary("theorem3")
    for _ in range(count):
        edges = _random_breakpoints(rng, int(rng.integers(1, max_cells + 1)))
        values = np.sort(_log_uniform(rng, 0.1, 10.0, edges.size - 1))
        weight = PiecewiseConstantWeight(tuple(edges), tuple(values), monotone=True)
        q = float(rng.uniform(1.5, 3.0))
        p0 = solve_p0(q, max(exact_prefix_sup(weight, q), 1.0)).p0
        lo = p0 + 0.01
        p = q if lo >= q else float(rng.uniform(lo, q))
        summary.record(theorem3_check(weight, q, p, grid))
    Log.debug(f"containment_corpus(seed={seed}): {summary.cases} weights, "
              f"{summary.failures} failures", 1)
    return summary
