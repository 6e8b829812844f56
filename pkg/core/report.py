# core/report.py
'''
Copyright 2025 HardyCheck developers

InequalityReport: evaluated sides of one checked inequality plus its verdict.
'''
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

__all__ = [
    "REPORT_RTOL",
    "InequalityReport",
    "make_report",
    "json_float",
    "REPORT_CSV_FIELDS",
]

# Rounding can leave tiny negative margins on exact equalities.
REPORT_RTOL = 1e-9

REPORT_CSV_FIELDS = ["lhs", "rhs", "ratio", "margin", "holds"]


def json_float(x: float) -> Any:
    """JSON has no infinity literal; non-finite values go out as strings."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass(slots=True, frozen=True)
class InequalityReport:
    """
    lhs/rhs as evaluated. margin is oriented so that a non-negative margin means
    the inequality holds, whichever way it points.
    """
    lhs: float
    rhs: float
    ratio: float
    margin: float
    holds: bool
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lhs": json_float(self.lhs),
            "rhs": json_float(self.rhs),
            "ratio": json_float(self.ratio),
            "margin": json_float(self.margin),
            "holds": self.holds,
            "params": {k: (json_float(v) if isinstance(v, float) else v)
                       for k, v in self.params.items()},
        }

    def csv_row(self) -> List[Any]:
        return [json_float(self.lhs), json_float(self.rhs), json_float(self.ratio),
                json_float(self.margin), self.holds]

    @property
    def relative_margin(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.margin / scale if scale > 0.0 else 0.0


def make_report(lhs: float, rhs: float, relation: str = "<=", **params: Any) -> InequalityReport:
    """
    Build a report for lhs <= rhs (relation "<=") or lhs >= rhs (relation ">=").
    holds iff margin >= -REPORT_RTOL * max(|lhs|, |rhs|).
    """
    lhs = float(lhs)
    rhs = float(rhs)
    if relation == "<=":
        margin = rhs - lhs
    elif relation == ">=":
        margin = lhs - rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")

    if rhs != 0.0:
        ratio = lhs / rhs
    else:
        ratio = math.inf if lhs != 0.0 else 1.0

    scale = max(abs(lhs), abs(rhs))
    if math.isfinite(margin):
        holds = margin >= -REPORT_RTOL * scale
    else:
        holds = margin > 0.0
    if relation == ">=":
        params = {"relation": ">=", **params}
    return InequalityReport(lhs, rhs, ratio, margin, holds, params)
