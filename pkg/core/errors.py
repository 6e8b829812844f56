# core/errors.py
'''
Copyright 2025 HardyCheck developers

Exception hierarchy for HardyCheck. Nothing in core/ swallows these; the CLI maps
them to exit status 2.
'''
from __future__ import annotations

__all__ = [
    "HardyCheckError",
    "DomainError",
    "InvalidExponents",
    "Divergent",
    "ToleranceNotMet",
    "NoSignChange",
    "HypothesisViolated",
    "OutOfRange",
    "NotMonotone",
    "ParseError",
]

class HardyCheckError(Exception):
    """Base class for every error raised by HardyCheck"""
    pass

class DomainError(HardyCheckError, ValueError):
    """An argument lies outside the domain of the operation"""
    pass

class InvalidExponents(DomainError):
    """Exponents violate the ordering required by an inequality (e.g. 0 < q <= p)"""
    pass

class Divergent(HardyCheckError):
    """An integral (or characteristic built from one) is infinite"""
    pass

class ToleranceNotMet(HardyCheckError):
    """Adaptive quadrature ran out of subdivisions before reaching tolerance"""

    def __init__(self, message: str, error_estimate: float, subdivisions: int):
        super().__init__(message)
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions

class NoSignChange(HardyCheckError):
    """Bisection bracket does not straddle a root"""
    pass

class HypothesisViolated(HardyCheckError):
    """A lemma hypothesis failed its numerical probe"""
    pass

class OutOfRange(HardyCheckError):
    """Exponent p outside (p0, q] for the self-improvement bound"""
    pass

class NotMonotone(HardyCheckError):
    """A monotone weight was required"""
    pass

class ParseError(HardyCheckError):
    """Input JSON or a grid spec could not be parsed"""
    pass
