"""Exceptions raised by dppdisc

Validation errors map to CLI exit code 2, numerical failures to exit code 3.

"""
from __future__ import absolute_import


class DppDiscError(Exception):
    """Base class for all dppdisc errors."""
    pass


class ValidationError(DppDiscError, ValueError):
    """Invalid input: bad points, bad parameters, bad config."""
    pass


class DomainError(ValidationError):
    """Argument outside the domain of the operation."""
    pass


class UnsupportedSpaceError(ValidationError):
    """Operation not available on this space (e.g. sampling on HP^d)."""
    pass


class ConfigError(ValidationError):
    """Configuration file or experiment config problem."""
    pass


class NumericalError(DppDiscError, ArithmeticError):
    """Numerical failure: degenerate factorisation, inconsistent rounding."""
    pass


class SamplerBudgetError(NumericalError):
    """Rejection sampler exceeded its proposal budget."""

    def __init__(self, message, diagnostics=None):
        super(SamplerBudgetError, self).__init__(message)
        self.diagnostics = diagnostics or {}


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, diagnostics=None):
        super(QuadratureError, self).__init__(message)
        self.diagnostics = diagnostics or {}
