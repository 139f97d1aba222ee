"""Exception hierarchy shared by every evaluation route."""

from __future__ import annotations


class GammaForgeError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(GammaForgeError, ValueError):
    """Argument outside the domain where a route is defined."""


class PoleError(DomainError):
    """Argument sits on a pole (or a zero of a denominator) of the route."""


class NearIntegerError(DomainError):
    """sin(pi s) too small for the second Hankel integral; use another route."""


class ConvergenceError(GammaForgeError, ArithmeticError):
    """Refinement cap reached before the requested tolerance.

    ``best`` carries the last (unconverged) result so callers can still
    inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DivergenceError(GammaForgeError, ArithmeticError):
    """Canonical product requested with a genus too small for the divisor."""


class EstimationError(GammaForgeError, ValueError):
    """Not enough usable data to fit an estimate."""


class NumericOverflowError(GammaForgeError, OverflowError):
    """A result does not fit in binary64."""
