"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "GaugefluxError",
    "ConfigurationError",
    "QuadratureConvergenceError",
    "PathAlignmentError",
    "SeparabilityError",
    "ConfinementError",
]


class GaugefluxError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(GaugefluxError):
    """A scenario or run configuration is invalid."""


class QuadratureConvergenceError(GaugefluxError):
    """An adaptive quadrature exhausted its subdivision budget.

    Carries the best available estimate and the final error bound so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class PathAlignmentError(GaugefluxError):
    """A polyline segment is not aligned with a coordinate axis."""


class SeparabilityError(GaugefluxError):
    """A flux surface does not split into single-variable parts on the window."""


class ConfinementError(GaugefluxError):
    """A flux region touches the integration boundary where it must vanish."""
