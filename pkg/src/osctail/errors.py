"""Exception types raised by the library."""

from __future__ import annotations


class OsctailError(Exception):
    """Base class for all library-specific failures."""


class EvaluationError(OsctailError):
    """An integrand returned a non-finite value; carries the offending x."""

    def __init__(self, x: float, message: str | None = None):
        self.x = x
        super().__init__(message or f"integrand is not finite at x={x!r}")


class ConvergenceError(OsctailError):
    """A tolerance could not be met; carries the best estimate reached."""

    def __init__(self, best_estimate: float, error_estimate: float, message: str | None = None):
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        super().__init__(
            message
            or f"tolerance not reached (best estimate {best_estimate!r}, "
            f"estimated error {error_estimate!r})"
        )


class ConfigurationError(OsctailError):
    """A requested operation needs inputs the caller did not provide."""


class NumericError(OsctailError):
    """A numeric degeneracy (step underflow, series overflow range)."""
