"""Semi-infinite oscillatory integrals with end-point tail corrections.

Integrals of the form int_a^inf f(x) sin(omega x) dx (or cos) are computed by
truncating at a kernel-aligned abscissa, integrating the finite part with a
panel quadrature aligned to the kernel's zeros, and closing the tail with an
end-point correction series whose leading term needs only one extra function
evaluation. Reference closed forms, error series and a brute-force tail
oracle back the test suite and the bundled tables.
"""

from .errors import (
    ConfigurationError,
    ConvergenceError,
    EvaluationError,
    NumericError,
    OsctailError,
)
from .model import (
    CorrectionResult,
    Integrand,
    IntegralResult,
    KernelKind,
    OscillatoryKernel,
    TruncationPoint,
    TruncationRule,
    parity_sign,
)
from .quadrature import QuadratureConfig, cycle_breakpoints, integrate_finite
from .tail import (
    CorrectionSpec,
    DerivativeSource,
    SecondaryOscillationWarning,
    correct_extrema,
    correct_series,
    correct_zeroth,
    decay_bound_exponent,
    error_estimate,
    integrate_left_tail,
    integrate_semi_infinite,
    select_truncation,
    warn_if_secondary_oscillation,
)

__all__ = [
    "OsctailError",
    "EvaluationError",
    "ConvergenceError",
    "ConfigurationError",
    "NumericError",
    "KernelKind",
    "TruncationRule",
    "Integrand",
    "OscillatoryKernel",
    "TruncationPoint",
    "CorrectionResult",
    "IntegralResult",
    "parity_sign",
    "QuadratureConfig",
    "cycle_breakpoints",
    "integrate_finite",
    "CorrectionSpec",
    "DerivativeSource",
    "SecondaryOscillationWarning",
    "select_truncation",
    "correct_zeroth",
    "correct_series",
    "correct_extrema",
    "error_estimate",
    "integrate_semi_infinite",
    "integrate_left_tail",
    "warn_if_secondary_oscillation",
    "decay_bound_exponent",
]

__version__ = "0.1.0"
