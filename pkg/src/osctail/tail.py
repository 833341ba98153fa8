"""Truncation-point selection and end-point tail corrections.

With the truncation abscissa b placed on a kernel zero (b = N*pi/omega for
sine, (N - 1/2)*pi/omega for cosine), repeated integration by parts turns the
whole tail integral over [b, inf) into an alternating end-point series

    (-1)^N * f(b)/omega  +  sum_i (-1)^(N+i) * f^(2i)(b) / omega^(2i+1)

whose leading term alone (a single function evaluation) already replaces the
truncation error by a much smaller discretization error. Truncating at the
sine kernel's extrema instead shifts the series onto odd derivatives. The
first omitted term doubles as an analytic error estimate. This module builds
those corrections and composes them with the finite-interval quadrature into
a full semi-infinite integrator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from . import numdiff
from .errors import ConfigurationError, EvaluationError
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
from .quadrature import QuadratureConfig, integrate_finite

__all__ = [
    "DerivativeSource",
    "CorrectionSpec",
    "FD_MAX_ORDER_K",
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

# Numerical differentiation loses roughly an order of magnitude of accuracy,
# so the finite-difference fallback refuses to feed high-order terms.
FD_MAX_ORDER_K = 2

# Fraction of the kernel frequency above which a known secondary oscillation
# in the smooth factor triggers a warning (never an error).
SECONDARY_FREQUENCY_RATIO = 0.5


class DerivativeSource(Enum):
    ANALYTIC_REQUIRED = "analytic"
    FINITE_DIFFERENCE_FALLBACK = "fd-fallback"


@dataclass(frozen=True)
class CorrectionSpec:
    """How many correction terms to take and where derivatives come from.

    order_k = 0 is the one-point formula; each extra order adds one
    derivative term. emit_error_estimate requests the magnitude of the first
    omitted term alongside the correction value.
    """

    order_k: int = 0
    derivative_source: DerivativeSource = DerivativeSource.FINITE_DIFFERENCE_FALLBACK
    emit_error_estimate: bool = False

    def __post_init__(self) -> None:
        if not (0 <= self.order_k <= 8):
            raise ValueError("order_k must lie in 0..8")


class SecondaryOscillationWarning(UserWarning):
    """The smooth factor oscillates too fast relative to the kernel."""


def select_truncation(
    kernel: OscillatoryKernel,
    rule: TruncationRule,
    min_length: float,
    a: float = 0.0,
) -> TruncationPoint:
    """Smallest aligned truncation abscissa b >= max(a, min_length).

    Sine with the zeros rule lands on N*pi/omega; cosine (its natural zeros
    rule) and sine with the extrema rule land on (N - 1/2)*pi/omega.
    """
    if not (min_length > 0.0):
        raise ValueError("min_length must be positive")
    if a < 0.0:
        raise ValueError("a must be nonnegative")
    if rule is TruncationRule.KERNEL_ZEROS:
        offset = kernel.zero_phase
    elif kernel.kind is KernelKind.SINE:
        offset = 0.5
    else:
        raise ValueError("extrema-rule truncation is only defined for the sine kernel")
    lo = max(a, min_length)
    q = lo * kernel.omega / math.pi
    # Treat abscissae already aligned to within rounding noise as aligned.
    n = max(1, math.ceil(q + offset - 1e-12 * max(1.0, q)))
    return TruncationPoint.from_index(kernel, rule, n)


def _omega_pow(omega: float, p: int) -> float:
    # omega**1 must be omega bit-for-bit so that an order-0 series run
    # reproduces the one-point formula exactly.
    return omega if p == 1 else omega**p


def _fd_step(kernel: OscillatoryKernel) -> float:
    # Tie the stencil width to the kernel cycle so probes stay in the
    # asymptotic regime around the truncation point.
    return math.pi / (16.0 * kernel.omega)


def _derivative_value(
    f: Integrand,
    kernel: OscillatoryKernel,
    m: int,
    x: float,
    spec: CorrectionSpec,
) -> float:
    closure = f.derivative(m)
    if closure is not None:
        v = closure(x)
    elif spec.derivative_source is DerivativeSource.ANALYTIC_REQUIRED:
        raise ConfigurationError(
            f"{f.name}: derivative of order {m} not registered and analytic "
            "derivatives were required"
        )
    elif spec.order_k > FD_MAX_ORDER_K:
        raise ConfigurationError(
            f"finite-difference fallback supports order_k <= {FD_MAX_ORDER_K}; "
            f"register analytic derivatives for order_k={spec.order_k}"
        )
    else:
        v, _ = numdiff.central_derivative(f.fn, m, x, _fd_step(kernel))
    if not math.isfinite(v):
        raise EvaluationError(x)
    return v


def _first_omitted_magnitude(
    f: Integrand,
    kernel: OscillatoryKernel,
    m: int,
    x: float,
    spec: CorrectionSpec,
) -> Optional[float]:
    """|f^(m)(x)| / omega^(m+1) for the first omitted term, or None.

    Falls back to finite differences only while the stencil quality bound
    holds; past that the estimate is silently unavailable rather than noisy.
    """
    closure = f.derivative(m)
    if closure is not None:
        v = closure(x)
    elif (
        spec.derivative_source is DerivativeSource.FINITE_DIFFERENCE_FALLBACK
        and m <= 2 * FD_MAX_ORDER_K + 1
    ):
        v, _ = numdiff.central_derivative(f.fn, m, x, _fd_step(kernel))
    else:
        return None
    if not math.isfinite(v):
        raise EvaluationError(x)
    return abs(v) / _omega_pow(kernel.omega, m + 1)


_ZEROTH_SPEC = CorrectionSpec(order_k=0)


def correct_zeroth(
    f: Integrand, kernel: OscillatoryKernel, t: TruncationPoint
) -> CorrectionResult:
    """One-point tail value (-1)^N * f(b) / omega at a zero-aligned b."""
    return correct_series(f, kernel, t, _ZEROTH_SPEC)


def correct_series(
    f: Integrand,
    kernel: OscillatoryKernel,
    t: TruncationPoint,
    spec: CorrectionSpec,
) -> CorrectionResult:
    """Zero-aligned tail series: sum_i (-1)^(N+i) f^(2i)(b) / omega^(2i+1).

    The i = 0 term is the one-point formula; order_k extra even-derivative
    terms follow. Term magnitudes are recorded individually and the value is
    their exactly rounded sum.
    """
    t.validate_against(kernel)
    if t.rule is not TruncationRule.KERNEL_ZEROS:
        raise ValueError("series correction requires zero-aligned truncation")
    terms: List[float] = []
    for i in range(spec.order_k + 1):
        v = _derivative_value(f, kernel, 2 * i, t.b, spec)
        terms.append(parity_sign(t.n_index + i) * v / _omega_pow(kernel.omega, 2 * i + 1))
    est = None
    if spec.emit_error_estimate:
        est = _first_omitted_magnitude(f, kernel, 2 * (spec.order_k + 1), t.b, spec)
    return CorrectionResult.from_terms(terms, spec.order_k, est)


def correct_extrema(
    f: Integrand,
    kernel: OscillatoryKernel,
    t: TruncationPoint,
    spec: CorrectionSpec,
) -> CorrectionResult:
    """Extrema-aligned tail series led by the first derivative.

    Truncating the sine kernel at (N - 1/2)*pi/omega moves the end-point
    series onto odd derivatives: sum_i (-1)^(N+i) f^(2i+1)(x_T) / omega^(2i+2).
    The leading term is smaller than the zero-aligned one whenever f varies
    slowly, at the cost of needing derivatives from the start.
    """
    t.validate_against(kernel)
    if t.rule is not TruncationRule.KERNEL_EXTREMA:
        raise ValueError("extrema correction requires extrema-aligned truncation")
    if kernel.kind is not KernelKind.SINE:
        raise ValueError("extrema correction is only defined for the sine kernel")
    terms: List[float] = []
    for i in range(spec.order_k + 1):
        v = _derivative_value(f, kernel, 2 * i + 1, t.b, spec)
        terms.append(parity_sign(t.n_index + i) * v / _omega_pow(kernel.omega, 2 * i + 2))
    est = None
    if spec.emit_error_estimate:
        est = _first_omitted_magnitude(f, kernel, 2 * (spec.order_k + 1) + 1, t.b, spec)
    return CorrectionResult.from_terms(terms, spec.order_k, est)


def error_estimate(
    f: Integrand, kernel: OscillatoryKernel, t: TruncationPoint, k: int
) -> float:
    """Signed residual series of the one-point formula, truncated at k terms.

    Returns sum_{i=1}^{k-1} (-1)^(N+i) f^(2i)(b) / omega^(2i+1), the
    correction terms beyond the one-point value; an empty sum (k = 1) is 0.
    Derivatives must be registered on the integrand.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    t.validate_against(kernel)
    if t.rule is not TruncationRule.KERNEL_ZEROS:
        raise ValueError("the residual series is defined for zero-aligned truncation")
    terms: List[float] = []
    for i in range(1, k):
        closure = f.derivative(2 * i)
        if closure is None:
            raise ConfigurationError(
                f"{f.name}: derivative of order {2 * i} not registered"
            )
        v = closure(t.b)
        if not math.isfinite(v):
            raise EvaluationError(t.b)
        terms.append(parity_sign(t.n_index + i) * v / _omega_pow(kernel.omega, 2 * i + 1))
    return math.fsum(terms)


class _CallCounter:
    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0


def _counted_integrand(f: Integrand, counter: _CallCounter) -> Integrand:
    def wrap(fn):
        def counted(x: float) -> float:
            counter.count += 1
            return fn(x)

        return counted

    derivs = None
    if f.derivatives is not None:
        derivs = [wrap(d) if d is not None else None for d in f.derivatives]
    return Integrand(
        fn=wrap(f.fn),
        derivatives=derivs,
        decay_exponent=f.decay_exponent,
        name=f.name,
    )


def integrate_semi_infinite(
    f: Integrand,
    kernel: OscillatoryKernel,
    a: float,
    min_length: float,
    qcfg: QuadratureConfig | None = None,
    cspec: CorrectionSpec | None = None,
) -> IntegralResult:
    """Full integral over [a, inf): finite part plus end-point tail series.

    The truncation abscissa is the smallest zero-aligned point at or beyond
    max(a, min_length); the finite part runs through the adaptive quadrature
    and the tail is closed by correct_series. The caller asserts existence of
    the integral. evaluations counts every call into f, quadrature samples
    and derivative evaluations alike.
    """
    if qcfg is None:
        qcfg = QuadratureConfig()
    if cspec is None:
        cspec = CorrectionSpec()
    t = select_truncation(kernel, TruncationRule.KERNEL_ZEROS, min_length, a)
    counter = _CallCounter()
    counted = _counted_integrand(f, counter)
    if t.b > a:
        finite = integrate_finite(counted, kernel, a, t.b, qcfg)
        finite_part = finite.finite_part
        quad_err = finite.error_estimate or 0.0
    else:
        finite_part = 0.0
        quad_err = 0.0
    corr = correct_series(counted, kernel, t, cspec)
    err = quad_err if corr.error_estimate is None else quad_err + corr.error_estimate
    return IntegralResult.build(
        finite_part=finite_part,
        tail_correction=corr.value,
        error_estimate=err,
        evaluations=counter.count,
        b_used=t.b,
    )


def _reflected(f: Integrand) -> Integrand:
    def flip(fn, m: int):
        sign = -1.0 if m & 1 else 1.0
        return lambda y: sign * fn(-y)

    derivs = None
    if f.derivatives is not None:
        derivs = [
            flip(d, m) if d is not None else None
            for m, d in enumerate(f.derivatives)
        ]
    return Integrand(
        fn=lambda y: f.fn(-y),
        derivatives=derivs,
        decay_exponent=f.decay_exponent,
        name=f"{f.name} reflected",
    )


def integrate_left_tail(
    f: Integrand,
    kernel: OscillatoryKernel,
    b_left: TruncationPoint,
    spec: CorrectionSpec,
) -> CorrectionResult:
    """Tail over (-inf, -b] by reflection onto the right tail.

    With g(y) = f(-y), the sine kernel picks up a sign flip (sine is odd)
    while the cosine kernel does not:

        int_{-inf}^{-b} f(x) sin(omega x) dx = -int_b^inf g(y) sin(omega y) dy
        int_{-inf}^{-b} f(x) cos(omega x) dx = +int_b^inf g(y) cos(omega y) dy

    The right-tail integral is closed by correct_series on g; f must be
    defined on (-inf, -b] and g must satisfy the usual decay conditions.
    """
    inner = correct_series(_reflected(f), kernel, b_left, spec)
    sign = -1.0 if kernel.kind is KernelKind.SINE else 1.0
    terms = tuple(sign * term for term in inner.terms)
    return CorrectionResult.from_terms(terms, inner.order_k, inner.error_estimate)


def warn_if_secondary_oscillation(
    secondary_omega: float, kernel: OscillatoryKernel, name: str = "f"
) -> None:
    """Warn when a known secondary oscillation rivals the kernel frequency.

    The end-point series assumes the smooth factor varies slowly across one
    kernel cycle; a secondary frequency at or above half the kernel frequency
    erodes that assumption. This is advisory only and never raises.
    """
    if secondary_omega >= SECONDARY_FREQUENCY_RATIO * kernel.omega:
        warnings.warn(
            f"{name} oscillates at frequency {secondary_omega!r}, at least half "
            f"the kernel frequency {kernel.omega!r}; end-point corrections may "
            "degrade",
            SecondaryOscillationWarning,
            stacklevel=2,
        )


def decay_bound_exponent(gamma: float, order_k: int) -> float:
    """Exponent of the remainder bound after an order_k correction.

    For integrands whose m-th derivative decays like x**(gamma - m), the
    remainder after the order_k series is bounded by a constant times
    N**(gamma - 2*(order_k + 1) + 1). Only the exponent shape is reported;
    no constant is known.
    """
    return gamma - 2 * (order_k + 1) + 1
