"""Ground truth for the three worked examples, plus a brute-force tail oracle.

The worked examples, all against the sine kernel at unit frequency:

  * exp:       f(x) = exp(-alpha*x),   int_0^inf f sin = 1 / (1 + alpha^2)
  * invsqrt:   f(x) = 1/sqrt(x),       int_0^inf f sin = sqrt(pi/2)
  * cosoverx:  f(x) = cos(alpha*x)/x,  int_0^inf f sin = pi/2   (0 < alpha < 1)

Each example registers analytic derivative closures so the correction series
can be driven to high order. The oracle sums per-cycle integrals of the tail
directly and accelerates the alternating partial sums by repeated pairwise
averaging; it shares only the basic panel quadrature with the code it is used
to validate, never the end-point formulas themselves.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple

from .errors import ConvergenceError, NumericError
from .model import Integrand, KernelKind, OscillatoryKernel
from .quadrature import QuadratureConfig, integrate_finite, integrate_smooth

__all__ = [
    "ExampleKind",
    "ExampleSpec",
    "make_exp",
    "make_inv_sqrt",
    "make_cos_over_x",
    "example1_exact",
    "example1_truncated",
    "example1_tail",
    "example2_exact",
    "example2_error_series",
    "example2_truncated",
    "example3_exact",
    "example3_error_two_terms",
    "example3_truncated",
    "OracleReport",
    "oracle_tail",
    "oracle_tail_report",
]

# Derivative closures are registered up to this order; enough for the full
# order_k range of the correction series plus error estimates.
MAX_REGISTERED_DERIVATIVE = 20

_SINE_UNIT = OscillatoryKernel(KernelKind.SINE, 1.0)


class ExampleKind(Enum):
    EXP = "exp"
    INV_SQRT = "invsqrt"
    COS_OVER_X = "cosoverx"


@dataclass(frozen=True)
class ExampleSpec:
    """A worked example: its integrand (with derivatives) and exact value."""

    kind: ExampleKind
    exact_value: float
    integrand: Integrand
    alpha: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is ExampleKind.EXP:
            if self.alpha is None or not self.alpha > 0.0:
                raise ValueError("exp example requires alpha > 0")
            expected = 1.0 / (1.0 + self.alpha * self.alpha)
        elif self.kind is ExampleKind.INV_SQRT:
            expected = math.sqrt(math.pi / 2.0)
        else:
            if self.alpha is None or not (0.0 < self.alpha < 1.0):
                raise ValueError("cosoverx example requires 0 < alpha < 1")
            expected = math.pi / 2.0
        if not math.isclose(self.exact_value, expected, rel_tol=1e-15, abs_tol=0.0):
            raise ValueError("exact_value does not match the closed form")


def _exp_derivatives(alpha: float) -> List[Callable[[float], float]]:
    out = []
    for m in range(MAX_REGISTERED_DERIVATIVE + 1):
        c = (-alpha) ** m
        out.append(lambda x, c=c, a=alpha: c * math.exp(-a * x))
    return out


def make_exp(alpha: float) -> ExampleSpec:
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    integrand = Integrand(
        fn=lambda x, a=alpha: math.exp(-a * x),
        derivatives=_exp_derivatives(alpha),
        name=f"exp(-{alpha}*x)",
    )
    return ExampleSpec(
        kind=ExampleKind.EXP,
        exact_value=1.0 / (1.0 + alpha * alpha),
        integrand=integrand,
        alpha=alpha,
    )


def _inv_sqrt_derivatives() -> List[Callable[[float], float]]:
    # m-th derivative of x**(-1/2): prod_{j<m} (-(2j+1)/2) * x**(-(2m+1)/2)
    out = []
    coef = 1.0
    for m in range(MAX_REGISTERED_DERIVATIVE + 1):
        if m > 0:
            coef *= -(2.0 * m - 1.0) / 2.0
        expo = -(2.0 * m + 1.0) / 2.0
        out.append(lambda x, c=coef, e=expo: c * x**e)
    return out


def make_inv_sqrt() -> ExampleSpec:
    integrand = Integrand(
        fn=lambda x: 1.0 / math.sqrt(x),
        derivatives=_inv_sqrt_derivatives(),
        decay_exponent=-0.5,
        name="1/sqrt(x)",
    )
    return ExampleSpec(
        kind=ExampleKind.INV_SQRT,
        exact_value=math.sqrt(math.pi / 2.0),
        integrand=integrand,
    )


def _cos_over_x_derivative(alpha: float, m: int) -> Callable[[float], float]:
    # Leibniz on cos(alpha*x) * x**(-1); the trig factor cycles through
    # (cos, -sin, -cos, sin) so no floating-point phase shifts are needed.
    binom = [math.comb(m, j) for j in range(m + 1)]
    fact = [math.factorial(i) for i in range(m + 1)]

    def deriv(x: float) -> float:
        ax = alpha * x
        c = math.cos(ax)
        s = math.sin(ax)
        trig = (c, -s, -c, s)
        parts = []
        for j in range(m + 1):
            i = m - j
            u = alpha**j * trig[j % 4]
            v = (-1.0) ** i * fact[i] * x ** (-(i + 1))
            parts.append(binom[j] * u * v)
        return math.fsum(parts)

    return deriv


def make_cos_over_x(alpha: float) -> ExampleSpec:
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    derivs = [
        _cos_over_x_derivative(alpha, m) for m in range(MAX_REGISTERED_DERIVATIVE + 1)
    ]
    integrand = Integrand(
        fn=lambda x, a=alpha: math.cos(a * x) / x,
        derivatives=derivs,
        decay_exponent=-1.0,
        name=f"cos({alpha}*x)/x",
    )
    return ExampleSpec(
        kind=ExampleKind.COS_OVER_X,
        exact_value=math.pi / 2.0,
        integrand=integrand,
        alpha=alpha,
    )


# --------------------------------------------------------------------------
# Closed forms and example-specific error series.


def example1_exact(alpha: float) -> float:
    return 1.0 / (1.0 + alpha * alpha)


def example1_truncated(alpha: float, b: float) -> float:
    """int_0^b exp(-alpha*x) sin(x) dx at a sine zero b: (1 - e^(-alpha*b)) / (1 + alpha^2)."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if b < 0.0:
        raise ValueError("b must be nonnegative")
    return (1.0 - math.exp(-alpha * b)) / (1.0 + alpha * alpha)


def example1_tail(alpha: float, b: float) -> float:
    """Analytic tail int_b^inf exp(-alpha*x) sin(x) dx at a sine zero b."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if b < 0.0:
        raise ValueError("b must be nonnegative")
    return math.exp(-alpha * b) / (1.0 + alpha * alpha)


def example2_exact() -> float:
    return math.sqrt(math.pi / 2.0)


def example2_error_series(x: float, n_terms: int) -> float:
    """Residual of the one-point formula for 1/sqrt(x), as a signed partial sum.

    Term k is (-1)^k * [1*3*...*(4k-1)] / (2^(2k) * x^((4k+1)/2)). The series
    is asymptotic; a handful of terms is the useful regime and more than 20
    is refused outright (the odd product grows double-factorially).
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if n_terms > 20:
        raise NumericError("n_terms > 20: product overflow range")
    terms = []
    prod = 1.0
    j = 1
    for k in range(1, n_terms + 1):
        while j <= 4 * k - 1:
            prod *= j
            j += 2
        terms.append((-1.0) ** k * prod / (2.0 ** (2 * k) * x ** ((4 * k + 1) / 2.0)))
    return math.fsum(terms)


def example2_truncated(b: float, cfg: QuadratureConfig | None = None) -> float:
    """int_0^b sin(x)/sqrt(x) dx with the origin handled by substitution.

    On [0, min(b, pi)] the substitution x = t*t turns the integrand into
    2*sin(t*t), removing the inverse square root entirely; past pi the plain
    kernel-aligned quadrature takes over.
    """
    if b < 0.0:
        raise ValueError("b must be nonnegative")
    if b == 0.0:
        return 0.0
    s = min(b, math.pi)
    head, _ = integrate_smooth(lambda t: 2.0 * math.sin(t * t), 0.0, math.sqrt(s), cfg)
    if b <= s:
        return head
    rest = integrate_finite(make_inv_sqrt().integrand, _SINE_UNIT, s, b, cfg)
    return head + rest.finite_part


def example3_exact() -> float:
    return math.pi / 2.0


def example3_error_two_terms(x: float, alpha: float) -> float:
    """Two-group residual for cos(alpha*x)/x at points where sin(alpha*x) = 0
    and cos(alpha*x) = 1 (the caller asserts that phase condition):

        -(-alpha^2/x + 2/x^3) + (alpha^4/x - 12 alpha^2/x^3 + 24/x^5)

    These are the second- and fourth-derivative terms of the residual series.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    first = -(-(alpha**2) / x + 2.0 / x**3)
    second = alpha**4 / x - 12.0 * alpha**2 / x**3 + 24.0 / x**5
    return first + second


def example3_truncated(
    alpha: float, b: float, cfg: QuadratureConfig | None = None
) -> float:
    """int_0^b cos(alpha*x) sin(x) / x dx from the origin.

    The product integrand has a removable singularity at 0; quadrature nodes
    are strictly interior so the endpoint itself is never sampled.
    """
    if not b > 0.0:
        raise ValueError("b must be positive")
    spec = make_cos_over_x(alpha)
    return integrate_finite(spec.integrand, _SINE_UNIT, 0.0, b, cfg).finite_part


# --------------------------------------------------------------------------
# Brute-force tail oracle.

_EULER_DEPTH_CAP = 40


@dataclass(frozen=True)
class OracleReport:
    """Oracle output with diagnostics.

    partial_sums holds the raw (unaccelerated) per-cycle partial sums; for a
    monotone decreasing factor, consecutive entries bracket the true tail.
    bracket is the last such pair. underflowed marks a true value below the
    smallest positive normal number, reported as exact zero.
    """

    value: float
    cycles: int
    partial_sums: Tuple[float, ...]
    bracket: Optional[Tuple[float, float]]
    underflowed: bool


def oracle_tail_report(
    f: Integrand,
    kernel: OscillatoryKernel,
    b: float,
    target_rel_tol: float,
    max_cycles: int = 1_000_000,
) -> OracleReport:
    """Tail integral over [b, inf) by direct per-cycle summation.

    Each half-period cycle is integrated by the panel quadrature at a much
    tighter tolerance than requested, partial sums are accumulated with
    compensation, and the alternating sequence is accelerated by repeated
    pairwise averaging of adjacent partial sums (a binomial triangle of
    convex combinations, numerically stable at any depth). The run stops when
    the deepest accelerated value repeats to target_rel_tol twice in a row.
    """
    if not (0.0 < target_rel_tol < 1.0):
        raise ValueError("target_rel_tol must lie in (0, 1)")
    q = b * kernel.omega / math.pi - kernel.zero_phase
    if round(q) < 1 or abs(q - round(q)) > 1e-9 * max(1.0, abs(q)):
        raise ValueError("b must sit on a kernel zero")
    h = kernel.half_period
    cyc_cfg = QuadratureConfig(rel_tol=max(target_rel_tol * 1e-3, 1e-15))

    partial: List[float] = []
    diag: List[float] = []
    running = 0.0
    comp = 0.0  # Kahan compensation for the running sum
    best: Optional[float] = None
    streak = 0

    for k in range(max_cycles):
        left = b + k * h
        right = b + (k + 1) * h
        cycle_val = integrate_finite(f, kernel, left, right, cyc_cfg).finite_part

        y = cycle_val - comp
        t = running + y
        comp = (t - running) - y
        running = t
        partial.append(running)

        cur = running
        for j in range(len(diag)):
            prev = diag[j]
            diag[j] = cur
            cur = 0.5 * (prev + cur)
        if len(diag) < _EULER_DEPTH_CAP:
            diag.append(cur)

        prev_best = best
        best = cur
        if prev_best is not None and k >= 5:
            scale = max(abs(best), sys.float_info.min)
            if abs(best - prev_best) <= target_rel_tol * scale:
                streak += 1
                if streak >= 2:
                    break
            else:
                streak = 0
    else:
        assert best is not None
        raise ConvergenceError(best, abs(best - (prev_best if prev_best is not None else best)))

    bracket = None
    if len(partial) >= 2:
        lo, hi = partial[-2], partial[-1]
        bracket = (min(lo, hi), max(lo, hi))
    value = best
    underflowed = False
    if value != 0.0 and abs(value) < sys.float_info.min:
        value = 0.0
        underflowed = True
    return OracleReport(
        value=value,
        cycles=len(partial),
        partial_sums=tuple(partial),
        bracket=bracket,
        underflowed=underflowed,
    )


def oracle_tail(
    f: Integrand,
    kernel: OscillatoryKernel,
    b: float,
    target_rel_tol: float,
    max_cycles: int = 1_000_000,
) -> float:
    return oracle_tail_report(f, kernel, b, target_rel_tol, max_cycles).value
