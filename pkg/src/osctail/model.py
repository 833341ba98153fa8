"""Domain types shared by the quadrature, tail-correction and reference modules.

Everything here is an immutable value object; instances are safe to share
across threads. Integrand callables (and any registered derivative closures)
must themselves tolerate concurrent invocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

__all__ = [
    "KernelKind",
    "TruncationRule",
    "Integrand",
    "OscillatoryKernel",
    "TruncationPoint",
    "CorrectionResult",
    "IntegralResult",
    "parity_sign",
]


class KernelKind(Enum):
    SINE = "sin"
    COSINE = "cos"


class TruncationRule(Enum):
    """Where the truncation abscissa sits relative to the kernel."""

    KERNEL_ZEROS = "zeros"
    KERNEL_EXTREMA = "extrema"


def parity_sign(n: int) -> float:
    """(-1)**n computed from integer parity.

    Evaluating cos(n*pi) in floating point can flip sign for large n, so the
    alternating sign is always taken from the cycle index itself.
    """
    return -1.0 if n & 1 else 1.0


@dataclass(frozen=True)
class Integrand:
    """The smooth factor f multiplying the oscillatory kernel.

    fn must be defined and finite for every x at or above the problem's lower
    limit. ``derivatives``, when given, is indexed by derivative order
    (``derivatives[m]`` evaluates the m-th derivative; entry 0 may repeat fn).
    ``decay_exponent`` is an optional power-law hint gamma < 0 meaning the
    m-th derivative behaves like x**(gamma - m) far out; it only feeds
    error-bound reporting and never changes computed values.
    """

    fn: Callable[[float], float]
    derivatives: Optional[Sequence[Callable[[float], float]]] = None
    decay_exponent: Optional[float] = None
    name: str = "f"

    def __post_init__(self) -> None:
        if self.decay_exponent is not None and not self.decay_exponent < 0:
            raise ValueError("decay_exponent must be negative when given")

    def __call__(self, x: float) -> float:
        return self.fn(x)

    def derivative(self, m: int) -> Optional[Callable[[float], float]]:
        """Registered closure for the m-th derivative, or None."""
        if m < 0:
            raise ValueError("derivative order must be nonnegative")
        if m == 0:
            return self.fn
        if self.derivatives is not None and m < len(self.derivatives):
            return self.derivatives[m]
        return None


@dataclass(frozen=True)
class OscillatoryKernel:
    """sin(omega*x) or cos(omega*x) with omega strictly positive."""

    kind: KernelKind
    omega: float

    def __post_init__(self) -> None:
        if not (self.omega > 0.0) or not math.isfinite(self.omega):
            raise ValueError("omega must be a finite positive number")

    def __call__(self, x: float) -> float:
        if self.kind is KernelKind.SINE:
            return math.sin(self.omega * x)
        return math.cos(self.omega * x)

    @property
    def half_period(self) -> float:
        """Length of one sign-constant cycle, pi/omega."""
        return math.pi / self.omega

    @property
    def zero_phase(self) -> float:
        """Zeros sit at (k + zero_phase) * pi / omega for integer k."""
        return 0.0 if self.kind is KernelKind.SINE else 0.5


def _alignment_offset(kind: KernelKind, rule: TruncationRule) -> float:
    """Truncation abscissae satisfy b*omega = (n - offset)*pi.

    Sine truncated at its zeros uses n*pi. Cosine truncated at its zeros, and
    sine truncated at its extrema, both use (n - 1/2)*pi. Cosine at extrema is
    not part of the supported contract.
    """
    if rule is TruncationRule.KERNEL_ZEROS:
        return 0.0 if kind is KernelKind.SINE else 0.5
    if kind is KernelKind.SINE:
        return 0.5
    raise ValueError("extrema-rule truncation is only defined for the sine kernel")


@dataclass(frozen=True)
class TruncationPoint:
    """Aligned truncation abscissa b with its cycle index n_index >= 1."""

    b: float
    n_index: int
    rule: TruncationRule

    def __post_init__(self) -> None:
        if self.n_index < 1:
            raise ValueError("n_index must be >= 1")
        if not (self.b > 0.0) or not math.isfinite(self.b):
            raise ValueError("b must be a finite positive number")

    @classmethod
    def from_index(
        cls, kernel: OscillatoryKernel, rule: TruncationRule, n: int
    ) -> "TruncationPoint":
        offset = _alignment_offset(kernel.kind, rule)
        b = (n - offset) * math.pi / kernel.omega
        return cls(b=b, n_index=n, rule=rule)

    def validate_against(self, kernel: OscillatoryKernel) -> None:
        """Check the alignment invariant b*omega = (n - offset)*pi to 4 ulp."""
        offset = _alignment_offset(kernel.kind, self.rule)
        target = (self.n_index - offset) * math.pi
        actual = self.b * kernel.omega
        slack = 4.0 * math.ulp(max(abs(target), abs(actual)))
        if abs(actual - target) > slack:
            raise ValueError(
                f"truncation point b={self.b!r} is not aligned for "
                f"{kernel.kind.value} / {self.rule.value} with n={self.n_index}"
            )
        if round(actual / math.pi + offset) != self.n_index:
            raise ValueError("n_index does not reconstruct from b")

    def reconstructed_index(self, kernel: OscillatoryKernel) -> int:
        offset = _alignment_offset(kernel.kind, self.rule)
        return round(self.b * kernel.omega / math.pi + offset)


@dataclass(frozen=True)
class CorrectionResult:
    """Signed tail estimate with its per-term breakdown.

    ``terms[i]`` is the contribution of the derivative-order-2i term (order
    2i+1 for the extrema rule). ``value`` is the exactly rounded sum of
    ``terms``. ``error_estimate``, when present, is the magnitude of the
    first omitted term of the correction series.
    """

    value: float
    order_k: int
    terms: Tuple[float, ...]
    error_estimate: Optional[float] = None

    @classmethod
    def from_terms(
        cls,
        terms: Sequence[float],
        order_k: int,
        error_estimate: Optional[float] = None,
    ) -> "CorrectionResult":
        return cls(
            value=math.fsum(terms),
            order_k=order_k,
            terms=tuple(terms),
            error_estimate=error_estimate,
        )


@dataclass(frozen=True)
class IntegralResult:
    """Finite-part value plus tail correction; total is their single addition."""

    finite_part: float
    tail_correction: float
    total: float
    error_estimate: Optional[float]
    evaluations: int
    b_used: float

    @classmethod
    def build(
        cls,
        finite_part: float,
        tail_correction: float,
        error_estimate: Optional[float],
        evaluations: int,
        b_used: float,
    ) -> "IntegralResult":
        return cls(
            finite_part=finite_part,
            tail_correction=tail_correction,
            total=finite_part + tail_correction,
            error_estimate=error_estimate,
            evaluations=evaluations,
            b_used=b_used,
        )
