"""Finite-interval quadrature for integrals of f(x) * sin(omega*x) or cos(omega*x).

Panels are aligned to the kernel's zeros so that the integrand is smooth and
sign-coherent inside each panel; an adaptive midpoint-bisection loop then
refines the worst panel until the summed error estimate meets the requested
relative tolerance. Everything is deterministic: fixed node sets, fixed
split rule, fixed left-to-right compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np

from .errors import ConvergenceError, EvaluationError
from .model import Integrand, IntegralResult, OscillatoryKernel

__all__ = ["QuadratureConfig", "cycle_breakpoints", "integrate_finite"]

_NODE_CACHE: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}


def _gauss_nodes(n: int) -> Tuple[np.ndarray, np.ndarray]:
    if n not in _NODE_CACHE:
        _NODE_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _NODE_CACHE[n]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerance and panel controls for the finite-interval integrator.

    rel_tol is the target relative error of the whole interval. Each panel
    is evaluated with a fixed nodes_per_panel Gauss-Legendre rule plus an
    embedded half-order rule whose disagreement serves as the panel's error
    estimate. A single starting cycle may be split at most
    max_subdivisions_per_cycle times before the run gives up.
    """

    rel_tol: float = 1e-10
    max_subdivisions_per_cycle: int = 64
    nodes_per_panel: int = 15

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.nodes_per_panel < 3:
            raise ValueError("nodes_per_panel must be >= 3")
        m = self.max_subdivisions_per_cycle
        if m < 1 or (m & (m - 1)) != 0:
            raise ValueError("max_subdivisions_per_cycle must be a power of two")


def cycle_breakpoints(a: float, b: float, kernel: OscillatoryKernel) -> List[float]:
    """Panel boundaries from a to b: every kernel zero strictly inside (a, b).

    The returned sequence is strictly increasing, starts at a, ends at b, and
    has gaps of at most one half-period pi/omega. Zeros are computed directly
    as (k + phase) * pi/omega, never by accumulation, so interior points stay
    exact multiples of the half-period.
    """
    if not (a < b):
        raise ValueError("lower limit must be strictly below upper limit")
    h = kernel.half_period
    phase = kernel.zero_phase
    fuzz = 1e-9 * h  # suppress sliver panels when a or b sits on a zero
    k = math.floor(a / h - phase) + 1
    points = [a]
    while True:
        z = (k + phase) * h
        if z >= b - fuzz:
            break
        if z > a + fuzz:
            points.append(z)
        k += 1
    points.append(b)
    return points


def _adaptive(
    sample: Callable[[float], float],
    points: List[float],
    cfg: QuadratureConfig,
) -> Tuple[float, float, int]:
    """Worst-panel-first adaptive refinement over consecutive intervals.

    Returns (value, error_estimate, sample_evaluations). The accepted value
    per panel is the full-order Gauss rule; the embedded lower-order rule
    only feeds the error estimate. Acceptance compares the summed estimate
    against rel_tol times the result's scale, where the scale is the larger
    of |total| and the largest single panel magnitude (so full-cycle
    cancellation does not stall the loop).
    """
    n_hi = cfg.nodes_per_panel
    n_lo = max(n_hi // 2, 1)
    nodes_hi, weights_hi = _gauss_nodes(n_hi)
    nodes_lo, weights_lo = _gauss_nodes(n_lo)
    evaluations = 0

    def make_panel(left: float, right: float, cycle: int) -> List:
        nonlocal evaluations
        mid = 0.5 * (left + right)
        half = 0.5 * (right - left)
        q_hi = 0.0
        for t, w in zip(nodes_hi, weights_hi):
            q_hi += w * sample(mid + half * t)
        q_lo = 0.0
        for t, w in zip(nodes_lo, weights_lo):
            q_lo += w * sample(mid + half * t)
        q_hi *= half
        q_lo *= half
        evaluations += n_hi + n_lo
        return [left, right, q_hi, abs(q_hi - q_lo), cycle]

    panels = [make_panel(points[i], points[i + 1], i) for i in range(len(points) - 1)]
    splits = [0] * (len(points) - 1)

    while True:
        total = math.fsum(p[2] for p in panels)
        err = math.fsum(p[3] for p in panels)
        scale = max(abs(total), max(abs(p[2]) for p in panels))
        if err <= cfg.rel_tol * scale:
            return total, err, evaluations
        worst = max(range(len(panels)), key=lambda i: (panels[i][3], -panels[i][0]))
        cycle = panels[worst][4]
        if splits[cycle] >= cfg.max_subdivisions_per_cycle:
            raise ConvergenceError(total, err)
        splits[cycle] += 1
        left, right = panels[worst][0], panels[worst][1]
        mid = 0.5 * (left + right)
        panels[worst : worst + 1] = [
            make_panel(left, mid, cycle),
            make_panel(mid, right, cycle),
        ]


def integrate_finite(
    f: Integrand,
    kernel: OscillatoryKernel,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
) -> IntegralResult:
    """Integrate f(x) * kernel(x) over [a, b] to the configured tolerance.

    The result carries a zero tail correction; error_estimate is the summed
    per-panel estimate (absolute). Raises EvaluationError if f produces a
    non-finite value at a sampled point, and ConvergenceError if the
    subdivision budget runs out before the tolerance is met. Gauss nodes are
    strictly interior, so endpoint values of f are never requested.
    """
    if cfg is None:
        cfg = QuadratureConfig()

    def sample(x: float) -> float:
        v = f(x)
        if not math.isfinite(v):
            raise EvaluationError(x)
        return v * kernel(x)

    points = cycle_breakpoints(a, b, kernel)
    value, err, evaluations = _adaptive(sample, points, cfg)
    return IntegralResult.build(
        finite_part=value,
        tail_correction=0.0,
        error_estimate=err,
        evaluations=evaluations,
        b_used=b,
    )


def integrate_smooth(
    fn: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    max_panel_width: float = math.pi,
) -> Tuple[float, float]:
    """Adaptive integration of a plain smooth callable (no kernel weight).

    Support routine for reference values produced by a variable substitution.
    Returns (value, error_estimate).
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if not (a < b):
        raise ValueError("lower limit must be strictly below upper limit")

    def sample(x: float) -> float:
        v = fn(x)
        if not math.isfinite(v):
            raise EvaluationError(x)
        return v

    n = max(1, math.ceil((b - a) / max_panel_width))
    points = [a + (b - a) * i / n for i in range(n)] + [b]
    value, err, _ = _adaptive(sample, points, cfg)
    return value, err
