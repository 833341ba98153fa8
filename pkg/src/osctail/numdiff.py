"""Central finite differences with one Richardson refinement step.

Used as the fallback when an integrand has no registered derivative closure,
and by tests to cross-check registered closures against an independent
estimate.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Tuple

import numpy as np

from .errors import NumericError

__all__ = ["stencil_weights", "central_derivative"]

_WEIGHTS: Dict[Tuple[int, int], np.ndarray] = {}


def _stencil_radius(m: int) -> int:
    # Symmetric stencil wide enough for at least 4th-order accuracy.
    return m // 2 + 2


def stencil_weights(m: int, radius: int) -> np.ndarray:
    """Unit-spacing weights for the m-th derivative on offsets -radius..radius.

    Solves the moment conditions sum_j w_j * o_j**p = m! * [p == m] for
    p = 0..2*radius, which makes the stencil exact on polynomials of degree
    2*radius. Symmetric stencils pick up one extra order for free.
    """
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if 2 * radius < m:
        raise ValueError("stencil too narrow for the requested derivative")
    key = (m, radius)
    if key not in _WEIGHTS:
        offsets = np.arange(-radius, radius + 1, dtype=float)
        size = 2 * radius + 1
        vander = np.vander(offsets, size, increasing=True).T
        rhs = np.zeros(size)
        rhs[m] = math.factorial(m)
        _WEIGHTS[key] = np.linalg.solve(vander, rhs)
    return _WEIGHTS[key]


def _apply(fn: Callable[[float], float], m: int, x: float, h: float, radius: int) -> float:
    weights = stencil_weights(m, radius)
    acc = 0.0
    for j, w in zip(range(-radius, radius + 1), weights):
        if w != 0.0:
            acc += w * fn(x + j * h)
    return acc / h**m


def central_derivative(
    fn: Callable[[float], float],
    m: int,
    x: float,
    h: float,
    refine: bool = True,
) -> Tuple[float, float]:
    """Estimate the m-th derivative of fn at x.

    Returns (value, error_estimate). With ``refine`` the stencil is applied at
    spacings h and h/2 and combined once by Richardson extrapolation, which
    removes the leading h**4 error term; the reported error estimate is the
    size of that removed term.
    """
    if m == 0:
        return fn(x), 0.0
    if h <= 0.0:
        raise ValueError("step must be positive")
    radius = _stencil_radius(m)
    if x + radius * h == x or x - radius * h == x:
        raise NumericError(f"finite-difference step {h!r} underflows at x={x!r}")
    coarse = _apply(fn, m, x, h, radius)
    if not refine:
        return coarse, math.inf
    fine = _apply(fn, m, x, h / 2.0, radius)
    value = (16.0 * fine - coarse) / 15.0
    return value, abs(fine - coarse) / 15.0
