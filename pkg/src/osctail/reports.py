"""Reference tables and figure datasets for the three worked examples.

Tables compare the residual of the one-point correction (eps columns)
against the plain truncation error (trunc columns), both absolute and
relative to the exact integral. Figures carry the curve data behind the
standard comparisons: exact tail versus one-point value, and truncated
versus corrected integral. All numbers are deterministic for fixed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import reference as ref
from . import tail
from .model import KernelKind, OscillatoryKernel, TruncationPoint, TruncationRule
from .quadrature import QuadratureConfig, integrate_finite

__all__ = [
    "Dataset",
    "TABLE_IDS",
    "FIGURE_IDS",
    "table",
    "figure",
    "render_csv",
    "render_text",
    "format_number",
]

TABLE_IDS = (1, 2, 3)
FIGURE_IDS = (1, 2, 3, 4, 5, 6)

TABLE_COLUMNS = ("x_or_alpha", "eps_rel", "trunc_rel", "eps_abs", "trunc_abs")

# Table 1 tabulates the exponential example over alpha at a fixed truncation
# abscissa of twenty sine cycles; tables 2 and 3 sweep the truncation point.
TABLE1_ALPHAS = (0.001, 0.01, 0.1, 1.0, 10.0)
TABLE1_INDEX = 20
TABLE2_INDICES = (4, 10, 20, 50, 100)
TABLE3_INDICES = (20, 40, 60, 80, 100)
TABLE3_ALPHA = 0.2

# Tail-oracle tolerance for the table pipelines; comfortably below the
# two-significant-figure resolution of the tabulated values.
ORACLE_TOL = 1e-9

FIGURE_ALPHA_GRID = tuple(float(a) for a in np.logspace(-3.0, 1.0, 41))

_SINE = OscillatoryKernel(KernelKind.SINE, 1.0)


@dataclass(frozen=True)
class Dataset:
    """A comment line, column names and numeric rows ready for CSV emission."""

    comment: str
    columns: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...]


def _table1_rows() -> List[Tuple[float, ...]]:
    t = TruncationPoint.from_index(_SINE, TruncationRule.KERNEL_ZEROS, TABLE1_INDEX)
    rows = []
    for alpha in TABLE1_ALPHAS:
        spec = ref.make_exp(alpha)
        exact_tail = ref.example1_tail(alpha, t.b)
        corr = tail.correct_zeroth(spec.integrand, _SINE, t)
        eps = abs(exact_tail - corr.value)
        trunc = abs(exact_tail)
        ie = spec.exact_value
        rows.append((alpha, eps / ie, trunc / ie, eps, trunc))
    return rows


def _swept_rows(spec: ref.ExampleSpec, indices: Sequence[int]) -> List[Tuple[float, ...]]:
    rows = []
    for n in indices:
        t = TruncationPoint.from_index(_SINE, TruncationRule.KERNEL_ZEROS, n)
        exact_tail = ref.oracle_tail(spec.integrand, _SINE, t.b, ORACLE_TOL)
        corr = tail.correct_zeroth(spec.integrand, _SINE, t)
        eps = abs(exact_tail - corr.value)
        trunc = abs(exact_tail)
        ie = spec.exact_value
        rows.append((t.b, eps / ie, trunc / ie, eps, trunc))
    return rows


def table(table_id: int) -> Dataset:
    """Rows of reference table 1, 2 or 3."""
    if table_id == 1:
        comment = (
            "table 1: one-point residual vs plain truncation error, "
            "f(x)=exp(-alpha*x), sine kernel, truncated at x=20*pi"
        )
        rows = _table1_rows()
    elif table_id == 2:
        comment = (
            "table 2: one-point residual vs plain truncation error, "
            "f(x)=1/sqrt(x), sine kernel, truncation abscissa in column 1"
        )
        rows = _swept_rows(ref.make_inv_sqrt(), TABLE2_INDICES)
    elif table_id == 3:
        comment = (
            "table 3: one-point residual vs plain truncation error, "
            f"f(x)=cos({TABLE3_ALPHA}*x)/x, sine kernel, truncation abscissa in column 1"
        )
        rows = _swept_rows(ref.make_cos_over_x(TABLE3_ALPHA), TABLE3_INDICES)
    else:
        raise ValueError(f"no such table: {table_id} (expected one of {TABLE_IDS})")
    return Dataset(comment=comment, columns=TABLE_COLUMNS, rows=tuple(tuple(r) for r in rows))


def _truncated_sequence(
    spec: ref.ExampleSpec, indices: Sequence[int]
) -> Dict[int, float]:
    """Truncated integrals at consecutive even abscissae, built incrementally."""
    first = indices[0]
    if spec.kind is ref.ExampleKind.INV_SQRT:
        acc = ref.example2_truncated(first * math.pi)
    else:
        acc = ref.example3_truncated(spec.alpha, first * math.pi)
    out = {first: acc}
    for prev, nxt in zip(indices, indices[1:]):
        seg = integrate_finite(
            spec.integrand, _SINE, prev * math.pi, nxt * math.pi
        ).finite_part
        acc += seg
        out[nxt] = acc
    return out


def _tail_vs_one_point_alpha(n_index: int) -> List[Tuple[float, ...]]:
    b = n_index * math.pi
    rows = []
    for alpha in FIGURE_ALPHA_GRID:
        exact_tail = ref.example1_tail(alpha, b)
        one_point = math.exp(-alpha * b)  # (-1)^N f(b) with even N
        rows.append((alpha, exact_tail, one_point))
    return rows


def _tail_vs_one_point_length(
    spec: ref.ExampleSpec, indices: Sequence[int]
) -> List[Tuple[float, ...]]:
    truncated = _truncated_sequence(spec, indices)
    rows = []
    for n in indices:
        length = n * math.pi
        exact_tail = spec.exact_value - truncated[n]
        one_point = spec.integrand(length)  # even n, positive parity
        rows.append((length, exact_tail, one_point))
    return rows


def _truncated_vs_corrected(
    spec: ref.ExampleSpec, indices: Sequence[int]
) -> List[Tuple[float, ...]]:
    truncated = _truncated_sequence(spec, indices)
    rows = []
    for n in indices:
        length = n * math.pi
        t_val = truncated[n]
        rows.append((length, t_val, t_val + spec.integrand(length), spec.exact_value))
    return rows


def figure(figure_id: int) -> Dataset:
    """Curve data behind reference figure 1..6."""
    even = lambda lo, hi: tuple(range(lo, hi + 1, 2))
    if figure_id in (1, 2):
        n = 10 if figure_id == 1 else 4
        return Dataset(
            comment=(
                f"figure {figure_id}: exact tail vs one-point value over alpha, "
                f"f(x)=exp(-alpha*x), sine kernel, truncated at x={n}*pi"
            ),
            columns=("alpha", "exact_tail", "one_point"),
            rows=tuple(_tail_vs_one_point_alpha(n)),
        )
    if figure_id == 3:
        return Dataset(
            comment=(
                "figure 3: exact tail vs one-point value over truncation length, "
                "f(x)=1/sqrt(x), sine kernel"
            ),
            columns=("length", "exact_tail", "one_point"),
            rows=tuple(_tail_vs_one_point_length(ref.make_inv_sqrt(), even(4, 100))),
        )
    if figure_id == 4:
        return Dataset(
            comment=(
                "figure 4: truncated vs corrected integral over truncation length, "
                "f(x)=1/sqrt(x), sine kernel"
            ),
            columns=("length", "truncated", "corrected", "exact"),
            rows=tuple(_truncated_vs_corrected(ref.make_inv_sqrt(), even(4, 100))),
        )
    if figure_id == 5:
        return Dataset(
            comment=(
                "figure 5: exact tail vs one-point value over truncation length, "
                f"f(x)=cos({TABLE3_ALPHA}*x)/x, sine kernel"
            ),
            columns=("length", "exact_tail", "one_point"),
            rows=tuple(
                _tail_vs_one_point_length(ref.make_cos_over_x(TABLE3_ALPHA), even(6, 100))
            ),
        )
    if figure_id == 6:
        return Dataset(
            comment=(
                "figure 6: truncated vs corrected integral over truncation length, "
                f"f(x)=cos({TABLE3_ALPHA}*x)/x, sine kernel"
            ),
            columns=("length", "truncated", "corrected", "exact"),
            rows=tuple(
                _truncated_vs_corrected(ref.make_cos_over_x(TABLE3_ALPHA), even(6, 100))
            ),
        )
    raise ValueError(f"no such figure: {figure_id} (expected one of {FIGURE_IDS})")


def format_number(x: float) -> str:
    """Scientific notation, six significant digits, lowercase e."""
    return f"{x:.5e}"


def render_csv(ds: Dataset) -> str:
    lines = [f"# {ds.comment}", ",".join(ds.columns)]
    for row in ds.rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def render_text(ds: Dataset) -> str:
    width = 14
    lines = [f"# {ds.comment}", "".join(c.ljust(width) for c in ds.columns).rstrip()]
    for row in ds.rows:
        lines.append("".join(format_number(v).ljust(width) for v in row).rstrip())
    return "\n".join(lines) + "\n"
