"""Command line front end.

    osctail integrate --kernel sin --omega 1 --fn invsqrt --min-length 314.159 --order 0
    osctail table --id 2 [--out table2.csv]
    osctail figure --id 4 [--out fig4.csv]
    osctail selftest

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import acceptance, reference, reports, tail
from .errors import OsctailError
from .model import Integrand, KernelKind, OscillatoryKernel
from .quadrature import QuadratureConfig
from .reports import format_number

__all__ = ["run", "main"]

DEFAULT_MIN_LENGTH = 20.0 * math.pi


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osctail",
        description=(
            "Semi-infinite oscillatory integrals by kernel-aligned truncation "
            "plus end-point tail corrections."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("integrate", help="integrate a built-in function over [a, inf)")
    p_int.add_argument("--kernel", choices=("sin", "cos"), default="sin")
    p_int.add_argument("--omega", type=float, default=1.0)
    p_int.add_argument("--a", type=float, default=0.0)
    p_int.add_argument("--min-length", type=float, default=DEFAULT_MIN_LENGTH)
    p_int.add_argument("--order", type=int, default=0, metavar="K")
    p_int.add_argument(
        "--fn",
        required=True,
        help="built-in integrand: exp:ALPHA, invsqrt, cosoverx:ALPHA or zero",
    )
    p_int.add_argument("--out", default=None)
    p_int.add_argument("--format", choices=("csv", "text"), default="text")

    p_tab = sub.add_parser("table", help="emit a reference error table")
    p_tab.add_argument("--id", type=int, required=True, metavar="K")
    p_tab.add_argument("--out", default=None)
    p_tab.add_argument("--format", choices=("csv", "text"), default="csv")

    p_fig = sub.add_parser("figure", help="emit curve data behind a reference figure")
    p_fig.add_argument("--id", type=int, required=True, metavar="K")
    p_fig.add_argument("--out", default=None)
    p_fig.add_argument("--format", choices=("csv", "text"), default="csv")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def _zero_integrand() -> Integrand:
    zero = lambda x: 0.0  # noqa: E731
    return Integrand(
        fn=zero,
        derivatives=[zero] * (reference.MAX_REGISTERED_DERIVATIVE + 1),
        name="zero",
    )


def _parse_fn(text: str, kernel: OscillatoryKernel) -> Integrand:
    name, _, param = text.partition(":")
    try:
        if name == "exp":
            if not param:
                raise _UsageError("exp requires a parameter: exp:ALPHA")
            return reference.make_exp(float(param)).integrand
        if name == "invsqrt":
            if param:
                raise _UsageError("invsqrt takes no parameter")
            return reference.make_inv_sqrt().integrand
        if name == "cosoverx":
            if not param:
                raise _UsageError("cosoverx requires a parameter: cosoverx:ALPHA")
            alpha = float(param)
            spec = reference.make_cos_over_x(alpha)
            tail.warn_if_secondary_oscillation(alpha, kernel, name=spec.integrand.name)
            return spec.integrand
        if name == "zero":
            if param:
                raise _UsageError("zero takes no parameter")
            return _zero_integrand()
    except ValueError as exc:
        raise _UsageError(f"bad parameter for --fn {text!r}: {exc}") from exc
    raise _UsageError(f"unknown --fn {text!r} (expected exp:ALPHA, invsqrt, cosoverx:ALPHA, zero)")


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_integrate(args: argparse.Namespace) -> int:
    if not args.omega > 0.0:
        raise _UsageError("--omega must be positive")
    if args.a < 0.0:
        raise _UsageError("--a must be nonnegative")
    if not args.min_length > 0.0:
        raise _UsageError("--min-length must be positive")
    if not 0 <= args.order <= 8:
        raise _UsageError("--order must lie in 0..8")
    kind = KernelKind.SINE if args.kernel == "sin" else KernelKind.COSINE
    kernel = OscillatoryKernel(kind, args.omega)
    integrand = _parse_fn(args.fn, kernel)
    result = tail.integrate_semi_infinite(
        integrand,
        kernel,
        args.a,
        args.min_length,
        QuadratureConfig(),
        tail.CorrectionSpec(order_k=args.order, emit_error_estimate=True),
    )
    est = format_number(result.error_estimate) if result.error_estimate is not None else "n/a"
    if args.format == "csv":
        text = (
            "total,tail_correction,error_estimate,evaluations,b_used\n"
            f"{format_number(result.total)},{format_number(result.tail_correction)},"
            f"{est},{result.evaluations},{format_number(result.b_used)}\n"
        )
    else:
        lines = [
            f"total= {format_number(result.total)}",
            f"tail_correction= {format_number(result.tail_correction)}",
            f"error_estimate= {est}",
            f"evaluations= {result.evaluations}",
            f"b_used= {format_number(result.b_used)}",
        ]
        if integrand.decay_exponent is not None:
            expo = tail.decay_bound_exponent(integrand.decay_exponent, args.order)
            lines.append(f"remainder_decay_exponent= {expo:g}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_dataset(args: argparse.Namespace, kind: str) -> int:
    if kind == "table":
        if args.id not in reports.TABLE_IDS:
            raise _UsageError(f"--id must be one of {reports.TABLE_IDS}")
        ds = reports.table(args.id)
    else:
        if args.id not in reports.FIGURE_IDS:
            raise _UsageError(f"--id must be one of {reports.FIGURE_IDS}")
        ds = reports.figure(args.id)
    text = reports.render_csv(ds) if args.format == "csv" else reports.render_text(ds)
    _emit(text, args.out)
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        if args.command == "integrate":
            return _cmd_integrate(args)
        if args.command == "table":
            return _cmd_dataset(args, "table")
        if args.command == "figure":
            return _cmd_dataset(args, "figure")
        return acceptance.selftest_main(sys.stdout)
    except _UsageError as exc:
        print(f"osctail: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"osctail: {exc}", file=sys.stderr)
        return 1
    except OsctailError as exc:
        print(f"osctail: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
