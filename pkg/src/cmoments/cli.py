"""Batch command line: parse measure spec files, dispatch, emit CSV.

Numeric output goes to stdout as CSV; diagnostics go to stderr.  Exit
codes: 0 success, 1 usage errors (bad flags, malformed or unknown-key spec
files), 2 measure validation failure, 3 numeric-domain errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .csvio import format_value, write_rows, write_sequence
from .cumulants import moments_to_cumulants
from .convolution import convolution_power, convolve_moments
from .errors import DomainError, MeasureFormatError, QuadratureError, SizeLimitError
from .limits import DEFAULT_N_GRID, limit_trajectory
from .measures import load_measure, validate
from .moments import moment_sequence, radius_diagnostics, radius_estimate
from .sequences import CumulantKind
from .transforms import TRANSFORM_NAMES, TransformPoint, evaluate_transform

KIND_CHOICES = tuple(k.value for k in CumulantKind)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_validated(path):
    measure = load_measure(path)
    report = validate(measure)
    if not report.ok:
        for violation in report.violations:
            print(f"validation: {violation.code}: {violation.message}",
                  file=sys.stderr)
        raise _ValidationFailure(path)
    return measure


class _ValidationFailure(Exception):
    pass


def _parse_points(path):
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p for p in line.replace(",", " ").split() if p]
            try:
                re = float(parts[0])
                im = float(parts[1]) if len(parts) > 1 else 0.0
            except ValueError:
                continue  # tolerates a header line
            points.append(complex(re, im))
    if not points:
        raise MeasureFormatError(f"no points found in {path}")
    return points


def _parse_n_list(text):
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise MeasureFormatError(f"bad N list {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise MeasureFormatError(f"bad N list {text!r}")
    return values


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args):
    measure = load_measure(args.spec)
    report = validate(measure)
    write_rows(
        sys.stdout,
        ("code", "message"),
        ((v.code, v.message) for v in report.violations),
    )
    return 0 if report.ok else 2


def _cmd_moments(args):
    measure = _load_validated(args.spec)
    write_sequence(sys.stdout, moment_sequence(measure, args.n_max))
    return 0


def _cmd_cumulants(args):
    measure = _load_validated(args.spec)
    seq = moment_sequence(measure, args.n_max)
    write_sequence(
        sys.stdout, moments_to_cumulants(args.kind, seq, args.n_max), start=1
    )
    return 0


def _cmd_convolve(args):
    m1 = moment_sequence(_load_validated(args.spec1), args.n_max)
    m2 = moment_sequence(_load_validated(args.spec2), args.n_max)
    write_sequence(sys.stdout, convolve_moments(args.kind, m1, m2, args.n_max))
    return 0


def _cmd_power(args):
    seq = moment_sequence(_load_validated(args.spec), args.n_max)
    write_sequence(sys.stdout, convolution_power(args.kind, seq, args.N, args.n_max))
    return 0


def _cmd_transform(args):
    measure = _load_validated(args.spec)
    points = _parse_points(args.points)
    rows = []
    for z in points:
        value, err = evaluate_transform(measure, TransformPoint(z, args.which))
        rows.append((z.real, z.imag, value.real, value.imag, err))
    write_rows(
        sys.stdout,
        ("re_z", "im_z", "re_value", "im_value", "error_estimate"),
        rows,
    )
    return 0


def _cmd_limit(args):
    measure = _load_validated(args.spec)
    seq = moment_sequence(measure, args.n_max)
    rows = []
    for point in limit_trajectory(args.kind, seq, args.n_list, args.n_max):
        for n in range(args.n_max + 1):
            rows.append(
                (
                    args.kind,
                    str(point.N),
                    str(n),
                    point.moments[n].real,
                    point.moments[n].imag,
                    point.deviation,
                )
            )
    write_rows(
        sys.stdout, ("kind", "N", "n", "re_mn", "im_mn", "deviation"), rows
    )
    return 0


def _cmd_radius(args):
    measure = _load_validated(args.spec)
    seq = moment_sequence(measure, args.n_max)
    estimate = radius_estimate(seq)
    diag = radius_diagnostics(seq)
    print(
        f"radius diagnostics: extrapolated={format_value(diag.extrapolated)} "
        f"consistent={diag.consistent}",
        file=sys.stderr,
    )
    write_rows(sys.stdout, ("n_max", "radius"), [(str(args.n_max), estimate)])
    return 0


def _cmd_report(args):
    from .report import render_report  # keeps matplotlib out of the other paths

    measure = _load_validated(args.spec)
    kinds = args.kinds.split(",") if args.kinds else None
    result = render_report(
        measure, args.out_dir, kinds=kinds, N_list=args.n_list, n_max=args.n_max
    )
    for path in (*result.csv_paths, *result.figure_paths):
        print(f"wrote {path}", file=sys.stderr)
    write_rows(
        sys.stdout,
        ("kind", "N", "deviation"),
        ((k, str(N), d) for k, N, d in result.summary_rows),
    )
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cmoments",
        description="complex moments, cumulants and convolution limits "
        "of Laurent-tailed measures",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a measure spec file")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("moments", help="complex moments 0..n_max")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("cumulants", help="cumulants 1..n_max of one species")
    p.add_argument("spec")
    p.add_argument("--kind", choices=KIND_CHOICES, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_cumulants)

    p = sub.add_parser("convolve", help="moment-level convolution of two measures")
    p.add_argument("spec1")
    p.add_argument("spec2")
    p.add_argument("--kind", choices=KIND_CHOICES, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_convolve)

    p = sub.add_parser("power", help="N-fold convolution power")
    p.add_argument("spec")
    p.add_argument("--kind", choices=KIND_CHOICES, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("transform", help="evaluate a transform at points")
    p.add_argument("spec")
    p.add_argument("--which", choices=TRANSFORM_NAMES, required=True)
    p.add_argument("--points", required=True,
                   help="file with one 're,im' point per line")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("limit", help="scaled convolution powers vs Cauchy limit")
    p.add_argument("spec")
    p.add_argument("--kind", choices=KIND_CHOICES, required=True)
    p.add_argument("--n-list", type=_parse_n_list,
                   default=list(DEFAULT_N_GRID),
                   help="comma-separated N values")
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("radius", help="moment growth radius estimate")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=40)
    p.set_defaults(func=_cmd_radius)

    p = sub.add_parser(
        "report",
        help="write convergence CSVs and figures into a directory",
    )
    p.add_argument("spec")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--kinds", default="",
                   help="comma-separated species (default: all)")
    p.add_argument("--n-list", type=_parse_n_list, default=list(DEFAULT_N_GRID))
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _ValidationFailure:
        return 2
    except MeasureFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, SizeLimitError, QuadratureError,
            ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():  # console-script wrapper
    raise SystemExit(main())
