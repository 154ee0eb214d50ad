"""Convergence report: CSV tables plus rendered figures.

``render_report`` runs the scaled-power trajectories for the requested
convolution species, the Stieltjes-series convergence check and the tensor
Fourier check, writes one CSV per table into the output directory and
renders matplotlib figures (PNG) of the same data next to them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .csvio import write_rows
from .limits import (
    DEFAULT_N_GRID,
    fourier_convergence_check,
    limit_trajectory,
    stieltjes_convergence_check,
)
from .measures import MeasureP1
from .moments import moment_sequence, radius_estimate
from .sequences import CumulantKind, as_kind

DEFAULT_SAMPLE_T = (0.25, 0.5, 1.0, 1.5, 2.0)


@dataclass(frozen=True)
class ReportResult:
    csv_paths: tuple
    figure_paths: tuple
    summary_rows: tuple  # (kind, N, deviation) across all kinds


def _default_sample_z(radius: float, count: int = 10):
    scale = 2.5 * radius if radius > 0 else 1.0
    angles = np.linspace(-math.pi + 0.3, -0.3, count)
    return [scale * complex(math.cos(t), math.sin(t)) for t in angles]


def _line_figure(path: Path, series: dict, xlabel: str, ylabel: str, title: str,
                 dpi: int) -> None:
    fig = Figure(figsize=(6.0, 4.2))
    ax = fig.subplots()
    for label, (xs, ys) in sorted(series.items()):
        ax.loglog(xs, ys, marker="o", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)


def render_report(measure: MeasureP1, out_dir, kinds=None, N_list=DEFAULT_N_GRID,
                  n_max: int = 6, seq_order: int = 10,
                  sample_t=DEFAULT_SAMPLE_T, dpi: int = 150) -> ReportResult:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if kinds is None:
        kinds = tuple(CumulantKind)
    kinds = tuple(as_kind(k) for k in kinds)
    N_list = tuple(int(N) for N in N_list)

    seq = moment_sequence(measure, max(seq_order, 10))
    radius = radius_estimate(seq)
    sample_z = _default_sample_z(radius)

    csv_paths = []
    summary = []
    dev_series = {}
    for kind in kinds:
        traj = limit_trajectory(kind, seq, N_list, n_max)
        rows = []
        for point in traj:
            for n in range(n_max + 1):
                rows.append(
                    (
                        kind.value,
                        str(point.N),
                        str(n),
                        point.moments[n].real,
                        point.moments[n].imag,
                        point.deviation,
                    )
                )
            summary.append((kind.value, point.N, point.deviation))
        path = out_dir / f"limit_{kind.value}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            write_rows(fh, ("kind", "N", "n", "re_mn", "im_mn", "deviation"), rows)
        csv_paths.append(path)
        dev_series[kind.value] = (
            [p.N for p in traj],
            [max(p.deviation, 1e-300) for p in traj],
        )

    st_series = {}
    st_rows = []
    for kind in kinds:
        errs = stieltjes_convergence_check(kind, seq, N_list, sample_z)
        st_series[kind.value] = (
            [N for N, _ in errs],
            [max(e, 1e-300) for _, e in errs],
        )
        st_rows.extend((kind.value, str(N), e) for N, e in errs)
    path = out_dir / "stieltjes_error.csv"
    with open(path, "w", encoding="utf-8") as fh:
        write_rows(fh, ("kind", "N", "sup_error"), st_rows)
    csv_paths.append(path)

    fr = fourier_convergence_check(measure, N_list, sample_t)
    path = out_dir / "fourier_error.csv"
    with open(path, "w", encoding="utf-8") as fh:
        write_rows(fh, ("N", "sup_error"), ((str(N), e) for N, e in fr))
    csv_paths.append(path)

    figures = []
    fig_path = out_dir / "deviation.png"
    _line_figure(
        fig_path, dev_series, "N", "max moment deviation",
        "scaled convolution powers vs Cauchy limit", dpi,
    )
    figures.append(fig_path)
    fig_path = out_dir / "stieltjes_error.png"
    _line_figure(
        fig_path, st_series, "N", "sup |G_N - G_limit|",
        "Stieltjes-series convergence", dpi,
    )
    figures.append(fig_path)
    fig_path = out_dir / "fourier_error.png"
    _line_figure(
        fig_path,
        {"tensor": ([N for N, _ in fr], [max(e, 1e-300) for _, e in fr])},
        "N", "sup |F(t/N)^N - F_limit|", "Fourier convergence (tensor)", dpi,
    )
    figures.append(fig_path)

    return ReportResult(tuple(csv_paths), tuple(figures), tuple(summary))
