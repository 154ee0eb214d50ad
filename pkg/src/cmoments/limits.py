"""Scaled convolution powers and their convergence to Cauchy limits.

For a measure with first complex moment ``m_1 = a + bi`` (``b >= 0``), the
moments of ``(D_{1/N} mu)**(conv N)`` approach ``(a + bi)**n`` as N grows,
for each of the four convolutions; the limit law is the Cauchy distribution
with location ``a`` and scale ``b`` (a point mass at ``a`` when ``b = 0``).
The helpers here compute the scaled-power trajectories and measure their
distance to the limit in moment space, through the Stieltjes series, and
through the multiplicative Fourier identity of the tensor convolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import convolution_power, dilate_moments
from .errors import DomainError
from .measures import MeasureP1
from .moments import radius_estimate
from .sequences import ComplexSequence, as_kind
from .transforms import fourier_numeric, stieltjes_series

DEFAULT_N_GRID = (1, 2, 4, 8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class CauchyTarget:
    """Limit-law parameters; ``degenerate`` marks the point-mass case b = 0."""

    a: float
    b: float
    degenerate: bool


def cauchy_target(m1: complex, tol: float = 1e-9) -> CauchyTarget:
    """Location/scale of the limit law from the first complex moment."""
    m1 = complex(m1)
    if m1.imag < -tol:
        raise DomainError(
            f"first moment has negative imaginary part {m1.imag}; "
            "not a valid input measure"
        )
    b = max(m1.imag, 0.0)
    return CauchyTarget(m1.real, b, degenerate=b <= tol)


def scaled_power(kind, m: ComplexSequence, N: int,
                 n_max: int | None = None) -> ComplexSequence:
    """Moments of the N-fold convolution power of the 1/N-dilated input."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return convolution_power(kind, dilate_moments(1.0 / N, m), N, n_max)


@dataclass(frozen=True)
class TrajectoryPoint:
    N: int
    moments: ComplexSequence
    deviation: float


def limit_trajectory(kind, m: ComplexSequence, N_list,
                     n_max: int) -> list:
    """Scaled-power moments for each N plus the sup distance to the limit.

    deviation(N) = max over n <= n_max of |m_n(scaled power) - (a+bi)**n|.
    """
    kind = as_kind(kind)
    if m.n_max < n_max:
        raise ValueError("moment sequence too short for requested n_max")
    c = m[1]
    out = []
    for N in N_list:
        seq = scaled_power(kind, m, N, n_max)
        dev = max(abs(seq[n] - c ** n) for n in range(n_max + 1))
        out.append(TrajectoryPoint(int(N), seq, float(dev)))
    return out


def stieltjes_convergence_check(kind, m: ComplexSequence, N_list,
                                sample_z) -> list:
    """Sup over sample points of |series G of the scaled power - limit G|.

    Every sample point must satisfy |z| >= 2 * radius_estimate(m); the limit
    transform is 1 / (z - (a + bi)).
    """
    kind = as_kind(kind)
    rad = radius_estimate(m)
    sample_z = [complex(z) for z in sample_z]
    for z in sample_z:
        if abs(z) < 2.0 * rad * (1.0 - 1e-12):
            raise DomainError(
                f"sample point z = {z} violates |z| >= 2 * {rad:.6g}"
            )
    c = m[1]
    out = []
    for N in N_list:
        seq = scaled_power(kind, m, N, m.n_max)
        sup = max(
            abs(stieltjes_series(seq, z) - 1.0 / (z - c)) for z in sample_z
        )
        out.append((int(N), float(sup)))
    return out


def fourier_convergence_check(measure: MeasureP1, N_list, sample_t) -> list:
    """Tensor-route check: sup_t |F(t/N)**N - exp((ia - b) t)|.

    The N-fold tensor power of the 1/N dilation has Fourier transform
    F(t/N)**N, which converges to the transform of the Cauchy limit law.
    """
    from .moments import moment

    sample_t = [float(t) for t in sample_t]
    if any(t <= 0.0 for t in sample_t):
        raise DomainError("sample points must be positive")
    m1 = moment(measure, 1)
    out = []
    for N in N_list:
        N = int(N)
        sup = 0.0
        for t in sample_t:
            approx = fourier_numeric(measure, t / N) ** N
            target = np.exp((1j * m1.real - m1.imag) * t)
            sup = max(sup, abs(approx - target))
        out.append((N, float(sup)))
    return out
