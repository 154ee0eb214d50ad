"""Moment-level convolution for the four products, dilation and powers.

Routes per species:

    tensor    binomial formula  m_n = sum C(n,k) a_k b_{n-k},
    free      cumulant additivity (convert, add, convert back),
    boolean   cumulant additivity,
    monotone  direct moment recursion
              m_n(a > b) = sum_{k<=n} a_k * [z^(n-k)] (sum_j b_j z^j)^(k+1).

Powers: tensor/free/boolean scale cumulants by N; monotone iterates the
recursion from the left, one factor at a time.  N = 0 always gives the
point mass at zero.
"""

from __future__ import annotations

import math

import numpy as np

from . import cumulants as _cum
from .errors import SizeLimitError
from .sequences import ComplexSequence, CumulantKind, as_kind, delta_moments

ORDER_LIMIT = 10
_MASS_TOL = 1e-8


def dilate_moments(c: float, m: ComplexSequence) -> ComplexSequence:
    """Moments of the pushforward under x -> c*x: entry n scaled by c**n."""
    c = float(c)
    scale = np.power(complex(c), np.arange(len(m)))
    return ComplexSequence(tuple(m.as_array() * scale), m.kind)


def _check(seq: ComplexSequence, n_max: int) -> None:
    if abs(seq[0] - 1.0) > _MASS_TOL:
        raise ValueError("convolution inputs must have entry 0 equal to 1")
    if seq.n_max < n_max:
        raise ValueError("sequence too short for requested n_max")


def _resolve_n_max(a, b, n_max):
    if n_max is None:
        n_max = min(a.n_max, b.n_max)
    if n_max > ORDER_LIMIT:
        raise SizeLimitError(
            f"n_max = {n_max} exceeds the convolution limit {ORDER_LIMIT}"
        )
    return n_max


def _monotone_convolve(a: np.ndarray, b: np.ndarray, n_max: int) -> np.ndarray:
    out = np.zeros(n_max + 1, dtype=complex)
    # powers[k] = truncated coefficients of (sum_j b_j z^j)**(k+1)
    power = b.copy()
    for k in range(n_max + 1):
        out[k:] += a[k] * power[: n_max + 1 - k]
        if k < n_max:
            power = np.convolve(power, b)[: n_max + 1]
    return out


def convolve_moments(kind, m_rho: ComplexSequence, m_sigma: ComplexSequence,
                     n_max: int | None = None) -> ComplexSequence:
    """Moments of the convolution of the two inputs, up to order n_max."""
    kind = as_kind(kind)
    n_max = _resolve_n_max(m_rho, m_sigma, n_max)
    _check(m_rho, n_max)
    _check(m_sigma, n_max)
    a = m_rho.as_array()[: n_max + 1]
    b = m_sigma.as_array()[: n_max + 1]
    if kind is CumulantKind.TENSOR:
        out = np.zeros(n_max + 1, dtype=complex)
        for n in range(n_max + 1):
            out[n] = sum(
                math.comb(n, k) * a[k] * b[n - k] for k in range(n + 1)
            )
    elif kind is CumulantKind.MONOTONE:
        out = _monotone_convolve(a, b, n_max)
    else:
        ka = _cum.moments_to_cumulants(kind, m_rho, n_max).as_array()
        kb = _cum.moments_to_cumulants(kind, m_sigma, n_max).as_array()
        total = ComplexSequence.cumulants((ka + kb)[1:], kind)
        out = _cum.cumulants_to_moments(kind, total, n_max).as_array()
    return ComplexSequence.moments(out)


def convolution_power(kind, m: ComplexSequence, N: int,
                      n_max: int | None = None) -> ComplexSequence:
    """Moments of the N-fold self-convolution of the given species."""
    kind = as_kind(kind)
    if N < 0:
        raise ValueError("N must be >= 0")
    if n_max is None:
        n_max = m.n_max
    if n_max > ORDER_LIMIT:
        raise SizeLimitError(
            f"n_max = {n_max} exceeds the convolution limit {ORDER_LIMIT}"
        )
    _check(m, n_max)
    if N == 0:
        return delta_moments(n_max)
    if N == 1:
        return ComplexSequence.moments(m.as_array()[: n_max + 1])
    if kind is CumulantKind.MONOTONE:
        acc = delta_moments(n_max)
        for _ in range(N):
            acc = convolve_moments(kind, m, acc, n_max)
        return acc
    K = _cum.moments_to_cumulants(kind, m, n_max).as_array()
    scaled = ComplexSequence.cumulants(N * K[1:], kind)
    return _cum.cumulants_to_moments(kind, scaled, n_max)
