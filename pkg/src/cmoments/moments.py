"""Complex moments of Laurent-tailed measures.

The tail contributes through the closed-form contour integrals

    S(m, R) = integral of z**m over the upper semicircle of radius R
            = i*pi                                   for m = -1,
            = R**(m+1) * ((-1)**(m+1) - 1) / (m+1)   otherwise,

traversed counterclockwise from R to -R, so the n-th tail moment is
``sum_k a_k * S(n - k, R)``.  The compact part contributes its ordinary
(real) moments, atoms exactly and the tabulated density by quadrature.

The value of the tail contribution depends on the stored cutoff, but the
full moment of a measure does not depend on how the measure was split into
compact part and tail; that invariance is what the test-suite checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import CompactPart, LaurentTail, MeasureP1, _table_state
from .sequences import ComplexSequence

RADIUS_MIN_ENTRIES = 10


def semicircle_power_integral(m: int, R: float) -> complex:
    """Integral of z**m over the upper semicircle of radius R (ccw)."""
    if R <= 0.0:
        raise ValueError("R must be positive")
    m = int(m)
    if m == -1:
        return complex(0.0, math.pi)
    return complex(R ** (m + 1) * ((-1) ** (m + 1) - 1) / (m + 1), 0.0)


def _semicircle_vec(ms: np.ndarray, R: float) -> np.ndarray:
    """Vectorized ``semicircle_power_integral`` over an integer array."""
    ms = np.asarray(ms, dtype=int)
    out = np.zeros(ms.shape, dtype=complex)
    res = ms == -1
    out[res] = 1j * math.pi
    rest = ~res
    mp1 = ms[rest] + 1
    out[rest] = np.power(R, mp1.astype(float)) * (np.where(mp1 % 2 == 0, 0.0, -2.0)) / mp1
    return out


def tail_moment(tail: LaurentTail, n: int) -> complex:
    """n-th complex moment of the tail: contour integral of z**n * p(z)."""
    if tail.is_zero:
        return 0j
    ks = tail.indices()
    a = tail.coefficients()
    return complex(np.sum(a * _semicircle_vec(n - ks, tail.cutoff_R)))


def compact_moment(compact: CompactPart, n: int) -> complex:
    """Ordinary n-th moment of the compact part; imaginary part exactly 0."""
    total = 0.0
    for x, w in compact.atoms:
        total += w * x ** n
    if compact.table is not None:
        state = _table_state(compact.table)
        total += float(
            np.sum(state.weights * state.node_values * state.nodes ** n)
        )
    return complex(total, 0.0)


def moment(measure: MeasureP1, n: int) -> complex:
    """n-th complex moment: compact moment plus tail contour moment."""
    return compact_moment(measure.compact, n) + tail_moment(measure.tail, n)


def moment_sequence(measure: MeasureP1, n_max: int) -> ComplexSequence:
    """Moments 0..n_max as one sequence (entry 0 is the total mass)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals = np.zeros(n_max + 1, dtype=complex)
    tail = measure.tail
    if not tail.is_zero:
        ks = tail.indices()
        a = tail.coefficients()
        for n in range(n_max + 1):
            vals[n] += np.sum(a * _semicircle_vec(n - ks, tail.cutoff_R))
    compact = measure.compact
    if compact.table is not None:
        state = _table_state(compact.table)
        base = state.weights * state.node_values
        xpow = np.ones_like(state.nodes)
        for n in range(n_max + 1):
            vals[n] += np.sum(base * xpow)
            xpow = xpow * state.nodes
    for x, w in compact.atoms:
        vals += w * np.power(complex(x), np.arange(n_max + 1))
    return ComplexSequence.moments(vals)


# ---------------------------------------------------------------------------
# growth-radius estimation
# ---------------------------------------------------------------------------

def _radius_window(n_max: int) -> range:
    return range(max(1, (n_max + 1) // 2), n_max + 1)


def _radius_from_window(seq: ComplexSequence, window) -> float:
    best = 0.0
    for n in window:
        r = abs(seq[n]) ** (1.0 / n)
        if r > best:
            best = r
    return best


def radius_estimate(seq: ComplexSequence) -> float:
    """Finite-sample estimate of ``limsup |m_n|**(1/n)``.

    Takes the maximum of ``|m_n|**(1/n)`` over the top half of the available
    orders.  Returns 0 for a degenerate sequence whose entries beyond order
    0 all vanish.
    """
    if len(seq) < RADIUS_MIN_ENTRIES:
        raise ValueError(
            f"radius_estimate needs at least {RADIUS_MIN_ENTRIES} entries"
        )
    if all(seq[n] == 0 for n in range(1, len(seq))):
        return 0.0
    return _radius_from_window(seq, _radius_window(seq.n_max))


def _lenient_radius(seq: ComplexSequence) -> float:
    """Same estimator without the minimum-length guard (internal use)."""
    if len(seq) < 2 or all(seq[n] == 0 for n in range(1, len(seq))):
        return 0.0
    return _radius_from_window(seq, _radius_window(seq.n_max))


@dataclass(frozen=True)
class RadiusDiagnostics:
    """Companion diagnostic for ``radius_estimate``.

    ``window_values`` are the per-order roots ``|m_n|**(1/n)`` over the
    estimation window; ``extrapolated`` removes the leading 1/n bias by a
    least-squares fit of ``r_n ~ R + beta/n``; ``consistent`` flags whether
    the extrapolation agrees with the plain estimate within 10%.
    """

    estimate: float
    window: tuple
    window_values: tuple
    extrapolated: float
    consistent: bool


def radius_diagnostics(seq: ComplexSequence) -> RadiusDiagnostics:
    est = radius_estimate(seq)
    window = [n for n in _radius_window(seq.n_max) if seq[n] != 0]
    vals = [abs(seq[n]) ** (1.0 / n) for n in window]
    if len(window) >= 3:
        design = np.column_stack([np.ones(len(window)), 1.0 / np.array(window)])
        coef, *_ = np.linalg.lstsq(design, np.array(vals), rcond=None)
        extrapolated = max(float(coef[0]), 0.0)
    else:
        extrapolated = est
    consistent = abs(extrapolated - est) <= 0.1 * max(est, 1e-300)
    return RadiusDiagnostics(
        est, tuple(window), tuple(vals), extrapolated, consistent
    )
