"""Moment/cumulant conversion for the four species.

Each species writes moments as a weighted sum of cumulant products over a
partition family:

    tensor    all partitions,            weight 1,
    free      non-crossing partitions,   weight 1,
    boolean   interval partitions,       weight 1,
    monotone  non-crossing partitions,   weight = (admissible labelings)/k!.

Only block sizes enter a product, so each family is compressed to
(size multiset -> total weight) classes, cached per order.  The full-block
partition always carries weight 1, which makes the system triangular:
moments from cumulants by direct summation, cumulants from moments by
forward substitution.

A second, definitional route extracts the cumulant of order n as the
coefficient of N in the moments of the N-fold convolution power, via exact
Lagrange interpolation on the nodes N = 0..n.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import partitions as _parts
from .errors import SizeLimitError
from .sequences import ComplexSequence, CumulantKind, as_kind

ORDER_LIMIT = 10
_MASS_TOL = 1e-8


@lru_cache(maxsize=None)
def _size_classes(kind_value: str, n: int) -> tuple:
    """(sorted block-size tuple, total weight) classes for order n."""
    kind = CumulantKind(kind_value)
    if kind is CumulantKind.TENSOR:
        family = [(p, 1.0) for p in _parts.enumerate_partitions(n)]
    elif kind is CumulantKind.FREE:
        family = [(p, 1.0) for p in _parts.enumerate_noncrossing(n)]
    elif kind is CumulantKind.BOOLEAN:
        family = [(p, 1.0) for p in _parts.enumerate_interval(n)]
    else:
        family = [
            (p, _parts.monotone_order_count(p) / math.factorial(p.size))
            for p in _parts.enumerate_noncrossing(n)
        ]
    classes: dict = {}
    for p, w in family:
        key = tuple(sorted(p.block_sizes()))
        classes[key] = classes.get(key, 0.0) + w
    return tuple(sorted(classes.items()))


def _check_order(n_max: int) -> None:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > ORDER_LIMIT:
        raise SizeLimitError(
            f"n_max = {n_max} exceeds the partition-enumeration limit {ORDER_LIMIT}"
        )


def _check_moments(seq: ComplexSequence) -> None:
    if abs(seq[0] - 1.0) > _MASS_TOL:
        raise ValueError("moment sequence must have entry 0 equal to 1")


def cumulants_to_moments(kind, K: ComplexSequence, n_max: int) -> ComplexSequence:
    """Moments 0..n_max from cumulants 1..n_max of the given species."""
    kind = as_kind(kind)
    _check_order(n_max)
    if K.n_max < n_max:
        raise ValueError("cumulant sequence too short for requested n_max")
    m = np.zeros(n_max + 1, dtype=complex)
    m[0] = 1.0
    for n in range(1, n_max + 1):
        acc = 0j
        for sizes, weight in _size_classes(kind.value, n):
            prod = weight
            for s in sizes:
                prod = prod * K[s]
            acc += prod
        m[n] = acc
    return ComplexSequence.moments(m)


def moments_to_cumulants(kind, m: ComplexSequence, n_max: int) -> ComplexSequence:
    """Cumulants 1..n_max from moments, by forward substitution."""
    kind = as_kind(kind)
    _check_order(n_max)
    _check_moments(m)
    if m.n_max < n_max:
        raise ValueError("moment sequence too short for requested n_max")
    K = np.zeros(n_max + 1, dtype=complex)
    for n in range(1, n_max + 1):
        acc = 0j
        for sizes, weight in _size_classes(kind.value, n):
            if len(sizes) == 1:
                continue  # the full block carries the unknown K_n
            prod = weight
            for s in sizes:
                prod = prod * K[s]
            acc += prod
        K[n] = m[n] - acc
    return ComplexSequence.cumulants(K[1:], kind)


@lru_cache(maxsize=None)
def _lagrange_linear_weights(n: int) -> tuple:
    """Weight of each node value in the x-coefficient of the interpolant.

    For integer nodes 0..n the Lagrange basis polynomials have integer
    numerator coefficients; the expansion is done in exact integer
    arithmetic, so the returned rationals are exact.
    """
    weights = []
    for node in range(n + 1):
        coeffs = [1]  # polynomial product over (x - j), ascending powers
        denom = 1
        for j in range(n + 1):
            if j == node:
                continue
            denom *= node - j
            coeffs = [0] + coeffs
            for i in range(len(coeffs) - 1):
                coeffs[i] -= j * coeffs[i + 1]
        linear = coeffs[1] if len(coeffs) > 1 else 0
        weights.append(linear / denom)
    return tuple(weights)


def cumulants_by_n_extraction(kind, m: ComplexSequence, n_max: int) -> ComplexSequence:
    """Cumulants as the linear-in-N coefficient of N-fold convolution moments.

    For each order n the moments of the N-fold self-convolution are computed
    for N = 0..n (N = 0 is the point mass at zero) and the unique polynomial
    of degree <= n through those values is formed; its linear coefficient is
    the cumulant.  This is the definitional route, independent of the
    partition formulas for the monotone species, whose powers are computed
    by iterating the moment recursion.
    """
    from . import convolution  # deferred to avoid an import cycle

    kind = as_kind(kind)
    _check_order(n_max)
    _check_moments(m)
    powers = [
        convolution.convolution_power(kind, m, N, n_max)
        for N in range(n_max + 1)
    ]
    K = np.zeros(n_max + 1, dtype=complex)
    for n in range(1, n_max + 1):
        w = _lagrange_linear_weights(n)
        K[n] = sum(w[N] * powers[N][n] for N in range(n + 1))
    return ComplexSequence.cumulants(K[1:], kind)
