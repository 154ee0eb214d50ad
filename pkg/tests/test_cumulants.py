import math

import numpy as np
import pytest

from cmoments.convolution import convolution_power, convolve_moments, dilate_moments
from cmoments.cumulants import (
    cumulants_by_n_extraction,
    cumulants_to_moments,
    moments_to_cumulants,
    _lagrange_linear_weights,
    _size_classes,
)
from cmoments.errors import SizeLimitError
from cmoments.moments import moment_sequence
from cmoments.partitions import enumerate_monotone
from cmoments.sequences import ComplexSequence, CumulantKind, power_moments

from conftest import random_moment_sequence

KINDS = tuple(CumulantKind)


def test_constant_first_cumulant_gives_powers():
    # K_1 = a+bi, higher cumulants zero: moments are (a+bi)^n for every kind
    w = 0.3 + 1.2j
    K = ComplexSequence.cumulants([w] + [0.0] * 7, "tensor")
    for kind in KINDS:
        K_kind = ComplexSequence.cumulants(K.values[1:], kind)
        m = cumulants_to_moments(kind, K_kind, 8)
        for n in range(9):
            assert m[n] == pytest.approx(w**n, abs=1e-12)


def test_zero_cumulants_give_point_mass():
    K = ComplexSequence.cumulants([0.0] * 8, "free")
    for kind in KINDS:
        m = cumulants_to_moments(kind, K, 8)
        assert m[0] == 1.0
        assert all(m[n] == 0 for n in range(1, 9))


def test_tensor_gaussian_fourth_moment():
    # K_2 = 1, others zero: m_4 = 3 (the three pair partitions of four points)
    K = ComplexSequence.cumulants([0.0, 1.0, 0.0, 0.0], "tensor")
    m = cumulants_to_moments("tensor", K, 4)
    assert m[2] == pytest.approx(1.0, abs=1e-14)
    assert m[4] == pytest.approx(3.0, abs=1e-14)


def test_variance_formula(inverse_quartic):
    seq = moment_sequence(inverse_quartic, 2)
    K = moments_to_cumulants("tensor", seq, 2)
    assert K[2] == pytest.approx(seq[2] - seq[1] ** 2, abs=1e-14)
    assert K[2] == pytest.approx(0.5, abs=1e-9)


def test_point_mass_cumulants():
    m = power_moments(1.7, 8)
    for kind in KINDS:
        K = moments_to_cumulants(kind, m, 8)
        assert K[1] == pytest.approx(1.7, abs=1e-13)
        assert max(abs(K[n]) for n in range(2, 9)) < 1e-12


def test_monotone_weights_match_enumeration():
    # the engine weighs each non-crossing partition by (labelings)/k!
    for n in range(1, 7):
        fibers = {}
        for q in enumerate_monotone(n):
            key = tuple(sorted(len(b) for b in q.base.blocks))
            fibers[key] = fibers.get(key, 0.0) + 1.0 / math.factorial(q.base.size)
        classes = dict(_size_classes("monotone", n))
        assert set(classes) == set(fibers)
        for key, w in classes.items():
            assert w == pytest.approx(fibers[key], abs=1e-12)


def test_roundtrip_identity_all_kinds():
    rng = np.random.default_rng(101)
    for _ in range(100):
        m = random_moment_sequence(rng, 8)
        for kind in KINDS:
            K = moments_to_cumulants(kind, m, 8)
            back = cumulants_to_moments(kind, K, 8)
            assert max(abs(back[n] - m[n]) for n in range(9)) < 1e-11


def test_extraction_matches_partition_formula():
    rng = np.random.default_rng(202)
    for _ in range(100):
        m = random_moment_sequence(rng, 6)
        for kind in KINDS:
            K_formula = moments_to_cumulants(kind, m, 6)
            K_extract = cumulants_by_n_extraction(kind, m, 6)
            assert max(abs(K_formula[n] - K_extract[n]) for n in range(1, 7)) < 1e-9


def test_extraction_on_cauchy_measure(cauchy01):
    seq = moment_sequence(cauchy01, 6)
    for kind in KINDS:
        K = cumulants_by_n_extraction(kind, seq, 6)
        assert K[1] == pytest.approx(1j, abs=1e-7)
        assert max(abs(K[n]) for n in range(2, 7)) < 1e-7


def test_power_moments_are_polynomial_in_N():
    # degree-n interpolation through N = 0..n predicts N = n+1 and n+2
    rng = np.random.default_rng(17)
    m = random_moment_sequence(rng, 5)
    for kind in KINDS:
        for n in range(1, 6):
            ys = [convolution_power(kind, m, N, n)[n] for N in range(n + 3)]
            # Newton forward differences: a degree-n polynomial has vanishing
            # (n+1)-th differences
            diffs = list(ys)
            for _ in range(n + 1):
                diffs = [b - a for a, b in zip(diffs, diffs[1:])]
            assert all(abs(d) < 1e-8 for d in diffs)


def test_lagrange_weights_exact_small_cases():
    assert _lagrange_linear_weights(1) == (-1.0, 1.0)
    # nodes 0,1,2: linear coefficient of interpolant is (-3y0 + 4y1 - y2)/2
    assert _lagrange_linear_weights(2) == (-1.5, 2.0, -0.5)


def test_cumulant_additivity_under_convolution():
    rng = np.random.default_rng(303)
    for _ in range(20):
        a = random_moment_sequence(rng, 8)
        b = random_moment_sequence(rng, 8)
        for kind in (CumulantKind.TENSOR, CumulantKind.FREE, CumulantKind.BOOLEAN):
            Ka = moments_to_cumulants(kind, a, 8).as_array()
            Kb = moments_to_cumulants(kind, b, 8).as_array()
            Kc = moments_to_cumulants(kind, convolve_moments(kind, a, b, 8), 8)
            for n in range(1, 9):
                scale = max(1.0, abs(Ka[n]), abs(Kb[n]))
                assert abs(Kc[n] - Ka[n] - Kb[n]) < 1e-10 * scale


def test_monotone_cumulants_scale_with_power():
    rng = np.random.default_rng(404)
    for _ in range(10):
        m = random_moment_sequence(rng, 8)
        K = moments_to_cumulants("monotone", m, 8)
        for N in (2, 3, 5):
            KN = moments_to_cumulants(
                "monotone", convolution_power("monotone", m, N, 8), 8
            )
            for n in range(1, 9):
                assert abs(KN[n] - N * K[n]) < 1e-9 * max(1.0, N**n)


def test_cumulant_homogeneity_under_dilation():
    rng = np.random.default_rng(505)
    m = random_moment_sequence(rng, 8)
    for c in (-1.3, 0.7):
        dil = dilate_moments(c, m)
        for kind in KINDS:
            K = moments_to_cumulants(kind, m, 8)
            Kc = moments_to_cumulants(kind, dil, 8)
            for n in range(1, 9):
                assert abs(Kc[n] - c**n * K[n]) < 1e-11 * max(1.0, abs(K[n]))


def test_order_guards():
    m = power_moments(1.0, 12)
    with pytest.raises(SizeLimitError):
        moments_to_cumulants("free", m, 11)
    bad = ComplexSequence.moments([0.5, 1.0])
    with pytest.raises(ValueError):
        moments_to_cumulants("free", bad, 1)
    short = power_moments(1.0, 3)
    with pytest.raises(ValueError):
        moments_to_cumulants("free", short, 5)
