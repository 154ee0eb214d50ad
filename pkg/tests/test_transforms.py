import cmath
import math

import numpy as np
import pytest

from cmoments import fixtures as fx
from cmoments.errors import DivergenceError, DomainError, PoleError
from cmoments.measures import CompactPart, LaurentTail, MeasureP1
from cmoments.moments import moment_sequence, radius_estimate
from cmoments.sequences import delta_moments, power_moments
from cmoments.transforms import (
    TransformPoint,
    evaluate_transform,
    fourier_numeric,
    fourier_series,
    order_and_type,
    reciprocal_stieltjes,
    stieltjes_numeric,
    stieltjes_series,
)


def cauchy_stieltjes(a, b, z):
    """Closed form 1 / (z - a + i b sign(Im z))."""
    return 1.0 / (z - a + 1j * b * math.copysign(1.0, z.imag))


def point_mass(x):
    return MeasureP1(CompactPart(atoms=((x, 1.0),)), LaurentTail({}, 2.0, 1.0))


# --- Stieltjes, numeric ------------------------------------------------------

def test_stieltjes_point_mass_at_zero():
    assert stieltjes_numeric(point_mass(0.0), -1j) == pytest.approx(1j, abs=1e-14)


def test_stieltjes_cauchy_golden(cauchy01):
    assert stieltjes_numeric(cauchy01, -2j) == pytest.approx(1j / 3.0, abs=1e-10)
    z = 3.0 - 0.0001j
    assert stieltjes_numeric(cauchy01, z) == pytest.approx(
        cauchy_stieltjes(0.0, 1.0, z), abs=1e-9
    )


def test_stieltjes_cauchy_grid(cauchy01, cauchy34):
    for (a, b), m in (((0.0, 1.0), cauchy01), ((3.0, 4.0), cauchy34)):
        R = m.tail.cutoff_R
        for z in (-0.3 - 0.9j, 1.0 - 2.5j, -2 * R - 1j, R + 0.5 - 0.01j,
                  2.2 * R + 1.3j, -1.5 * R + 0.4j):
            assert stieltjes_numeric(m, z) == pytest.approx(
                cauchy_stieltjes(a, b, z), abs=1e-9
            )


def test_stieltjes_mixture_oracle():
    rng = np.random.default_rng(42)
    for _ in range(8):
        mix = fx.random_mixture(rng)
        m = mix.measure()
        R = m.tail.cutoff_R
        for z in (-0.7 - 1.1j, 2.0 - 0.5j, -2.5 * R - 2j, 2.5 * R + 1j):
            assert stieltjes_numeric(m, z) == pytest.approx(
                mix.exact_stieltjes(z), abs=1e-9
            )


def test_stieltjes_conjugation_symmetry(cauchy01):
    rng = np.random.default_rng(6)
    R = cauchy01.tail.cutoff_R
    for _ in range(6):
        z = complex(rng.uniform(-3, 3), -rng.uniform(0.2, 3.0))
        if abs(z) <= R:
            z = z / abs(z) * (R * 1.5)
        assert stieltjes_numeric(cauchy01, z.conjugate()) == pytest.approx(
            stieltjes_numeric(cauchy01, z).conjugate(), abs=1e-12
        )


def test_stieltjes_domain_and_poles(cauchy01):
    with pytest.raises(DomainError):
        stieltjes_numeric(cauchy01, 0.5 + 0.5j)
    with pytest.raises(PoleError):
        # real z essentially on the tail contour radius
        stieltjes_numeric(cauchy01, 2.0 * (1 + 1e-10))
    # overlapping decomposition: table wider than the tail cutoff
    wide = fx.cauchy_measure(0.0, 1.0, cutoff=3.0, n_trunc=180)
    overlap = MeasureP1(wide.compact, cauchy01.tail)
    with pytest.raises(PoleError):
        stieltjes_numeric(overlap, 2.5)  # real, inside the tabulated support
    with pytest.raises(PoleError):
        stieltjes_numeric(point_mass(1.0), 1.0)


# --- Stieltjes, series -------------------------------------------------------

def test_stieltjes_series_cauchy_moments():
    w = 0.6 + 0.8j
    seq = power_moments(w, 40)
    for z in (2.0 - 1j, -1.5 - 2j, 3.0 + 0.5j):
        assert stieltjes_series(seq, z) == pytest.approx(1.0 / (z - w), abs=1e-12)


def test_stieltjes_series_point_mass_at_zero():
    assert stieltjes_series(delta_moments(12), 5.0) == pytest.approx(0.2, abs=1e-15)


def test_stieltjes_series_matches_numeric(inverse_quartic):
    seq = moment_sequence(inverse_quartic, 40)
    z = -4j
    got, bound = stieltjes_series(seq, z, full_output=True)
    assert bound < 1e-10
    assert got == pytest.approx(stieltjes_numeric(inverse_quartic, z), abs=1e-6)


def test_stieltjes_series_divergence_guard():
    seq = power_moments(1.0 + 1.0j, 30)  # radius sqrt(2)
    with pytest.raises(DivergenceError):
        stieltjes_series(seq, 1.5)


# --- reciprocal ---------------------------------------------------------------

def test_reciprocal_cauchy(cauchy01, cauchy34):
    for (a, b), m in (((0.0, 1.0), cauchy01), ((3.0, 4.0), cauchy34)):
        for z in (-2j * m.tail.cutoff_R, 1.0 - 2.0j):
            assert reciprocal_stieltjes(m, z) == pytest.approx(
                z - a - 1j * b, abs=1e-8
            )


def test_reciprocal_point_mass():
    assert reciprocal_stieltjes(point_mass(0.0), -1j) == pytest.approx(-1j, abs=1e-14)


def test_reciprocal_reports_zero():
    m = MeasureP1(
        CompactPart(atoms=((-1.0, 0.5), (1.0, 0.5))), LaurentTail({}, 2.0, 1.0)
    )
    with pytest.raises(ZeroDivisionError):
        reciprocal_stieltjes(m, 0.0)


# --- Fourier, numeric ----------------------------------------------------------

def test_fourier_at_zero_is_mass(cauchy01, bimodal):
    for m in (cauchy01, bimodal):
        assert fourier_numeric(m, 0.0) == pytest.approx(1.0, abs=1e-10)


def test_fourier_cauchy_golden(cauchy01, cauchy34):
    assert fourier_numeric(cauchy01, 1.0) == pytest.approx(math.exp(-1), abs=1e-10)
    for (a, b), m in (((0.0, 1.0), cauchy01), ((3.0, 4.0), cauchy34)):
        for t in (0.3, 1.0, 2.0):
            assert fourier_numeric(m, t) == pytest.approx(
                cmath.exp(1j * a * t - b * t), abs=1e-10
            )


def test_fourier_inverse_quartic_golden(inverse_quartic):
    expected = math.exp(-0.5) * (math.cos(0.5) + math.sin(0.5))
    assert fourier_numeric(inverse_quartic, 1.0) == pytest.approx(expected, abs=1e-10)


def test_fourier_mixture_oracle():
    rng = np.random.default_rng(43)
    for _ in range(8):
        mix = fx.random_mixture(rng)
        m = mix.measure()
        for t in (-1.7, 0.25, 0.8, 2.0):
            assert fourier_numeric(m, t) == pytest.approx(
                mix.exact_fourier(t), abs=1e-9
            )


def test_fourier_conjugation_and_bound(cauchy01, bimodal_shift1):
    for m in (cauchy01, bimodal_shift1):
        for t in (0.1, 0.7, 1.9):
            ft = fourier_numeric(m, t)
            assert fourier_numeric(m, -t) == pytest.approx(ft.conjugate(), abs=1e-13)
            assert abs(ft) <= 1.0 + 1e-9


def test_fourier_symmetric_measure_is_real(bimodal):
    rng = np.random.default_rng(44)
    measures = [bimodal] + [
        fx.random_mixture(rng, symmetric=True).measure() for _ in range(3)
    ]
    for m in measures:
        for t in (0.2, 1.0, 1.8):
            assert abs(fourier_numeric(m, t).imag) < 1e-8


# --- Fourier, series -------------------------------------------------------------

def test_fourier_series_cauchy_entire():
    w = 0.3 + 0.7j
    seq = power_moments(w, 60)
    for z in (0.5, 2.0, 1.0 - 1.5j, -2.2 + 0.4j):
        assert fourier_series(seq, z) == pytest.approx(
            cmath.exp(1j * w * z), abs=1e-12
        )


def test_fourier_series_at_zero():
    rng = np.random.default_rng(45)
    mix = fx.random_mixture(rng)
    seq = mix.exact_moments(20)
    assert fourier_series(seq, 0.0) == 1.0


def test_fourier_series_bimodal_partial_sum_oracle(bimodal):
    seq = moment_sequence(bimodal, 48)
    expected = math.fsum(
        math.sqrt(2.0) * math.cos((3 * n + 1) * math.pi / 4.0) / math.factorial(n)
        for n in range(60)
    )
    assert fourier_series(seq, 1.0) == pytest.approx(expected, abs=1e-8)


def test_fourier_series_matches_numeric(cauchy34):
    seq = moment_sequence(cauchy34, 48)
    for t in (0.25, 1.0, 2.0):
        got, bound = fourier_series(seq, t, full_output=True)
        assert got == pytest.approx(fourier_numeric(cauchy34, t), abs=1e-7)
        assert bound < 1e-7


# --- one moment sequence drives both continuations --------------------------------

@pytest.mark.parametrize(
    "name",
    ["cauchy_0_1", "cauchy_3_4", "inverse_quartic", "bimodal_quartic",
     "bimodal_quartic_shift1"],
)
def test_shared_moments_continue_both_transforms(name, request):
    measure = fx.build_fixture(name)
    seq = moment_sequence(measure, 48)
    rad = radius_estimate(seq)
    angles = np.linspace(-math.pi + 0.25, -0.25, 10)
    for th in angles:
        z = 2.2 * rad * cmath.exp(1j * th)
        assert abs(
            stieltjes_series(seq, z) - stieltjes_numeric(measure, z)
        ) < 1e-6
    for t in np.linspace(0.2, 2.0, 10):
        assert abs(fourier_series(seq, t) - fourier_numeric(measure, t)) < 1e-6


# --- order and type ------------------------------------------------------------

def test_order_and_type_cauchy01(cauchy01):
    est = order_and_type(moment_sequence(cauchy01, 40))
    assert not est.degenerate
    assert est.order == pytest.approx(1.0, abs=0.1)
    assert est.type == pytest.approx(1.0, abs=0.05)


def test_order_and_type_point_mass():
    est = order_and_type(power_moments(-3.0, 40))
    assert est.order == pytest.approx(1.0, abs=0.1)
    assert est.type == pytest.approx(3.0, abs=1e-9)


def test_order_and_type_degenerate():
    est = order_and_type(delta_moments(25))
    assert est.degenerate
    assert est.type == 0.0
    assert math.isnan(est.order)


def test_order_and_type_needs_entries():
    with pytest.raises(ValueError):
        order_and_type(power_moments(1.0, 10))


# --- dispatch -----------------------------------------------------------------

def test_transform_point_validation():
    with pytest.raises(ValueError):
        TransformPoint(1j, "mellin")


def test_evaluate_transform_dispatch(cauchy01):
    v, err = evaluate_transform(cauchy01, TransformPoint(-2j, "stieltjes"))
    assert v == pytest.approx(1j / 3, abs=1e-10)
    v, _ = evaluate_transform(cauchy01, TransformPoint(-2j, "reciprocal"))
    assert v == pytest.approx(-3j, abs=1e-9)
    v, _ = evaluate_transform(cauchy01, TransformPoint(1.0, "fourier"))
    assert v == pytest.approx(math.exp(-1), abs=1e-10)
    with pytest.raises(DomainError):
        evaluate_transform(cauchy01, TransformPoint(1.0 + 1j, "fourier"))
