"""Bundled measures with known closed-form complex moments.

Coefficient derivations (all large-|x| expansions of the densities):

* Cauchy family, density ``b / (pi ((x-a)^2 + b^2))`` with ``w = a + bi``:
  since ``b/((x-a)^2+b^2) = Im(1/(x - w))`` and ``1/(x - w) =
  sum_{m>=0} w^m x^{-(m+1)}``, the tail coefficients are
  ``a_n = Im(w^(n-1)) / pi`` for ``n >= 2`` (radius of convergence |w|).
  Complex moments: ``m_n = w**n``.

* Inverse quartic, density ``2 / (pi (1 + 4 x^4))``:
  ``2/(pi 4x^4 (1 + 1/(4x^4))) = sum_j (-1)^j / (2 pi 4^j) x^{-(4j+4)}``,
  convergent for ``|x| > 2**-0.5``.  Complex moments:
  ``m_n = i^n 2^((1-n)/2) sin((1-n) pi / 4)``.

* Bimodal quartic with shift s, density
  ``sqrt(2) (x-s)^2 / (pi (1 + (x-s)^4))``: in ``u = x - s``,
  ``u^2/(1+u^4) = sum_j (-1)^j u^{-(4j+2)}`` for |u| > 1, and
  ``u^{-m} = sum_l C(m+l-1, l) s^l x^{-(m+l)}``, so
  ``a_n = (sqrt(2)/pi) sum_{4j+2<=n} (-1)^j C(n-1, 4j+1) s^(n-4j-2)``
  (binomials summed in exact integer arithmetic when s = 1).
  Unshifted complex moments: ``m_n = sqrt(2) i^n cos((n-1) pi / 4)``;
  the shift acts by the binomial transform ``m_n(s) =
  sum_k C(n,k) m_k(0) s^(n-k)``.

Truncation depths and cutoffs are chosen so the dropped series tails are
below 1e-18 relative at the cutoff.
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .measures import (
    CompactPart,
    DensityTable,
    LaurentTail,
    MeasureP1,
    save_measure,
    load_measure,
)
from .sequences import ComplexSequence

FIXTURE_NAMES = (
    "cauchy_0_1",
    "cauchy_3_4",
    "inverse_quartic",
    "bimodal_quartic",
    "bimodal_quartic_shift1",
)


def _uniform_table(density, lo: float, hi: float, points: int) -> DensityTable:
    grid = np.linspace(lo, hi, points)
    return DensityTable(tuple(grid), tuple(float(density(x)) for x in grid))


# ---------------------------------------------------------------------------
# Cauchy measures and mixtures
# ---------------------------------------------------------------------------

def cauchy_density(a: float, b: float, x):
    return (b / math.pi) / ((x - a) ** 2 + b**2)


def cauchy_tail_coefficients(a: float, b: float, n_trunc: int) -> dict:
    w = complex(a, b)
    return {
        n: (w ** (n - 1)).imag / math.pi for n in range(2, n_trunc + 1)
    }


def cauchy_measure(a: float, b: float, cutoff: float | None = None,
                   n_trunc: int | None = None,
                   grid_points: int = 4097) -> MeasureP1:
    """The Cauchy distribution split at ``cutoff`` (default 2 |a + bi|)."""
    w = complex(a, b)
    if cutoff is None:
        cutoff = 2.0 * abs(w)
    if abs(w) >= cutoff:
        raise ValueError("cutoff must exceed |a + bi|")
    if n_trunc is None:
        n_trunc = max(40, 2 + math.ceil(-45.0 / math.log(abs(w) / cutoff)))
    tail = LaurentTail(cauchy_tail_coefficients(a, b, n_trunc), cutoff, abs(w))
    table = _uniform_table(
        lambda x: cauchy_density(a, b, x), -cutoff, cutoff, grid_points
    )
    return MeasureP1(CompactPart((), table), tail)


@dataclass(frozen=True)
class CauchyMixture:
    """Convex mixture of Cauchy components plus atoms.

    Every transform and moment has a closed form, which makes these the
    workhorse randomized fixtures: ``exact_moments`` is an independent
    oracle for the whole pipeline, and ``measure`` can split the same
    distribution at any cutoff above the component radius.
    """

    components: tuple  # (weight, a, b) triples
    atoms: tuple = ()  # (x, w) pairs

    @property
    def radius(self) -> float:
        return max(abs(complex(a, b)) for _, a, b in self.components)

    def measure(self, cutoff: float | None = None, grid_points: int = 2049,
                n_trunc: int | None = None) -> MeasureP1:
        if cutoff is None:
            cutoff = 1.6 * self.radius
        if cutoff <= self.radius:
            raise ValueError("cutoff must exceed the component radius")
        if n_trunc is None:
            n_trunc = max(
                40, 2 + math.ceil(-45.0 / math.log(self.radius / cutoff))
            )
        coeffs: dict = {}
        for weight, a, b in self.components:
            for n, c in cauchy_tail_coefficients(a, b, n_trunc).items():
                coeffs[n] = coeffs.get(n, 0.0) + weight * c
        tail = LaurentTail(coeffs, cutoff, self.radius)

        def density(x):
            return sum(w * cauchy_density(a, b, x) for w, a, b in self.components)

        table = _uniform_table(density, -cutoff, cutoff, grid_points)
        return MeasureP1(CompactPart(self.atoms, table), tail)

    def exact_moments(self, n_max: int) -> ComplexSequence:
        vals = np.zeros(n_max + 1, dtype=complex)
        for weight, a, b in self.components:
            vals += weight * np.power(complex(a, b), np.arange(n_max + 1))
        for x, w in self.atoms:
            vals += w * np.power(complex(x), np.arange(n_max + 1))
        return ComplexSequence.moments(vals)

    def exact_fourier(self, t: float) -> complex:
        out = 0j
        for weight, a, b in self.components:
            out += weight * np.exp(1j * a * t - b * abs(t))
        for x, w in self.atoms:
            out += w * np.exp(1j * x * t)
        return complex(out)

    def exact_stieltjes(self, z: complex) -> complex:
        z = complex(z)
        if z.imag == 0.0:
            raise ValueError("closed form needs Im z != 0")
        sign = 1.0 if z.imag > 0 else -1.0
        out = 0j
        for weight, a, b in self.components:
            out += weight / (z - a + 1j * b * sign)
        for x, w in self.atoms:
            out += w / (z - x)
        return complex(out)


def random_mixture(rng: np.random.Generator, symmetric: bool = False,
                   with_atoms: bool = True) -> CauchyMixture:
    """Draw a random valid mixture (masses normalized to one)."""
    k = int(rng.integers(1, 4))
    weights = rng.uniform(0.1, 1.0, size=k)
    weights *= rng.uniform(0.3, 0.8) / weights.sum()
    comps = []
    for w in weights:
        a = 0.0 if symmetric else float(rng.uniform(-0.8, 0.8))
        b = float(rng.uniform(1.0, 1.5))
        comps.append((float(w), a, b))
    atoms = []
    remaining = 1.0 - weights.sum()
    if with_atoms and remaining > 1e-12:
        n_at = int(rng.integers(1, 4))
        aw = rng.uniform(0.1, 1.0, size=n_at)
        aw *= remaining / aw.sum()
        if symmetric:
            for i in range(n_at):
                x = float(rng.uniform(0.0, 1.2))
                if x < 0.05:
                    atoms.append((0.0, float(aw[i])))
                else:
                    atoms.append((x, float(aw[i]) / 2))
                    atoms.append((-x, float(aw[i]) / 2))
        else:
            for i in range(n_at):
                atoms.append((float(rng.uniform(-1.2, 1.2)), float(aw[i])))
    else:
        # fold any leftover mass into the first component
        w0, a0, b0 = comps[0]
        comps[0] = (w0 + remaining, a0, b0)
    return CauchyMixture(tuple(comps), tuple(atoms))


# ---------------------------------------------------------------------------
# quartic-decay measures
# ---------------------------------------------------------------------------

def inverse_quartic_density(x):
    return 2.0 / (math.pi * (1.0 + 4.0 * x**4))


def inverse_quartic_measure(cutoff: float = 1.0, n_trunc: int = 124,
                            grid_points: int = 2049) -> MeasureP1:
    """Density 2 / (pi (1 + 4 x^4)); moments i^n 2^((1-n)/2) sin((1-n)pi/4)."""
    coeffs = {
        4 * j + 4: (-1) ** j / (2.0 * math.pi * 4.0**j)
        for j in range((n_trunc - 4) // 4 + 1)
    }
    tail = LaurentTail(coeffs, cutoff, 0.75)
    table = _uniform_table(inverse_quartic_density, -cutoff, cutoff, grid_points)
    return MeasureP1(CompactPart((), table), tail)


def inverse_quartic_moments(n_max: int) -> ComplexSequence:
    vals = [
        1j**n * 2.0 ** ((1 - n) / 2.0) * math.sin((1 - n) * math.pi / 4.0)
        for n in range(n_max + 1)
    ]
    return ComplexSequence.moments(vals)


def bimodal_quartic_density(shift: float, x):
    u = x - shift
    return math.sqrt(2.0) * u**2 / (math.pi * (1.0 + u**4))


def _bimodal_radius(shift: float) -> float:
    roots = [complex(shift) + np.exp(1j * math.pi * (2 * k + 1) / 4) for k in range(4)]
    return max(abs(r) for r in roots)


def bimodal_quartic_measure(shift: float = 0.0, cutoff: float | None = None,
                            n_trunc: int | None = None,
                            grid_points: int | None = None) -> MeasureP1:
    """Density sqrt(2) (x-s)^2 / (pi (1 + (x-s)^4))."""
    radius = _bimodal_radius(shift)
    if cutoff is None:
        cutoff = 1.5 if shift == 0.0 else 1.35 * radius
    if cutoff <= radius:
        raise ValueError("cutoff must exceed the singularity radius")
    if n_trunc is None:
        n_trunc = max(60, 2 + math.ceil(-45.0 / math.log(radius / cutoff)))
    if grid_points is None:
        grid_points = 2049 if shift == 0.0 else 3073
    pref = math.sqrt(2.0) / math.pi
    coeffs = {}
    for n in range(2, n_trunc + 1):
        total = 0.0
        for j in range((n - 2) // 4 + 1):
            total += (-1) ** j * math.comb(n - 1, 4 * j + 1) * shift ** (n - 4 * j - 2)
        if total:
            coeffs[n] = pref * total
    tail = LaurentTail(coeffs, cutoff, 0.5 * (radius + cutoff))
    table = _uniform_table(
        lambda x: bimodal_quartic_density(shift, x), -cutoff, cutoff, grid_points
    )
    return MeasureP1(CompactPart((), table), tail)


def bimodal_quartic_moments(shift: float, n_max: int) -> ComplexSequence:
    base = [
        math.sqrt(2.0) * 1j**n * math.cos((n - 1) * math.pi / 4.0)
        for n in range(n_max + 1)
    ]
    if shift == 0.0:
        return ComplexSequence.moments(base)
    vals = [
        sum(math.comb(n, k) * base[k] * shift ** (n - k) for k in range(n + 1))
        for n in range(n_max + 1)
    ]
    return ComplexSequence.moments(vals)


# ---------------------------------------------------------------------------
# bundled fixture files
# ---------------------------------------------------------------------------

def build_fixture(name: str) -> MeasureP1:
    if name == "cauchy_0_1":
        return cauchy_measure(0.0, 1.0, cutoff=2.0, n_trunc=122)
    if name == "cauchy_3_4":
        return cauchy_measure(3.0, 4.0, cutoff=6.0, n_trunc=220)
    if name == "inverse_quartic":
        return inverse_quartic_measure()
    if name == "bimodal_quartic":
        return bimodal_quartic_measure(0.0)
    if name == "bimodal_quartic_shift1":
        return bimodal_quartic_measure(1.0)
    raise KeyError(f"unknown fixture {name!r}")


def fixture_path(name: str):
    """Path of a bundled fixture spec file inside the installed package."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return resources.files("cmoments").joinpath("data", f"{name}.json")


def load_fixture(name: str) -> MeasureP1:
    return load_measure(fixture_path(name))


def write_fixture_files(out_dir) -> list:
    """Regenerate the bundled fixture spec files into ``out_dir``."""
    import pathlib

    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in FIXTURE_NAMES:
        path = out_dir / f"{name}.json"
        save_measure(build_fixture(name), path)
        written.append(path)
    return written


def _main(argv=None):
    parser = argparse.ArgumentParser(description="regenerate bundled fixtures")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)
    for path in write_fixture_files(args.out):
        print(path)


if __name__ == "__main__":
    _main()
