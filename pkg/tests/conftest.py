import numpy as np
import pytest

from cmoments import fixtures as fx
from cmoments.sequences import ComplexSequence


@pytest.fixture(scope="session")
def cauchy01():
    return fx.cauchy_measure(0.0, 1.0, cutoff=2.0, n_trunc=122)


@pytest.fixture(scope="session")
def cauchy34():
    return fx.cauchy_measure(3.0, 4.0, cutoff=6.0, n_trunc=220)


@pytest.fixture(scope="session")
def inverse_quartic():
    return fx.inverse_quartic_measure()


@pytest.fixture(scope="session")
def bimodal():
    return fx.bimodal_quartic_measure(0.0)


@pytest.fixture(scope="session")
def bimodal_shift1():
    return fx.bimodal_quartic_measure(1.0)


def random_moment_sequence(rng, n_max=8):
    """Random moment sequence with entries in the unit disk and m_0 = 1."""
    vals = [1.0 + 0j]
    for _ in range(n_max):
        r = np.sqrt(rng.uniform(0.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * np.pi)
        vals.append(r * np.exp(1j * phi))
    return ComplexSequence.moments(vals)
