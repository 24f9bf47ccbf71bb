import numpy as np
import pytest

from varbounds.linalg import Observable, QuantumState


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def random_observable(rng, d):
    return Observable(random_hermitian(rng, d))


def random_pure_state(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return QuantumState.pure(v / np.linalg.norm(v))


def random_mixed_state(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return QuantumState.mixed(rho / np.trace(rho).real)


def random_state(rng, d):
    if rng.integers(2):
        return random_mixed_state(rng, d)
    return random_pure_state(rng, d)
