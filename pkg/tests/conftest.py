import numpy as np
import pytest


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Random 2x2 unitary built from Givens rotations and phases."""
    theta = rng.uniform(0, 2 * np.pi)
    phi = rng.uniform(0, 2 * np.pi)
    alpha = rng.uniform(0, 2 * np.pi)
    beta = rng.uniform(0, 2 * np.pi)
    c, s = np.cos(theta), np.sin(theta)
    g = np.array([[c, -np.exp(1j * phi) * s], [np.exp(-1j * phi) * s, c]])
    return np.exp(1j * alpha) * g @ np.diag([np.exp(1j * beta), np.exp(-1j * beta)])


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (z + z.conj().T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
