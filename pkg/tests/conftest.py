import numpy as np
import pytest

from polarix import JonesState


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def haar_states(rng, n):
    """n Haar-random normalized Jones states as an (n, 2) complex array."""
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_state(rng) -> JonesState:
    return JonesState.from_array(haar_states(rng, 1)[0])
