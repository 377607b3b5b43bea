import numpy as np
import pytest

from lgsim.dephasing import SpectralProfile
from lgsim.quantum import QubitState


@pytest.fixture
def spec():
    return SpectralProfile.from_wavelength(0.78e-6, 3.56e13)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng) -> QubitState:
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = a @ a.conj().T
    return QubitState(m / np.trace(m).real)
