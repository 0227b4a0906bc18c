# tests/conftest.py
import numpy as np
import pytest
from scipy.signal import lfilter

from overrelax.models.distributions import Gamma, Gaussian, Uniform
from overrelax.services.pump_data import generate_pump_data
from overrelax.services.variates import RngStream


@pytest.fixture
def rng() -> RngStream:
    return RngStream(20240501)


@pytest.fixture
def standard_gaussian() -> Gaussian:
    return Gaussian(0.0, 1.0)


@pytest.fixture(params=["gaussian", "gamma", "uniform"])
def continuous_conditional(request):
    return {
        "gaussian": Gaussian(0.0, 1.0),
        "gamma": Gamma(3.0, 2.0),
        "uniform": Uniform(0.0, 1.0),
    }[request.param]


@pytest.fixture(scope="session")
def pump_dataset():
    return generate_pump_data(p=100, gamma_shape=20.0, beta_true=0.2, seed=7)


@pytest.fixture
def ar1():
    """Factory for stationary AR(1) series with unit innovation variance"""

    def make(phi: float, n: int, seed: int) -> np.ndarray:
        noise = np.random.default_rng(seed).standard_normal(n)
        x = np.empty(n)
        x[0] = noise[0] / np.sqrt(1.0 - phi * phi)
        x[1:], _ = lfilter([1.0], [1.0, -phi], noise[1:], zi=[phi * x[0]])
        return x

    return make
