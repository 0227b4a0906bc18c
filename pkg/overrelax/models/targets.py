# overrelax/models/targets.py
import math
from abc import ABC, abstractmethod
from typing import List

import numpy as np

from overrelax.core.exceptions import ParameterError
from overrelax.models.distributions import Gaussian, ScalarDistribution


class ConditionalModel(ABC):
    """
    A target distribution described through its full conditionals.

    ``full_conditional(i, state)`` must not look at ``state[i]``.
    """

    dimension: int

    @property
    def component_names(self) -> List[str]:
        return [f"x{k + 1}" for k in range(self.dimension)]

    @abstractmethod
    def full_conditional(self, i: int, state: np.ndarray) -> ScalarDistribution:
        ...

    def log_density(self, state: np.ndarray) -> float:
        """Unnormalised log density of the joint target"""
        raise NotImplementedError(f"{type(self).__name__} has no joint log density")

    def default_state(self) -> np.ndarray:
        return np.zeros(self.dimension)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.dimension:
            raise ParameterError(f"Component {i} out of range for dimension {self.dimension}")


def bivariate_conditional(rho: float, other: float) -> Gaussian:
    """Conditional of one coordinate of a unit-variance bivariate Gaussian given the other"""
    if not -1.0 < rho < 1.0:
        raise ParameterError(f"Correlation must satisfy |rho| < 1, got {rho}")
    return Gaussian(mean=rho * other, sd=math.sqrt(1.0 - rho * rho))


def multiquadratic_conditional(other: float) -> Gaussian:
    return Gaussian(mean=0.0, sd=1.0 / math.sqrt(2.0 * (1.0 + other * other)))


class BivariateGaussianModel(ConditionalModel):
    """Zero-mean bivariate Gaussian with unit marginal variances and correlation rho"""

    dimension = 2

    def __init__(self, rho: float):
        if not -1.0 < rho < 1.0:
            raise ParameterError(f"Correlation must satisfy |rho| < 1, got {rho}")
        self.rho = float(rho)

    def full_conditional(self, i: int, state: np.ndarray) -> Gaussian:
        self.check_index(i)
        return bivariate_conditional(self.rho, state[1 - i])

    def quadratic_form(self, state: np.ndarray) -> float:
        x1, x2 = state[0], state[1]
        return (x1 * x1 - 2.0 * self.rho * x1 * x2 + x2 * x2) / (1.0 - self.rho * self.rho)

    def log_density(self, state: np.ndarray) -> float:
        return -0.5 * self.quadratic_form(state)

    def __repr__(self) -> str:
        return f"BivariateGaussianModel(rho={self.rho})"


class MultiquadraticModel(ConditionalModel):
    """Density proportional to exp(-(1 + x1^2)(1 + x2^2)); conditionals are Gaussian"""

    dimension = 2

    def full_conditional(self, i: int, state: np.ndarray) -> Gaussian:
        self.check_index(i)
        return multiquadratic_conditional(state[1 - i])

    def log_density(self, state: np.ndarray) -> float:
        return -(1.0 + state[0] ** 2) * (1.0 + state[1] ** 2)

    def __repr__(self) -> str:
        return "MultiquadraticModel()"


class FixedConditionalModel(ConditionalModel):
    """One-component target whose conditional is a fixed distribution"""

    dimension = 1

    def __init__(self, distribution: ScalarDistribution):
        self.distribution = distribution

    def full_conditional(self, i: int, state: np.ndarray) -> ScalarDistribution:
        self.check_index(i)
        return self.distribution

    def default_state(self) -> np.ndarray:
        return np.array([float(self.distribution.mean)])

    def __repr__(self) -> str:
        return f"FixedConditionalModel({self.distribution!r})"
