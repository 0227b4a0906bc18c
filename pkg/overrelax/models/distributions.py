# overrelax/models/distributions.py
import math
import numbers
from dataclasses import dataclass
from typing import ClassVar, Union

from overrelax.core.exceptions import ParameterError


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Gaussian:
    mean: float
    sd: float

    family: ClassVar[str] = "gaussian"
    is_continuous: ClassVar[bool] = True

    def __post_init__(self):
        _require(_finite(self.mean, self.sd), f"Gaussian parameters must be finite, got {self}")
        _require(self.sd > 0, f"Gaussian sd must be > 0, got {self.sd}")

    @property
    def variance(self) -> float:
        return self.sd * self.sd


@dataclass(frozen=True)
class Gamma:
    """Gamma in (shape, rate) form: density proportional to x^(shape-1) exp(-rate x)"""

    shape: float
    rate: float

    family: ClassVar[str] = "gamma"
    is_continuous: ClassVar[bool] = True

    def __post_init__(self):
        _require(_finite(self.shape, self.rate), f"Gamma parameters must be finite, got {self}")
        _require(self.shape > 0, f"Gamma shape must be > 0, got {self.shape}")
        _require(self.rate > 0, f"Gamma rate must be > 0, got {self.rate}")

    @classmethod
    def from_scale(cls, shape: float, scale: float) -> "Gamma":
        _require(scale > 0, f"Gamma scale must be > 0, got {scale}")
        return cls(shape=shape, rate=1.0 / scale)

    @property
    def mean(self) -> float:
        return self.shape / self.rate

    @property
    def variance(self) -> float:
        return self.shape / (self.rate * self.rate)


@dataclass(frozen=True)
class Beta:
    a: float
    b: float

    family: ClassVar[str] = "beta"
    is_continuous: ClassVar[bool] = True

    def __post_init__(self):
        _require(_finite(self.a, self.b), f"Beta parameters must be finite, got {self}")
        _require(self.a > 0 and self.b > 0, f"Beta parameters must be > 0, got {self}")

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)

    @property
    def variance(self) -> float:
        total = self.a + self.b
        return self.a * self.b / (total * total * (total + 1))


@dataclass(frozen=True)
class Binomial:
    n: int
    p: float

    family: ClassVar[str] = "binomial"
    is_continuous: ClassVar[bool] = False

    def __post_init__(self):
        _require(isinstance(self.n, numbers.Integral) and self.n >= 0, f"Binomial n must be an integer >= 0, got {self.n}")
        _require(0.0 <= self.p <= 1.0, f"Binomial p must lie in [0, 1], got {self.p}")

    @property
    def mean(self) -> float:
        return self.n * self.p

    @property
    def variance(self) -> float:
        return self.n * self.p * (1.0 - self.p)


@dataclass(frozen=True)
class Poisson:
    mean: float

    family: ClassVar[str] = "poisson"
    is_continuous: ClassVar[bool] = False

    def __post_init__(self):
        _require(_finite(self.mean) and self.mean >= 0, f"Poisson mean must be finite and >= 0, got {self.mean}")

    @property
    def variance(self) -> float:
        return self.mean


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    family: ClassVar[str] = "uniform"
    is_continuous: ClassVar[bool] = True

    def __post_init__(self):
        _require(_finite(self.lo, self.hi), f"Uniform bounds must be finite, got {self}")
        _require(self.hi > self.lo, f"Uniform requires hi > lo, got {self}")

    @property
    def mean(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def variance(self) -> float:
        width = self.hi - self.lo
        return width * width / 12.0


ScalarDistribution = Union[Gaussian, Gamma, Beta, Binomial, Poisson, Uniform]
