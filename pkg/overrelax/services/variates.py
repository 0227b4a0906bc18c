# overrelax/services/variates.py
import logging
import math
from typing import Optional, Union

import numpy as np
from scipy import special

from overrelax.core.exceptions import ParameterError, UnsupportedFamilyError
from overrelax.models.distributions import (
    Beta,
    Binomial,
    Gamma,
    Gaussian,
    Poisson,
    ScalarDistribution,
    Uniform,
)

logger = logging.getLogger(__name__)

Sample = Union[float, int, np.ndarray]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_GAMMA_POLISH_STEPS = 4


class RngStream:
    """
    Seeded random stream owned by a single chain.

    The generator is PCG64 seeded from ``SeedSequence([seed, chain_index])``, so
    chains sharing a master seed but differing in index get independent streams,
    and the same pair always reproduces the same sequence.
    """

    def __init__(self, seed: int, chain_index: int = 0):
        if seed < 0 or seed >= 2**64:
            raise ParameterError(f"Seed must be a 64-bit unsigned integer, got {seed}")
        if chain_index < 0:
            raise ParameterError(f"Chain index must be >= 0, got {chain_index}")
        self.seed = int(seed)
        self.chain_index = int(chain_index)
        sequence = np.random.SeedSequence([self.seed, self.chain_index])
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def standard_normal(self) -> float:
        return float(self.generator.standard_normal())

    def uniform(self) -> float:
        return float(self.generator.random())

    def integer_below(self, n: int) -> int:
        return int(self.generator.integers(n))

    def coin(self) -> bool:
        return self.uniform() < 0.5

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, chain_index={self.chain_index})"


def draw(dist: ScalarDistribution, rng: RngStream, size: Optional[int] = None) -> Sample:
    """Draw one variate (or ``size`` iid variates) from ``dist``"""
    g = rng.generator
    if isinstance(dist, Gaussian):
        if size is None:
            return dist.mean + dist.sd * float(g.standard_normal())
        return dist.mean + dist.sd * g.standard_normal(size)
    if isinstance(dist, Gamma):
        value = g.gamma(dist.shape, 1.0 / dist.rate, size)
        return float(value) if size is None else value
    if isinstance(dist, Beta):
        value = g.beta(dist.a, dist.b, size)
        return float(value) if size is None else value
    if isinstance(dist, Uniform):
        value = g.uniform(dist.lo, dist.hi, size)
        return float(value) if size is None else value
    if isinstance(dist, Binomial):
        value = g.binomial(dist.n, dist.p, size)
        return int(value) if size is None else value
    if isinstance(dist, Poisson):
        value = g.poisson(dist.mean, size)
        return int(value) if size is None else value
    raise UnsupportedFamilyError(f"Cannot draw from {dist!r}")


def cdf(dist: ScalarDistribution, x: float) -> float:
    """Cumulative distribution function of a continuous family"""
    if isinstance(dist, Gaussian):
        return float(special.ndtr((x - dist.mean) / dist.sd))
    if isinstance(dist, Gamma):
        if x <= 0.0:
            return 0.0
        return float(special.gammainc(dist.shape, dist.rate * x))
    if isinstance(dist, Beta):
        return float(special.betainc(dist.a, dist.b, min(max(x, 0.0), 1.0)))
    if isinstance(dist, Uniform):
        return min(max((x - dist.lo) / (dist.hi - dist.lo), 0.0), 1.0)
    raise UnsupportedFamilyError(f"cdf is only defined for continuous families, got {dist.family}")


def quantile(dist: ScalarDistribution, u: float) -> float:
    """Inverse CDF; ``u`` must lie strictly inside (0, 1)"""
    if not dist.is_continuous:
        raise UnsupportedFamilyError(f"quantile is only defined for continuous families, got {dist.family}")
    if not 0.0 < u < 1.0:
        raise ParameterError(f"quantile requires 0 < u < 1, got {u}")

    if isinstance(dist, Gaussian):
        return dist.mean + dist.sd * float(special.ndtri(u))
    if isinstance(dist, Gamma):
        return _gamma_quantile(dist, u)
    if isinstance(dist, Beta):
        return float(special.betaincinv(dist.a, dist.b, u))
    return dist.lo + u * (dist.hi - dist.lo)


def _gamma_quantile(dist: Gamma, u: float) -> float:
    # gammaincinv gives the standard-gamma quantile; a few safeguarded Newton
    # steps on the CDF bring |F(x) - u| to the 1e-10 level in the far tails.
    x = float(special.gammaincinv(dist.shape, u))
    error = float(special.gammainc(dist.shape, x)) - u
    for _ in range(_GAMMA_POLISH_STEPS):
        if abs(error) <= 1e-14 or x <= 0.0:
            break
        density = math.exp((dist.shape - 1.0) * math.log(x) - x - special.gammaln(dist.shape))
        if density <= 0.0 or not math.isfinite(density):
            break
        candidate = x - error / density
        if candidate <= 0.0:
            candidate = 0.5 * x
        candidate_error = float(special.gammainc(dist.shape, candidate)) - u
        if abs(candidate_error) >= abs(error):
            break
        x, error = candidate, candidate_error
    return x / dist.rate


def log_pdf(dist: ScalarDistribution, x: float) -> float:
    """Log density of a continuous family (-inf outside the support)"""
    if isinstance(dist, Gaussian):
        z = (x - dist.mean) / dist.sd
        return -0.5 * z * z - math.log(dist.sd) - _LOG_SQRT_2PI
    if isinstance(dist, Gamma):
        if x <= 0.0:
            return -math.inf
        return (
            dist.shape * math.log(dist.rate)
            + (dist.shape - 1.0) * math.log(x)
            - dist.rate * x
            - float(special.gammaln(dist.shape))
        )
    if isinstance(dist, Beta):
        if not 0.0 < x < 1.0:
            return -math.inf
        return (
            (dist.a - 1.0) * math.log(x)
            + (dist.b - 1.0) * math.log1p(-x)
            - float(special.betaln(dist.a, dist.b))
        )
    if isinstance(dist, Uniform):
        if not dist.lo <= x <= dist.hi:
            return -math.inf
        return -math.log(dist.hi - dist.lo)
    raise UnsupportedFamilyError(f"log_pdf is only defined for continuous families, got {dist.family}")
