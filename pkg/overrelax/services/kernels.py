# overrelax/services/kernels.py
"""
Single-component update kernels.

Every kernel has the signature ``(i, state, model, rng, audit) -> new value``
for component ``i``; ``state`` is read, never written. ``audit`` is an optional
list that receives one UpdateAudit per call.

The ranking and selection steps are kept in pure helpers (``rank_bounds``,
``ordered_pick``, ``neighbour_pick``, ``relax_uniform``, ``adler_step``) so the
exact transition-matrix enumeration in the tests drives the same code as the
sampling kernels.
"""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from overrelax.core.config import settings
from overrelax.core.exceptions import ParameterError, UnsupportedFamilyError
from overrelax.models.distributions import Gaussian
from overrelax.models.targets import ConditionalModel
from overrelax.schemas.sampler import UpdateAudit
from overrelax.services.variates import RngStream, cdf, draw, quantile

logger = logging.getLogger(__name__)

AuditSink = Optional[List[UpdateAudit]]


def gibbs_update(
    i: int, state: np.ndarray, model: ConditionalModel, rng: RngStream, audit: AuditSink = None
) -> float:
    value = draw(model.full_conditional(i, state), rng)
    if audit is not None:
        audit.append(UpdateAudit(component=i))
    return float(value)


def adler_step(x: float, mean: float, sd: float, alpha: float, noise: float) -> float:
    return mean + alpha * (x - mean) + sd * math.sqrt(1.0 - alpha * alpha) * noise


def adler_update(
    i: int,
    state: np.ndarray,
    model: ConditionalModel,
    adler_alpha: float,
    rng: RngStream,
    audit: AuditSink = None,
) -> float:
    if not -1.0 <= adler_alpha <= 1.0:
        raise ParameterError(f"Adler's method requires −1 ≤ α ≤ +1, got {adler_alpha}")
    conditional = model.full_conditional(i, state)
    if not isinstance(conditional, Gaussian):
        raise UnsupportedFamilyError(
            f"Adler's method needs Gaussian full conditionals; component {i} is {conditional.family}"
        )
    noise = rng.standard_normal()
    value = adler_step(float(state[i]), conditional.mean, conditional.sd, adler_alpha, noise)
    if audit is not None:
        audit.append(UpdateAudit(component=i, noise_n=noise))
    return value


def rank_bounds(x: float, draws: np.ndarray) -> Tuple[int, int]:
    """Number of draws strictly below ``x`` and number exactly equal to it"""
    below = int(np.count_nonzero(draws < x))
    ties = int(np.count_nonzero(draws == x))
    return below, ties


def _ordered_pool(x: float, draws: np.ndarray) -> np.ndarray:
    return np.sort(np.append(draws, x))


def ordered_pick(x: float, draws: np.ndarray, tie_offset: int = 0) -> Tuple[float, int]:
    """
    Overrelaxed selection from ``x`` and its K companion draws.

    The old value's rank is r = (draws below x) + tie_offset, where tie_offset
    is its position inside the block of draws equal to x. Returns the value at
    index K - r of the sorted K + 1 values, together with r.
    """
    below, ties = rank_bounds(x, draws)
    if not 0 <= tie_offset <= ties:
        raise ParameterError(f"tie_offset must lie in [0, {ties}], got {tie_offset}")
    k = draws.shape[0]
    r = below + tie_offset
    return float(_ordered_pool(x, draws)[k - r]), r


def neighbour_pick(
    x: float, draws: np.ndarray, tie_offset: int, step: int
) -> Tuple[float, int, Optional[int]]:
    """
    Underrelaxed selection: move to index r + step (step is +1 or -1) of the
    sorted K + 1 values. An index outside [0, K] rejects the move, returning x
    and a chosen index of None.
    """
    below, ties = rank_bounds(x, draws)
    if not 0 <= tie_offset <= ties:
        raise ParameterError(f"tie_offset must lie in [0, {ties}], got {tie_offset}")
    k = draws.shape[0]
    r = below + tie_offset
    index = r + step
    if not 0 <= index <= k:
        return x, r, None
    return float(_ordered_pool(x, draws)[index]), r, index


def _draw_companions(i: int, state: np.ndarray, model: ConditionalModel, k: int, rng: RngStream):
    if k < 1:
        raise ParameterError(f"K must be >= 1, got {k}")
    draws = np.asarray(draw(model.full_conditional(i, state), rng, size=k))
    x = float(state[i])
    _, ties = rank_bounds(x, draws)
    tie_offset = rng.integer_below(ties + 1) if ties else 0
    return x, draws, tie_offset


def ordered_overrelax_direct(
    i: int,
    state: np.ndarray,
    model: ConditionalModel,
    k: int,
    rng: RngStream,
    audit: AuditSink = None,
) -> float:
    x, draws, tie_offset = _draw_companions(i, state, model, k, rng)
    value, r = ordered_pick(x, draws, tie_offset)
    if audit is not None:
        audit.append(UpdateAudit(component=i, k=k, r=r, chosen_index=k - r))
    return value


def ordered_underrelax(
    i: int,
    state: np.ndarray,
    model: ConditionalModel,
    k: int,
    rng: RngStream,
    audit: AuditSink = None,
) -> float:
    x, draws, tie_offset = _draw_companions(i, state, model, k, rng)
    step = 1 if rng.coin() else -1
    value, r, index = neighbour_pick(x, draws, tie_offset, step)
    if audit is not None:
        audit.append(UpdateAudit(component=i, k=k, r=r, chosen_index=index, rejected=index is None))
    return value


def relax_uniform(u: float, r: int, k: int, v: float) -> float:
    """Overrelax ``u`` for the uniform distribution given rank ``r`` and beta variate ``v``"""
    if r > k - r:
        return u * v
    if r < k - r:
        return 1.0 - (1.0 - u) * v
    return u


def _beta_parameters(r, k):
    # beta(K - r + 1, 2r - K) above the middle rank, beta(r + 1, K - 2r) below
    return np.where(r > k - r, k - r + 1, r + 1), np.where(r > k - r, 2 * r - k, k - 2 * r)


def ordered_overrelax_cdf(
    i: int,
    state: np.ndarray,
    model: ConditionalModel,
    k: int,
    rng: RngStream,
    audit: AuditSink = None,
) -> float:
    if k < 1:
        raise ParameterError(f"K must be >= 1, got {k}")
    conditional = model.full_conditional(i, state)
    if not conditional.is_continuous:
        raise UnsupportedFamilyError(
            f"The CDF implementation needs a continuous conditional; component {i} is {conditional.family}"
        )
    x = float(state[i])
    u = cdf(conditional, x)
    r = int(rng.generator.binomial(k, u))
    if 2 * r == k:
        if audit is not None:
            audit.append(UpdateAudit(component=i, k=k, u=u, r=r, u_prime=u))
        return x

    if r > k - r:
        v = float(rng.generator.beta(k - r + 1, 2 * r - k))
    else:
        v = float(rng.generator.beta(r + 1, k - 2 * r))
    u_prime = relax_uniform(u, r, k, v)
    eps = settings.CDF_CLAMP_EPS
    clamped = min(max(u_prime, eps), 1.0 - eps)
    if audit is not None:
        audit.append(UpdateAudit(component=i, k=k, u=u, r=r, v=v, u_prime=u_prime))
    return quantile(conditional, clamped)


def overrelax_uniform_batch(u: np.ndarray, k: int, rng: RngStream) -> np.ndarray:
    """Apply the CDF-based ordered overrelaxation to many uniform points at once"""
    if k < 1:
        raise ParameterError(f"K must be >= 1, got {k}")
    u = np.asarray(u, dtype=float)
    g = rng.generator
    r = g.binomial(k, u)
    a, b = _beta_parameters(r, k)
    middle = 2 * r == k
    # beta parameters are placeholders where r == K - r; those points keep u
    v = g.beta(np.where(middle, 1, a), np.where(middle, 1, b))
    u_prime = np.where(r > k - r, u * v, 1.0 - (1.0 - u) * v)
    return np.where(middle, u, u_prime)


def equivalent_K(adler_alpha: float) -> float:
    """K for which ordered overrelaxation roughly matches Adler's method with this alpha"""
    if adler_alpha <= -1.0:
        raise ParameterError(f"equivalent_K needs alpha > −1, got {adler_alpha}")
    if adler_alpha > 0.0:
        raise ParameterError(f"equivalent_K is defined for overrelaxation (alpha ≤ 0), got {adler_alpha}")
    return 3.5 / (1.0 + adler_alpha)
