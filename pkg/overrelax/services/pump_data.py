# overrelax/services/pump_data.py
import logging

import numpy as np

from overrelax.core.exceptions import ParameterError
from overrelax.models.distributions import Gamma, Poisson
from overrelax.models.pump import PumpDataset
from overrelax.services.variates import RngStream, draw

logger = logging.getLogger(__name__)


def generate_pump_data(p: int, gamma_shape: float, beta_true: float, seed: int) -> PumpDataset:
    """
    Synthetic counts for the hierarchical pump model.

    t_i = i/p; lambda_i ~ Gamma(shape=gamma_shape, scale=beta_true);
    s_i ~ Poisson(lambda_i t_i). The true tau is 1/beta_true.
    """
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    if not gamma_shape > 0 or not beta_true > 0:
        raise ParameterError(f"gamma_shape and beta_true must be > 0, got {gamma_shape}, {beta_true}")

    rng = RngStream(seed)
    rate_prior = Gamma.from_scale(gamma_shape, beta_true)
    t = np.arange(1, p + 1, dtype=float) / p
    s = np.empty(p, dtype=np.int64)
    for i in range(p):
        rate = draw(rate_prior, rng)
        s[i] = draw(Poisson(rate * t[i]), rng)

    logger.info(f"Generated pump dataset p={p}, total count={int(s.sum())}, seed={seed}")
    return PumpDataset(
        t=t,
        s=s,
        true_tau=1.0 / beta_true,
        seed=seed,
        gamma_shape=gamma_shape,
        beta_true=beta_true,
    )
