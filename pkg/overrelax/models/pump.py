# overrelax/models/pump.py
"""
Hierarchical gamma-Poisson model for failure counts.

Counts s_i ~ Poisson(lambda_i t_i), rates lambda_i ~ Gamma(shape=gamma_shape,
scale=beta), and beta ~ InverseGamma(hyper_gamma, hyper_delta). The chain works
with tau = 1/beta, so the state is laid out as (lambda_1, ..., lambda_p, tau).
Gamma distributions are (shape, rate) throughout; beta_true is a scale and is
converted where data are generated.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from overrelax.core.config import settings
from overrelax.core.exceptions import ParameterError
from overrelax.models.distributions import Gamma
from overrelax.models.targets import ConditionalModel


@dataclass(eq=False)
class PumpDataset:
    t: np.ndarray
    s: np.ndarray
    true_tau: float = math.nan
    seed: int = -1
    gamma_shape: float = math.nan
    beta_true: float = math.nan

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.s = np.asarray(self.s, dtype=np.int64)
        if self.t.shape != self.s.shape or self.t.ndim != 1:
            raise ParameterError(f"t and s must be 1-D and equally long, got {self.t.shape} and {self.s.shape}")
        if np.any(self.s < 0):
            raise ParameterError("Counts s must be >= 0")
        if np.any(self.t <= 0):
            raise ParameterError("Exposures t must be > 0")

    @property
    def p(self) -> int:
        return int(self.t.shape[0])

    def metadata(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "seed": self.seed,
            "true_tau": self.true_tau,
            "gamma_shape": self.gamma_shape,
            "beta_true": self.beta_true,
        }


@dataclass(eq=False)
class PumpModel(ConditionalModel):
    gamma_shape: float
    hyper_gamma: float
    hyper_delta: float
    t: np.ndarray
    s: np.ndarray
    p: int = field(init=False)

    def __post_init__(self):
        self.t = np.array(self.t, dtype=float)
        self.s = np.array(self.s, dtype=np.int64)
        if self.t.shape != self.s.shape or self.t.ndim != 1 or self.t.shape[0] == 0:
            raise ParameterError("t and s must be non-empty 1-D arrays of equal length")
        for name in ("gamma_shape", "hyper_gamma", "hyper_delta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be > 0, got {value}")
        if np.any(self.t <= 0) or np.any(self.s < 0):
            raise ParameterError("Exposures must be > 0 and counts >= 0")
        self.p = int(self.t.shape[0])
        self.t.setflags(write=False)
        self.s.setflags(write=False)

    @classmethod
    def from_dataset(
        cls,
        dataset: PumpDataset,
        gamma_shape: float = 20.0,
        hyper_gamma: float = 0.1,
        hyper_delta: float = 1.0,
    ) -> "PumpModel":
        return cls(
            gamma_shape=gamma_shape,
            hyper_gamma=hyper_gamma,
            hyper_delta=hyper_delta,
            t=dataset.t.copy(),
            s=dataset.s.copy(),
        )

    @property
    def dimension(self) -> int:
        return self.p + 1

    @property
    def tau_index(self) -> int:
        return self.p

    @property
    def component_names(self) -> List[str]:
        return [f"lambda{k + 1}" for k in range(self.p)] + ["tau"]

    def full_conditional(self, i: int, state: np.ndarray) -> Gamma:
        self.check_index(i)
        if i == self.p:
            return pump_tau_conditional(self, state[: self.p])
        return pump_lambda_conditional(self, i, state[self.p])

    def log_density(self, state: np.ndarray) -> float:
        lambdas = state[: self.p]
        tau = state[self.p]
        if tau <= 0 or np.any(lambdas <= 0):
            return -math.inf
        return float(
            (self.p * self.gamma_shape + self.hyper_gamma - 1.0) * math.log(tau)
            - self.hyper_delta * tau
            + np.sum((self.s + self.gamma_shape - 1.0) * np.log(lambdas) - lambdas * (self.t + tau))
        )

    def beta(self, state: np.ndarray) -> float:
        return 1.0 / state[self.p]

    def default_state(self) -> np.ndarray:
        return initial_pump_state(self.s, self.t, self.gamma_shape)


def pump_tau_conditional(model: PumpModel, lambdas: np.ndarray) -> Gamma:
    lambdas = np.asarray(lambdas, dtype=float)
    if np.any(lambdas <= 0):
        raise ParameterError("All lambda_i must be > 0 to condition on them")
    return Gamma(
        shape=model.p * model.gamma_shape + model.hyper_gamma,
        rate=model.hyper_delta + float(np.sum(lambdas)),
    )


def pump_lambda_conditional(model: PumpModel, i: int, tau: float) -> Gamma:
    if not tau > 0:
        raise ParameterError(f"tau must be > 0, got {tau}")
    if not 0 <= i < model.p:
        raise ParameterError(f"lambda index {i} out of range for p={model.p}")
    return Gamma(shape=float(model.s[i]) + model.gamma_shape, rate=float(model.t[i]) + tau)


def initial_pump_state(s: np.ndarray, t: np.ndarray, gamma_shape: float) -> np.ndarray:
    # lambda_i = s_i / t_i, zero counts floored to keep lambda_i > 0;
    # tau = gamma_shape / mean(lambda)
    counts = np.where(s > 0, s.astype(float), settings.PUMP_ZERO_COUNT_FLOOR)
    lambdas = counts / t
    tau = gamma_shape / float(np.mean(lambdas))
    return np.append(lambdas, tau)


def init_pump_chain(dataset: PumpDataset, model: PumpModel) -> np.ndarray:
    if dataset.p != model.p:
        raise ParameterError(f"Dataset has {dataset.p} counts but the model expects {model.p}")
    return initial_pump_state(dataset.s, dataset.t, model.gamma_shape)
