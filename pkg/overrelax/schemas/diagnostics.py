# overrelax/schemas/diagnostics.py
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np


@dataclass(eq=False)
class AcfReport:
    """Autocorrelation estimates of one monitored function and its autocorrelation time"""

    name: str
    acf_estimates: np.ndarray
    truncation_lag: int
    act: float
    n_samples: int
    burn_in: int
    rule: str
    near_zero_lag: Optional[int] = None

    @property
    def max_lag(self) -> int:
        return int(self.acf_estimates.shape[0]) - 1

    @property
    def lags(self) -> np.ndarray:
        return np.arange(self.acf_estimates.shape[0])

    def summary(self) -> Dict[str, Any]:
        return {
            "function": self.name,
            "act": self.act,
            "truncation_lag": self.truncation_lag,
            "near_zero_lag": self.near_zero_lag if self.near_zero_lag is not None else "",
            "n_samples": self.n_samples,
            "burn_in": self.burn_in,
            "rule": self.rule,
            "max_lag": self.max_lag,
        }
