# overrelax/schemas/trace.py
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import TypeAdapter

from overrelax.schemas.sampler import SamplerSpec, UpdateAudit

sampler_spec_adapter = TypeAdapter(SamplerSpec)


@dataclass(eq=False)
class ChainTrace:
    """Monitored values of a chain, one row per sweep"""

    names: List[str]
    values: np.ndarray
    burn_in: int
    seed: int
    spec: SamplerSpec
    chain_index: int = 0
    audits: Optional[List[UpdateAudit]] = None
    final_state: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2 or self.values.shape[1] != len(self.names):
            raise ValueError(
                f"Trace values must have shape (iterations, {len(self.names)}), got {self.values.shape}"
            )
        if not 0 <= self.burn_in < self.values.shape[0]:
            raise ValueError(f"burn_in must lie in [0, {self.values.shape[0]}), got {self.burn_in}")

    @property
    def n_iter(self) -> int:
        return int(self.values.shape[0])

    @property
    def label(self) -> str:
        return self.spec.label

    def series(self, name: str) -> np.ndarray:
        try:
            column = self.names.index(name)
        except ValueError:
            raise KeyError(f"Trace does not monitor '{name}'; available: {', '.join(self.names)}")
        return self.values[:, column]
