# overrelax/services/monitors.py
import re
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from overrelax.core.exceptions import ParameterError
from overrelax.models.pump import PumpModel
from overrelax.models.targets import ConditionalModel

_COORDINATE = re.compile(r"^x(\d+)(sq)?$")


@dataclass(frozen=True)
class Monitor:
    """A named scalar function of the chain state"""

    name: str
    fn: Callable[[np.ndarray], float]

    def __call__(self, state: np.ndarray) -> float:
        return float(self.fn(state))


def coordinate(index: int, name: Optional[str] = None) -> Monitor:
    return Monitor(name or f"x{index + 1}", lambda state: state[index])


def square(index: int, name: Optional[str] = None) -> Monitor:
    return Monitor(name or f"x{index + 1}sq", lambda state: state[index] * state[index])


def monitor_by_name(name: str, model: ConditionalModel) -> Monitor:
    """
    Resolve a built-in monitor.

    ``x<k>`` is coordinate k (1-based), ``x<k>sq`` its square, ``tau`` and
    ``beta`` the pump hyperparameter and its reciprocal; any component name of
    the model (e.g. ``lambda3``) is also accepted.
    """
    names = model.component_names
    if name in ("tau", "beta"):
        if not isinstance(model, PumpModel):
            raise ParameterError(f"Monitor '{name}' needs the pump model")
        if name == "tau":
            return coordinate(model.tau_index, "tau")
        return Monitor("beta", model.beta)

    match = _COORDINATE.match(name)
    if match:
        index = int(match.group(1)) - 1
        if not 0 <= index < model.dimension:
            raise ParameterError(f"Monitor '{name}' refers to a component outside 1..{model.dimension}")
        return square(index, name) if match.group(2) else coordinate(index, name)

    if name in names:
        return coordinate(names.index(name), name)
    raise ParameterError(f"Unknown monitor '{name}'")


def resolve_monitors(names: Sequence[str], model: ConditionalModel) -> List[Monitor]:
    return [monitor_by_name(name, model) for name in names]
