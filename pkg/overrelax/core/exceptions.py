# overrelax/core/exceptions.py
from typing import Optional


class OverrelaxError(Exception):
    """Base class for errors raised by the library"""


class ParameterError(OverrelaxError, ValueError):
    """A distribution, model or sampler parameter is out of range"""


class UnsupportedFamilyError(OverrelaxError, TypeError):
    """The operation is not defined for this distribution family"""


class DiagnosticsError(OverrelaxError, ValueError):
    """A series cannot be analysed (too short, constant, unknown function)"""


class NumericalError(OverrelaxError, ArithmeticError):
    """A chain produced a non-finite value"""

    def __init__(self, message: str, iteration: int, component: int):
        super().__init__(f"{message} (iteration {iteration}, component {component})")
        self.iteration = iteration
        self.component = component


class ConfigError(OverrelaxError, ValueError):
    """An experiment configuration is malformed or violates a constraint"""

    def __init__(self, message: str, field: Optional[str] = None):
        prefix = f"{field}: " if field else ""
        super().__init__(f"{prefix}{message}")
        self.field = field
