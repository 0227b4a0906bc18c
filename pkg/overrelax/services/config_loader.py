# overrelax/services/config_loader.py
"""
Experiment configuration from key=value files and command-line flags.

Precedence: preset defaults < config file < flags. Recognised keys are the
ExperimentConfig fields plus the flat sampler keys ``method``,
``adler_alpha`` (alias ``alpha``), ``k`` and ``impl``; ``iters`` is accepted
for ``n_iter``.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from pydantic import ValidationError

from overrelax.core.exceptions import ConfigError
from overrelax.schemas.experiment import ExperimentConfig
from overrelax.services.presets import preset_pairs
from overrelax.utils.keyvalue import read_pairs

logger = logging.getLogger(__name__)

SAMPLER_KEYS = ("method", "adler_alpha", "k", "impl")
ALIASES = {"alpha": "adler_alpha", "iters": "n_iter", "burn-in": "burn_in", "out-dir": "out_dir"}
_METHOD_PARAMETERS = {
    "gibbs": (),
    "adler": ("adler_alpha",),
    "ordered-over": ("k", "impl"),
    "ordered-under": ("k",),
}


def _normalise(pairs: Mapping[str, Any]) -> Dict[str, Any]:
    return {ALIASES.get(key, key): value for key, value in pairs.items() if value is not None}


def _sampler_from(pairs: Dict[str, Any], explicit: Dict[str, Any]) -> Dict[str, Any]:
    method = pairs.pop("method", None)
    params = {key: pairs.pop(key) for key in SAMPLER_KEYS[1:] if key in pairs}
    if method is None:
        if "adler_alpha" in params:
            method = "adler"
        elif "k" in params:
            method = "ordered-over"
        else:
            method = "gibbs"
    if method not in _METHOD_PARAMETERS:
        raise ConfigError(
            f"Unknown method '{method}'; expected one of {', '.join(_METHOD_PARAMETERS)}", field="method"
        )
    allowed = _METHOD_PARAMETERS[method]
    sampler = {"method": method}
    for key, value in params.items():
        if key in allowed:
            sampler[key] = value
        elif key in explicit:
            raise ConfigError(f"'{key}' is not a parameter of method '{method}'", field=key)
    return sampler


def parse_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """
    Build a validated ExperimentConfig.

    Args:
        path: Optional key=value config file
        overrides: Flag values; None entries are ignored

    Returns:
        ExperimentConfig with every default resolved (including the seed)

    Raises:
        ConfigError: naming the offending field
    """
    explicit: Dict[str, Any] = {}
    if path is not None:
        try:
            explicit.update(_normalise(read_pairs(path)))
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path}: {e}", field="config")
        except ValueError as e:
            raise ConfigError(str(e), field="config")
    explicit.update(_normalise(overrides or {}))

    merged: Dict[str, Any] = {}
    preset = explicit.get("preset")
    if preset:
        merged.update(preset_pairs(preset))
    merged.update(explicit)

    sampler = _sampler_from(merged, explicit)
    known = set(ExperimentConfig.model_fields)
    unknown = sorted(set(merged) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration key '{unknown[0]}'", field=unknown[0])

    try:
        config = ExperimentConfig(**merged, sampler=sampler)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"] if part not in ("sampler",)) or "config"
        if error["loc"] and error["loc"][0] == "sampler":
            field = str(error["loc"][-1])
        raise ConfigError(error["msg"], field=field) from e

    logger.debug(f"Resolved config: {config.flat()}")
    return config
