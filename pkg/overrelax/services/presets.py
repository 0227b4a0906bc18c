# overrelax/services/presets.py
from typing import Any, Dict, List

from overrelax.core.config import settings
from overrelax.core.exceptions import ConfigError

_GAUSSIAN = {
    "model": "bivariate-gaussian",
    "rho": 0.998,
    "n_iter": 2000,
    "burn_in": settings.GAUSSIAN_BURN_IN,
    "monitors": "x1,x1sq",
}

_PUMP = {
    "model": "pump",
    "p": 100,
    "gamma_shape": 20.0,
    "hyper_gamma": 0.1,
    "hyper_delta": 1.0,
    "beta_true": 0.2,
    "n_iter": 600,
    "burn_in": settings.PUMP_BURN_IN,
    "monitors": "tau",
}

_TABLE = {**_GAUSSIAN, "n_iter": 1_000_000}

ADLER_ALPHA = -0.89

# 40 sweeps on rho = 0.998, recorded after every single-variable update
_PATH = {**_GAUSSIAN, "n_iter": 40, "burn_in": 0, "monitors": "x1,x2"}
PATH_ADLER_ALPHA = -0.98
PATH_START = (-1.5, -1.5)

# Single-run presets; values are merged under config-file keys and CLI flags
PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1-gibbs": {**_PATH, "method": "gibbs"},
    "fig1-adler": {**_PATH, "method": "adler", "adler_alpha": PATH_ADLER_ALPHA},
    "fig2-gibbs": {**_GAUSSIAN, "method": "gibbs"},
    "fig2-adler": {**_GAUSSIAN, "method": "adler", "adler_alpha": ADLER_ALPHA},
    "fig4-gibbs": {**_GAUSSIAN, "method": "gibbs"},
    "fig4-k32": {**_GAUSSIAN, "method": "ordered-over", "k": 32, "impl": "cdf"},
    "fig5-gibbs": {**_PUMP, "method": "gibbs"},
    "fig5-k5": {**_PUMP, "method": "ordered-over", "k": 5, "impl": "cdf"},
    "fig5-k11": {**_PUMP, "method": "ordered-over", "k": 11, "impl": "cdf"},
    "fig5-k21": {**_PUMP, "method": "ordered-over", "k": 21, "impl": "cdf"},
    "table-gibbs": {**_TABLE, "method": "gibbs"},
    "table-adler": {**_TABLE, "method": "adler", "adler_alpha": ADLER_ALPHA},
    "table-k8": {**_TABLE, "method": "ordered-over", "k": 8, "impl": "cdf"},
    "table-k16": {**_TABLE, "method": "ordered-over", "k": 16, "impl": "cdf"},
    "table-k32": {**_TABLE, "method": "ordered-over", "k": 32, "impl": "cdf"},
}

# Reproduction bundles; the first member is the Gibbs baseline
BUNDLES: Dict[str, List[str]] = {
    "fig1": ["fig1-gibbs", "fig1-adler"],
    "fig2": ["fig2-gibbs", "fig2-adler"],
    "fig4": ["fig4-gibbs", "fig4-k32"],
    "fig5": ["fig5-gibbs", "fig5-k5", "fig5-k11", "fig5-k21"],
    "table-eff": ["table-gibbs", "table-adler", "table-k8", "table-k16", "table-k32"],
}

# Ordered overrelaxation of 5000 uniform points with K = 100
FIG3 = {"k": 100, "n_points": 5000}

REPRODUCIBLE = sorted([*BUNDLES, "fig3"])


def preset_pairs(name: str) -> Dict[str, Any]:
    try:
        return dict(PRESETS[name])
    except KeyError:
        raise ConfigError(f"Unknown preset '{name}'; available: {', '.join(sorted(PRESETS))}", field="preset")


def bundle_members(name: str) -> List[str]:
    try:
        return list(BUNDLES[name])
    except KeyError:
        raise ConfigError(f"Unknown reproduction bundle '{name}'; available: {', '.join(REPRODUCIBLE)}", field="reproduce")
