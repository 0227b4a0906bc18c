# overrelax/services/chain.py
import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from overrelax.core.exceptions import NumericalError, ParameterError
from overrelax.models.targets import ConditionalModel
from overrelax.schemas.sampler import (
    AdlerSpec,
    GibbsSpec,
    OrderedImpl,
    OrderedOverSpec,
    OrderedUnderSpec,
    SamplerSpec,
    UpdateAudit,
)
from overrelax.schemas.trace import ChainTrace
from overrelax.services.kernels import (
    adler_update,
    gibbs_update,
    ordered_overrelax_cdf,
    ordered_overrelax_direct,
    ordered_underrelax,
)
from overrelax.services.monitors import Monitor
from overrelax.services.variates import RngStream

logger = logging.getLogger(__name__)

Kernel = Callable[..., float]


def kernel_for(spec: SamplerSpec) -> Kernel:
    """Bind a sampler spec to a kernel with signature (i, state, model, rng, audit)"""
    if isinstance(spec, GibbsSpec):
        return gibbs_update
    if isinstance(spec, AdlerSpec):
        alpha = spec.adler_alpha
        return lambda i, state, model, rng, audit=None: adler_update(i, state, model, alpha, rng, audit)
    if isinstance(spec, OrderedOverSpec):
        kernel = ordered_overrelax_cdf if spec.impl == OrderedImpl.CDF else ordered_overrelax_direct
        return _with_k(kernel, spec.k)
    if isinstance(spec, OrderedUnderSpec):
        return _with_k(ordered_underrelax, spec.k)
    raise ParameterError(f"Unknown sampler spec {spec!r}")


def _with_k(kernel: Callable[..., float], k: int) -> Kernel:
    def update(i, state, model, rng, audit=None):
        return kernel(i, state, model, k, rng, audit)

    update.__name__ = f"{kernel.__name__}_k{k}"
    return update


def run_chain(
    model: ConditionalModel,
    spec: SamplerSpec,
    n_iter: int,
    init: Sequence[float],
    monitored: Sequence[Monitor],
    seed: int,
    burn_in: int = 0,
    chain_index: int = 0,
    audit: bool = False,
) -> ChainTrace:
    """
    Run ``n_iter`` sequential sweeps, updating components in ascending index order.

    Args:
        model: Target described by its full conditionals
        spec: Which update rule to apply to every component
        n_iter: Number of full sweeps
        init: Starting state, one value per component
        monitored: Functions of state recorded after every sweep
        seed: Master seed of the chain's RngStream
        burn_in: Sweeps to discard in later diagnostics (stored, not dropped)
        chain_index: Stream index, so chains sharing a seed stay independent
        audit: Record an UpdateAudit for every component update, carrying
            the value the component moved to

    Returns:
        ChainTrace with ``n_iter`` rows
    """
    state = np.array(init, dtype=float)
    if state.shape != (model.dimension,):
        raise ParameterError(f"Initial state has shape {state.shape}, model needs ({model.dimension},)")
    if not np.all(np.isfinite(state)):
        raise ParameterError("Initial state must be finite")
    if n_iter < 1:
        raise ParameterError(f"n_iter must be >= 1, got {n_iter}")

    rng = RngStream(seed, chain_index)
    update = kernel_for(spec)
    monitors = list(monitored)
    values = np.empty((n_iter, len(monitors)))
    audits: Optional[List[UpdateAudit]] = [] if audit else None

    logger.debug(f"Running {spec.label} for {n_iter} sweeps on {model!r} (seed={seed}, chain={chain_index})")
    for iteration in range(n_iter):
        recorded = len(audits) if audits is not None else 0
        for i in range(model.dimension):
            try:
                new_value = update(i, state, model, rng, audits)
            except (ParameterError, FloatingPointError, OverflowError) as e:
                raise NumericalError(str(e), iteration, i) from e
            if not math.isfinite(new_value):
                raise NumericalError(f"Update produced {new_value}", iteration, i)
            state[i] = new_value
            if audits is not None:
                audits[-1].value = new_value
        if audits is not None:
            for entry in audits[recorded:]:
                entry.iteration = iteration
        for column, monitor in enumerate(monitors):
            values[iteration, column] = monitor(state)

    return ChainTrace(
        names=[m.name for m in monitors],
        values=values,
        burn_in=burn_in,
        seed=seed,
        spec=spec,
        chain_index=chain_index,
        audits=audits,
        final_state=state.copy(),
    )


def update_path(trace: ChainTrace, init: Sequence[float]) -> np.ndarray:
    """States after every single-component update of an audited chain; row 0 is ``init``"""
    if trace.audits is None:
        raise ParameterError("The chain was run without audit=True; its update path is unknown")
    state = np.array(init, dtype=float)
    rows = [state.copy()]
    for entry in trace.audits:
        state[entry.component] = entry.value
        rows.append(state.copy())
    return np.vstack(rows)
