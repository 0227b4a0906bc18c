# tests/test_detailed_balance.py
"""
Exact transition matrices of the ordered kernels on small discrete targets.

Every tuple of K companion draws is enumerated with its probability, together
with the uniformly chosen position of the current value inside its block of
ties (and, for underrelaxation, the direction coin). The selection itself is
done by the same helpers the sampling kernels call.
"""
import itertools

import numpy as np
import pytest

from overrelax.services.kernels import neighbour_pick, ordered_pick, rank_bounds

TARGETS = {
    2: np.array([0.3, 0.7]),
    3: np.array([0.2, 0.5, 0.3]),
    4: np.array([0.1, 0.2, 0.3, 0.4]),
}


def transition_matrix(weights: np.ndarray, k: int, under: bool) -> np.ndarray:
    m = weights.shape[0]
    support = np.arange(m, dtype=float)
    matrix = np.zeros((m, m))
    for a in range(m):
        for combo in itertools.product(range(m), repeat=k):
            p_draws = float(np.prod(weights[list(combo)]))
            draws = support[list(combo)]
            _, ties = rank_bounds(support[a], draws)
            for offset in range(ties + 1):
                p = p_draws / (ties + 1)
                if under:
                    for step in (+1, -1):
                        value, _, _ = neighbour_pick(support[a], draws, offset, step)
                        matrix[a, int(value)] += 0.5 * p
                else:
                    value, _ = ordered_pick(support[a], draws, offset)
                    matrix[a, int(value)] += p
    return matrix


@pytest.mark.parametrize("under", [False, True], ids=["over", "under"])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_detailed_balance(m, k, under):
    weights = TARGETS[m]
    matrix = transition_matrix(weights, k, under)
    np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)

    flow = weights[:, None] * matrix
    assert np.max(np.abs(flow - flow.T)) < 1e-12
    np.testing.assert_allclose(weights @ matrix, weights, atol=1e-12)


def test_single_companion_is_an_independent_draw():
    # With K = 1 the new value is always the companion draw
    weights = TARGETS[2]
    matrix = transition_matrix(weights, 1, under=False)
    np.testing.assert_allclose(matrix, np.tile(weights, (2, 1)), atol=1e-12)
