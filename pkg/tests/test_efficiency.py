# tests/test_efficiency.py
"""Efficiency of Adler and ordered overrelaxation against Gibbs on a highly correlated Gaussian."""
import pytest

from overrelax.models.targets import BivariateGaussianModel
from overrelax.schemas.sampler import AdlerSpec, GibbsSpec, OrderedOverSpec
from overrelax.services.chain import run_chain
from overrelax.services.diagnostics import efficiency_ratio
from overrelax.services.monitors import coordinate, square
from overrelax.utils.seeding import derive_seed

N_SWEEPS = 10**6
BURN_IN = 100
MASTER_SEED = 1995

pytestmark = pytest.mark.slow


def long_run(spec):
    model = BivariateGaussianModel(0.998)
    return run_chain(
        model,
        spec,
        N_SWEEPS,
        model.default_state(),
        [coordinate(0), square(0)],
        seed=derive_seed(MASTER_SEED, spec.label),
        burn_in=BURN_IN,
    )


@pytest.fixture(scope="module")
def gibbs_trace():
    return long_run(GibbsSpec())


@pytest.fixture(scope="module")
def ordered_ratios(gibbs_trace):
    return {k: efficiency_ratio(gibbs_trace, long_run(OrderedOverSpec(k=k)), "x1") for k in (8, 16, 32)}


def test_adler(gibbs_trace):
    adler = long_run(AdlerSpec(adler_alpha=-0.89))
    assert 15.0 <= efficiency_ratio(gibbs_trace, adler, "x1") <= 29.0
    assert 11.0 <= efficiency_ratio(gibbs_trace, adler, "x1sq") <= 21.0


@pytest.mark.parametrize("k,expected", [(8, 8.0), (16, 12.0), (32, 22.0)])
def test_ordered_overrelaxation(ordered_ratios, k, expected):
    assert ordered_ratios[k] == pytest.approx(expected, rel=0.30)


def test_gain_grows_with_k(ordered_ratios):
    assert ordered_ratios[8] < ordered_ratios[16] < ordered_ratios[32]
