# tests/test_kernels.py
import numpy as np
import pytest
from pydantic import ValidationError

from overrelax.core.exceptions import ParameterError, UnsupportedFamilyError
from overrelax.models.distributions import Gamma, Gaussian, Poisson, Uniform
from overrelax.models.targets import BivariateGaussianModel, FixedConditionalModel
from overrelax.schemas.sampler import AdlerSpec, GibbsSpec, OrderedOverSpec, OrderedUnderSpec, UpdateAudit
from overrelax.services.chain import run_chain
from overrelax.services.kernels import (
    adler_step,
    adler_update,
    equivalent_K,
    gibbs_update,
    neighbour_pick,
    ordered_overrelax_cdf,
    ordered_overrelax_direct,
    ordered_pick,
    ordered_underrelax,
    overrelax_uniform_batch,
    rank_bounds,
    relax_uniform,
)
from overrelax.services.monitors import coordinate
from overrelax.services.variates import RngStream


class TestAdler:
    def test_single_step(self):
        assert adler_step(1.0, 0.0, 1.0, -0.89, 0.5) == pytest.approx(-0.66202, abs=1e-5)

    def test_alpha_minus_one_reflects(self):
        assert adler_step(1.7, 0.4, 2.0, -1.0, 123.0) == pytest.approx(2 * 0.4 - 1.7)

    def test_alpha_zero_is_gibbs(self):
        model = BivariateGaussianModel(0.998)
        monitors = [coordinate(0), coordinate(1)]
        gibbs = run_chain(model, GibbsSpec(), 200, [0.0, 0.0], monitors, seed=5)
        adler = run_chain(model, AdlerSpec(adler_alpha=0.0), 200, [0.0, 0.0], monitors, seed=5)
        np.testing.assert_array_equal(gibbs.values, adler.values)

    def test_rejects_alpha_outside_range(self, rng):
        model = BivariateGaussianModel(0.5)
        with pytest.raises(ParameterError, match="−1 ≤ α ≤ \\+1"):
            adler_update(0, np.zeros(2), model, -1.5, rng)
        with pytest.raises(ValidationError, match="−1 ≤ α ≤ \\+1"):
            AdlerSpec(adler_alpha=-1.5)

    def test_requires_gaussian_conditional(self, rng):
        model = FixedConditionalModel(Gamma(2.0, 1.0))
        with pytest.raises(UnsupportedFamilyError):
            adler_update(0, model.default_state(), model, -0.5, rng)

    def test_audit_records_noise(self, rng):
        audit = []
        adler_update(1, np.array([0.2, 0.1]), BivariateGaussianModel(0.5), -0.5, rng, audit)
        assert audit[0].component == 1
        assert audit[0].noise_n is not None


class TestOrderedSelection:
    def test_rank_bounds(self):
        assert rank_bounds(0.5, np.array([0.5, 0.1, 0.5, 0.9])) == (1, 2)

    def test_pick_reflects_rank(self):
        value, r = ordered_pick(0.5, np.array([0.9, 0.1, 0.7]))
        assert r == 1
        assert value == 0.7

    def test_single_draw_always_swaps(self):
        assert ordered_pick(0.3, np.array([0.8])) == (0.8, 0)
        assert ordered_pick(0.8, np.array([0.3])) == (0.3, 1)

    def test_extreme_ranks(self):
        draws = np.array([2.0, 3.0, 4.0])
        assert ordered_pick(1.0, draws) == (4.0, 0)
        assert ordered_pick(5.0, draws) == (1.0, 3)

    def test_ties_use_offset(self):
        draws = np.array([0.5, 0.5, 0.2])
        assert ordered_pick(0.5, draws, tie_offset=0) == (0.5, 1)
        assert ordered_pick(0.5, draws, tie_offset=2) == (0.2, 3)
        with pytest.raises(ParameterError):
            ordered_pick(0.5, draws, tie_offset=3)

    def test_neighbour_pick(self):
        draws = np.array([0.1, 0.7, 0.9])
        assert neighbour_pick(0.5, draws, 0, +1) == (0.7, 1, 2)
        assert neighbour_pick(0.5, draws, 0, -1) == (0.1, 1, 0)

    def test_neighbour_pick_rejects_outside(self):
        draws = np.array([0.1, 0.7])
        assert neighbour_pick(0.05, draws, 0, -1) == (0.05, 0, None)
        assert neighbour_pick(0.95, draws, 0, +1) == (0.95, 2, None)

    def test_relax_uniform_branches(self):
        assert relax_uniform(0.8, 7, 10, 0.5) == pytest.approx(0.4)
        assert relax_uniform(0.2, 3, 10, 0.5) == pytest.approx(0.6)
        assert relax_uniform(0.3, 5, 10, 0.5) == 0.3


class TestKernels:
    @pytest.mark.parametrize(
        "kernel",
        [ordered_overrelax_direct, ordered_overrelax_cdf, ordered_underrelax],
    )
    def test_rejects_non_positive_k(self, kernel, rng):
        model = FixedConditionalModel(Gaussian(0.0, 1.0))
        with pytest.raises(ParameterError):
            kernel(0, model.default_state(), model, 0, rng)

    def test_cdf_requires_continuous_conditional(self, rng):
        model = FixedConditionalModel(Poisson(3.0))
        with pytest.raises(UnsupportedFamilyError):
            ordered_overrelax_cdf(0, np.array([2.0]), model, 5, rng)

    def test_direct_works_on_discrete_conditional(self, rng):
        model = FixedConditionalModel(Poisson(3.0))
        value = ordered_overrelax_direct(0, np.array([2.0]), model, 5, rng)
        assert value == int(value)

    def test_cdf_middle_rank_keeps_value(self, rng):
        model = FixedConditionalModel(Gaussian(0.0, 1.0))
        state = np.array([0.4])
        audit = []
        values = [ordered_overrelax_cdf(0, state, model, 2, rng, audit) for _ in range(500)]
        middle = [value for value, entry in zip(values, audit) if entry.r == 1]
        assert middle
        assert all(value == 0.4 for value in middle)
        moved = [value for value, entry in zip(values, audit) if entry.r != 1]
        assert all(value != 0.4 for value in moved)

    def test_cdf_audit_fields(self, rng):
        model = FixedConditionalModel(Gamma(3.0, 2.0))
        audit = []
        ordered_overrelax_cdf(0, np.array([1.0]), model, 11, rng, audit)
        entry = audit[0]
        assert 0.0 <= entry.u <= 1.0
        assert entry.k == 11
        assert 0 <= entry.r <= 11
        assert 0.0 <= entry.u_prime <= 1.0

    @pytest.mark.parametrize("fields", [{"k": 3, "r": 4}, {"r": 2}, {"k": 0}])
    def test_audit_rank_must_not_exceed_k(self, fields):
        with pytest.raises(ValidationError):
            UpdateAudit(component=0, **fields)

    def test_cdf_overrelaxes_uniform(self, rng):
        # A point high in the conditional moves to the opposite side
        model = FixedConditionalModel(Uniform(0.0, 1.0))
        values = [ordered_overrelax_cdf(0, np.array([0.95]), model, 100, rng) for _ in range(200)]
        assert np.mean(values) < 0.2

    def test_underrelax_audit_marks_rejections(self, rng):
        model = FixedConditionalModel(Uniform(0.0, 1.0))
        audit = []
        for _ in range(300):
            ordered_underrelax(0, np.array([0.999]), model, 3, rng, audit)
        rejected = [entry for entry in audit if entry.rejected]
        assert rejected
        assert all(entry.chosen_index is None for entry in rejected)

    def test_gibbs_update_ignores_current_value(self):
        model = BivariateGaussianModel(0.5)
        a = gibbs_update(0, np.array([100.0, 1.0]), model, RngStream(9))
        b = gibbs_update(0, np.array([-100.0, 1.0]), model, RngStream(9))
        assert a == b


class TestUniformBatch:
    def test_range_and_shape(self, rng):
        u = np.random.default_rng(1).random(5000)
        u_prime = overrelax_uniform_batch(u, 100, rng)
        assert u_prime.shape == u.shape
        assert np.all((u_prime >= 0.0) & (u_prime <= 1.0))
        # Points move to the other side of 1/2 almost always
        assert np.corrcoef(u, u_prime)[0, 1] < -0.9

    def test_even_k_middle_rank_keeps_points(self, rng):
        u = np.full(2000, 0.5)
        u_prime = overrelax_uniform_batch(u, 2, rng)
        assert np.any(u_prime == 0.5)

    def test_rejects_non_positive_k(self, rng):
        with pytest.raises(ParameterError):
            overrelax_uniform_batch(np.array([0.5]), 0, rng)


def test_equivalent_k():
    assert equivalent_K(-0.89) == pytest.approx(31.8, abs=0.05)
    assert equivalent_K(0.0) == pytest.approx(3.5)
    for alpha in (-1.0, 0.5):
        with pytest.raises(ParameterError):
            equivalent_K(alpha)


def test_sampler_labels():
    assert GibbsSpec().label == "gibbs"
    assert AdlerSpec(adler_alpha=-0.89).label == "adler-0.89"
    assert OrderedOverSpec(k=11).label == "over-cdf-k11"
    assert OrderedOverSpec(k=5, impl="direct").label == "over-direct-k5"
    assert OrderedUnderSpec(k=3).label == "under-k3"
    with pytest.raises(ValidationError):
        OrderedOverSpec(k=0)
