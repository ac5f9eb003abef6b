import math

import numpy as np
import pytest
from scipy import integrate

from mixwit.bounds import (
    PurityPoint,
    entropy_bounds,
    kappa_of_purity,
    marginal_eigenvalue_density,
    max_entropy_vector,
    min_entropy_vector,
    nearly_mm_fraction,
    nearly_mm_fraction_ball,
    nearly_pure_fraction,
)
from mixwit.exceptions import DimensionMismatch, PurityOutOfRange
from mixwit.sampling import StreamKey, sample_simplex_uniform


class TestKappa:
    @pytest.mark.parametrize("p,k", [(1.0, 1), (1 / 3, 3), (0.3, 3), (1 / 7, 7), (0.49, 2)])
    def test_values(self, p, k):
        assert kappa_of_purity(p) == k

    def test_reciprocal_guard(self):
        for m in range(1, 200):
            assert kappa_of_purity(1 / m) == m

    def test_bracket(self):
        rng = np.random.default_rng(0)
        for p in rng.uniform(0.01, 1.0, 10_000):
            k = kappa_of_purity(p)
            assert 1 / k >= p >= 1 / (k + 1)

    def test_out_of_range(self):
        with pytest.raises(PurityOutOfRange):
            kappa_of_purity(0.0)
        with pytest.raises(PurityOutOfRange):
            PurityPoint(3, 0.2)


class TestVectors:
    def test_max_vector_example(self):
        p = max_entropy_vector(PurityPoint(3, 0.5))
        np.testing.assert_allclose(p, [1 / 6, 1 / 6, 2 / 3], atol=1e-14)
        assert entropy_bounds(PurityPoint(3, 0.5)).s_max == pytest.approx(1.2516, abs=1e-4)

    def test_min_vector_example(self):
        p = min_entropy_vector(PurityPoint(4, 0.4))
        p0 = (2 + math.sqrt(0.4)) / 6
        np.testing.assert_allclose(p, [p0, p0, 1 - 2 * p0, 0], atol=1e-14)
        assert np.sum(p**2) == pytest.approx(0.4, abs=1e-12)
        assert entropy_bounds(PurityPoint(4, 0.4)).s_min == pytest.approx(1.40, abs=0.02)

    def test_reciprocal_purity_plateau(self):
        np.testing.assert_allclose(min_entropy_vector(PurityPoint(5, 1 / 3)), [1 / 3] * 3 + [0, 0], atol=1e-7)

    @pytest.mark.parametrize("n", [2, 3, 9, 100])
    def test_endpoints(self, n):
        lo = entropy_bounds(PurityPoint(n, 1 / n))
        hi = entropy_bounds(PurityPoint(n, 1.0))
        assert lo.s_min == pytest.approx(math.log2(n), abs=1e-6)
        assert lo.s_max == pytest.approx(math.log2(n), abs=1e-6)
        assert hi.s_min == pytest.approx(0.0, abs=1e-12)
        assert hi.s_max == pytest.approx(0.0, abs=1e-6)

    @pytest.mark.parametrize("n", [3, 4, 9, 100])
    def test_purity_reproduced(self, n):
        for p in np.linspace(1 / n, 1, 37):
            b = entropy_bounds(PurityPoint(n, p))
            assert np.sum(b.p_max_vector**2) == pytest.approx(p, abs=1e-12)
            assert np.sum(b.p_min_vector**2) == pytest.approx(p, abs=1e-12)
            assert 0 <= b.s_min <= b.s_max + 1e-12
            assert b.s_max <= math.log2(n) + 1e-12
            # max-entropy root: p0 is the smaller value
            assert b.p_max_vector[0] <= b.p_max_vector[-1] + 1e-15

    def test_kappa_equivalence(self):
        rng = np.random.default_rng(1)
        for p in rng.uniform(1 / 50, 1.0, 10_000):
            p0 = min_entropy_vector(PurityPoint(50, p))[0]
            assert math.floor(1 / p0) == math.floor(1 / p)


class TestFractions:
    def test_nearly_pure(self):
        assert nearly_pure_fraction(2) == 1.0
        assert nearly_pure_fraction(3) == 0.75
        assert nearly_pure_fraction(10) == pytest.approx(10 / 512)

    def test_nearly_pure_monte_carlo_n10(self):
        n = 200_000
        hits = sum(sample_simplex_uniform(10, StreamKey(3, i)).max() >= 0.5 for i in range(n))
        target = nearly_pure_fraction(10)
        assert abs(hits / n - target) < 3 * math.sqrt(target * (1 - target) / n)

    def test_nearly_mm_formula_value(self):
        assert nearly_mm_fraction(3) == pytest.approx(
            (1 / math.sqrt(3)) * (math.pi / 6) ** 1.5 * 2 / (3 * math.sqrt(math.pi) / 4)
        )
        assert nearly_mm_fraction(3) == pytest.approx(0.3291, abs=5e-4)

    def test_nearly_mm_decreasing(self):
        vals = [nearly_mm_fraction(n) for n in range(3, 21)]
        assert np.all(np.diff(vals) < 0)
        ratio = [nearly_mm_fraction(n) / nearly_pure_fraction(n) for n in range(4, 21)]
        assert np.all(np.diff(ratio) < 0)

    def test_ball_fraction(self):
        assert nearly_mm_fraction_ball(3) == pytest.approx(math.pi / (3 * math.sqrt(3)))
        # the 1-ball at n=2 is the whole segment
        assert nearly_mm_fraction_ball(2) == pytest.approx(1.0)
        n = 100_000
        hits = sum(
            np.sum(sample_simplex_uniform(3, StreamKey(4, i)) ** 2) <= 0.5 for i in range(n)
        )
        target = nearly_mm_fraction_ball(3)
        assert abs(hits / n - target) < 3 * math.sqrt(target * (1 - target) / n)


class TestMarginalDensity:
    def test_values(self):
        assert marginal_eigenvalue_density([0.5, 0.5], 2) == 0.0
        assert marginal_eigenvalue_density([1.0, 0.0], 2) == pytest.approx(3.0)

    def test_normalised_d2(self):
        total, _ = integrate.quad(lambda x: marginal_eigenvalue_density([x, 1 - x], 2), 0, 1)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_normalised_d3(self):
        # the simplex coordinates (l1, l2), l3 = 1 - l1 - l2
        total, _ = integrate.dblquad(
            lambda y, x: marginal_eigenvalue_density([x, y, 1 - x - y], 3), 0, 1, 0, lambda x: 1 - x
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_symmetric_and_nonnegative(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            lam = rng.dirichlet(np.ones(4))
            v = marginal_eigenvalue_density(lam, 4)
            assert v >= 0
            assert marginal_eigenvalue_density(rng.permutation(lam), 4) == pytest.approx(v)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            marginal_eigenvalue_density([0.5, 0.5], 3)
