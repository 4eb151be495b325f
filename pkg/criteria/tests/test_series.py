import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from criteria.exceptions import NotApplicableError
from criteria.series import (
    hellinger_growth, inner_product_decay, limit_set_decay, nonsingularity_deficit, rn_square_integral,
)
from dist.laws import hellinger_sq_poisson
from intensity.families import EpsilonFamily, IntensityProfile

ZERO = IntensityProfile(base=1.0, epsilon=EpsilonFamily.zero())
STEP = IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, math.log(2)))
WIDE = 10 ** 7
CHUNK = 10 ** 6


def power_eps(ks):
    return np.where(ks > 1, -np.maximum(ks, 2).astype(float) ** -0.5, 0.0)


def brute_rn(a, n):
    """Direct sum of a (e^(3 eps_k - 2 eps_{k-n}) - e^(eps_k)) for k <= WIDE, plus the telescoped edge."""
    partials = []
    for lo in range(2, WIDE + 1, CHUNK):
        ks = np.arange(lo, min(lo + CHUNK, WIDE + 1))
        u, v = power_eps(ks), power_eps(ks - n)
        partials.append(float(np.sum(np.exp(3 * u - 2 * v) - np.exp(u))))
    # sum_{k <= K} (a_k - a_{k-n}) telescopes to the last n terms
    edge = math.fsum(np.expm1(power_eps(np.arange(WIDE - n + 1, WIDE + 1))))
    return a * (math.fsum(partials) - 2 * edge)


def brute_hellinger(a, n):
    partials = []
    for lo in range(2 - n, WIDE + 1, CHUNK):
        ks = np.arange(lo, min(lo + CHUNK, WIDE + 1))
        root = np.sqrt(a * np.exp(power_eps(ks)))
        shifted = np.sqrt(a * np.exp(power_eps(ks + n)))
        partials.append(float(np.sum((shifted - root) ** 2)))
    return math.fsum(partials)


class NonsingularityDeficitTest(SimpleTestCase):
    def test_zero_family(self):
        for N in (1, 10, 1000):
            self.assertEqual(nonsingularity_deficit(ZERO, N), 0.0)

    def test_nondecreasing_and_bounded(self):
        profile = IntensityProfile(base=1.0)
        values = [nonsingularity_deficit(profile, N) for N in (1, 10, 100, 1000, 10000, 100000)]
        self.assertEqual(values, sorted(values))
        self.assertLess(values[-1] - values[-2], 1e-4)

    def test_definitional_oracle(self):
        profile = IntensityProfile(base=0.7)
        N = 200
        expected = math.fsum(
            2 * hellinger_sq_poisson(profile.intensity(n), profile.intensity(n + 1)) for n in range(-N, N + 1)
        )
        self.assertAlmostEqual(nonsingularity_deficit(profile, N), expected, delta=1e-12)

    def test_bad_N(self):
        with self.assertRaises(NotApplicableError):
            nonsingularity_deficit(ZERO, 0)


class RnSquareIntegralTest(SimpleTestCase):
    def test_zero_family(self):
        for n in (1, 5, 100):
            self.assertEqual(rn_square_integral(ZERO, n), 0.0)

    def test_brute_force_window(self):
        profile = IntensityProfile(base=0.1)
        self.assertAlmostEqual(rn_square_integral(profile, 10), brute_rn(0.1, 10), delta=1e-8)

    def test_nonnegative_and_nondecreasing(self):
        profile = IntensityProfile(base=0.5)
        values = [rn_square_integral(profile, n) for n in (1, 2, 4, 16, 64, 256, 1024)]
        self.assertTrue(all(value >= 0 for value in values))
        self.assertEqual(values, sorted(values))

    def test_finite_table(self):
        profile = IntensityProfile(base=2.0, epsilon=EpsilonFamily.explicit({0: 0.3, 1: -0.2}, EpsilonFamily.zero()))
        a = {k: profile.intensity(k) for k in range(-5, 10)}
        n = 3
        expected = math.fsum(a[k] ** 3 / a[k - n] ** 2 - a[k] for k in range(-2, 10))
        self.assertAlmostEqual(rn_square_integral(profile, n), expected, delta=1e-13)

    def test_refuses_nonzero_chi(self):
        with self.assertRaises(NotApplicableError):
            rn_square_integral(STEP, 3)

    def test_refuses_bad_shift(self):
        with self.assertRaises(NotApplicableError):
            rn_square_integral(ZERO, 0)


class HellingerGrowthTest(SimpleTestCase):
    def test_zero_family(self):
        self.assertEqual(hellinger_growth(ZERO, 7), 0.0)

    def test_brute_force_window(self):
        profile = IntensityProfile(base=1.0)
        self.assertAlmostEqual(hellinger_growth(profile, 10), brute_hellinger(1.0, 10), delta=1e-8)

    def test_step_grows_linearly(self):
        gap = (math.sqrt(2) - 1) ** 2
        for n in (1, 7, 50):
            self.assertAlmostEqual(hellinger_growth(STEP, n), n * gap, delta=1e-12)

    def test_nondecreasing(self):
        profile = IntensityProfile(base=1.0)
        values = [hellinger_growth(profile, n) for n in (1, 2, 4, 16, 64, 256, 1024)]
        self.assertEqual(values, sorted(values))

    def test_power_tail_by_quadrature(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.power(0.4))
        self.assertGreater(hellinger_growth(profile, 8), hellinger_growth(profile, 4))

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.05, 20), st.integers(1, 200))
    def test_linear_in_amplitude(self, t, n):
        profile = IntensityProfile(base=1.0)
        scaled = profile.rescaled(t)
        self.assertAlmostEqual(hellinger_growth(scaled, n), t * hellinger_growth(profile, n), delta=1e-8 * max(t, 1))


class InnerProductDecayTest(SimpleTestCase):
    def test_matches_hellinger_growth(self):
        profile = IntensityProfile(base=2.0)
        self.assertAlmostEqual(inner_product_decay(profile, 12), math.exp(-0.5 * hellinger_growth(profile, 12)))

    def test_zero_family_is_one(self):
        self.assertEqual(inner_product_decay(ZERO, 40), 1.0)


class LimitSetDecayTest(SimpleTestCase):
    def test_exponential_bound_on_step(self):
        delta_sq = hellinger_sq_poisson(1.0, 2.0)
        for n in (30, 60, 120):
            decay = limit_set_decay(STEP, n)
            self.assertAlmostEqual(decay.delta ** 2, delta_sq, delta=1e-15)
            self.assertLessEqual(decay.inner_product, decay.bound)
            self.assertLessEqual(decay.middle_product, (1 - delta_sq) ** decay.middle_factors * (1 + 1e-12))
            self.assertEqual(decay.middle_factors, sum(1 for k in range(n) if n < 3 * k < 2 * n))

    def test_requires_disjoint_sets(self):
        with self.assertRaises(NotApplicableError):
            limit_set_decay(IntensityProfile(base=1.0), 30)
