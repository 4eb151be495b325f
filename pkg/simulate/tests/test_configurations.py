import math

import numpy as np
from django.test import SimpleTestCase
from scipy import stats

from dist.special import poisson_log_pmf
from intensity.families import EpsilonFamily, IntensityProfile
from simulate.configurations import (
    ConfigurationWindow, log_rn_derivative, log_rn_series, sample_configuration, window_for,
)
from simulate.exceptions import ExperimentRefused, WindowCoverageError
from simulate.rng import RNGSpec

ZERO = IntensityProfile(base=1.0, epsilon=EpsilonFamily.zero())
EXAMPLE = IntensityProfile(base=1.0)


class ConfigurationWindowTest(SimpleTestCase):
    def test_shift(self):
        omega = ConfigurationWindow(5, [1, 0, 2])
        shifted = omega.shift(3)
        self.assertEqual(shifted.offset, 2)
        np.testing.assert_array_equal(shifted.counts, omega.counts)
        self.assertEqual(shifted.shift(-3), omega)

    def test_covers(self):
        omega = ConfigurationWindow(-2, [0] * 10)
        self.assertTrue(omega.covers(-2, 7))
        self.assertFalse(omega.covers(-3, 5))
        self.assertFalse(omega.covers(0, 8))

    def test_rejects_negative_counts(self):
        with self.assertRaises(ValueError):
            ConfigurationWindow(0, [1, -1])


class SampleConfigurationTest(SimpleTestCase):
    def test_counts_are_nonnegative_integers(self):
        omega = sample_configuration(EXAMPLE, (-10, 40), RNGSpec(1))
        self.assertEqual(len(omega), 50)
        self.assertTrue(np.issubdtype(omega.counts.dtype, np.integer))
        self.assertGreaterEqual(omega.counts.min(), 0)

    def test_poisson_mean(self):
        omega = sample_configuration(ZERO, (0, 100000), RNGSpec(11))
        self.assertAlmostEqual(omega.counts.mean(), 1.0, delta=0.02)

    def test_goodness_of_fit(self):
        counts = sample_configuration(ZERO, (0, 20000), RNGSpec(5)).counts
        observed = np.bincount(np.minimum(counts, 5), minlength=6)
        expected = stats.poisson.pmf(np.arange(5), 1.0)
        expected = np.append(expected, 1 - expected.sum()) * len(counts)
        self.assertGreater(stats.chisquare(observed, expected).pvalue, 1e-3)

    def test_equidispersion_per_site(self):
        generator = RNGSpec(3).generator()
        draws = np.array([sample_configuration(EXAMPLE, (1, 9), generator).counts for _ in range(4000)])
        for column, k in enumerate(range(1, 9)):
            rate = EXAMPLE.intensity(k)
            band = 3 * math.sqrt((rate + 2 * rate ** 2) / len(draws))
            self.assertAlmostEqual(draws[:, column].var(ddof=1), rate, delta=band)

    def test_empty_window(self):
        with self.assertRaises(ExperimentRefused):
            sample_configuration(EXAMPLE, (3, 3), RNGSpec(0))


class LogRnDerivativeTest(SimpleTestCase):
    def test_zero_family(self):
        omega = sample_configuration(ZERO, (-5, 50), RNGSpec(0))
        for n in (0, 1, 7):
            self.assertEqual(log_rn_derivative(ZERO, omega, n), 0.0)

    def test_identity_shift(self):
        omega = sample_configuration(EXAMPLE, (0, 10), RNGSpec(0))
        self.assertEqual(log_rn_derivative(EXAMPLE, omega, 0), 0.0)

    def test_pmf_ratio_oracle(self):
        n = 3
        lo, hi = window_for(EXAMPLE, n)
        omega = ConfigurationWindow(lo, [k % 3 for k in range(lo, hi)])
        expected = math.fsum(
            poisson_log_pmf(EXAMPLE.intensity(k - n), int(count)) - poisson_log_pmf(EXAMPLE.intensity(k), int(count))
            for k, count in zip(omega.indices(), omega.counts)
        )
        self.assertAlmostEqual(log_rn_derivative(EXAMPLE, omega, n), expected, delta=1e-10)

    def test_step_support_is_exact(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, 0.5))
        omega = ConfigurationWindow(1, [2, 0, 1, 4])
        expected = math.fsum(
            poisson_log_pmf(profile.intensity(k - 4), int(count)) - poisson_log_pmf(profile.intensity(k), int(count))
            for k, count in zip(omega.indices(), omega.counts)
        )
        self.assertAlmostEqual(log_rn_derivative(profile, omega, 4), expected, delta=1e-12)

    def test_window_too_small(self):
        omega = ConfigurationWindow(2, [1] * 20)
        with self.assertRaises(WindowCoverageError):
            log_rn_derivative(EXAMPLE, omega, 5)
        with self.assertRaises(WindowCoverageError):
            log_rn_derivative(IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, 0.5)), omega.shift(-5), 3)

    def test_cocycle_identity(self):
        lo, hi = window_for(EXAMPLE, 20)
        generator = RNGSpec(99).generator()
        for _ in range(1000):
            omega = sample_configuration(EXAMPLE, (lo, hi), generator)
            n, m = (int(v) for v in generator.integers(1, 11, size=2))
            combined = log_rn_derivative(EXAMPLE, omega, n + m)
            split = log_rn_derivative(EXAMPLE, omega, n) + log_rn_derivative(EXAMPLE, omega.shift(n), m)
            self.assertAlmostEqual(combined, split, delta=1e-9)


class LogRnSeriesTest(SimpleTestCase):
    def test_matches_pointwise(self):
        N = 40
        omega = sample_configuration(EXAMPLE, window_for(EXAMPLE, N), RNGSpec(8))
        series = log_rn_series(EXAMPLE, omega, N)
        self.assertEqual(series.shape, (N,))
        for n in (1, 2, 17, N):
            self.assertAlmostEqual(series[n - 1], log_rn_derivative(EXAMPLE, omega, n), delta=1e-9)

    def test_zero_family(self):
        omega = ConfigurationWindow(0, [1, 2, 3])
        np.testing.assert_array_equal(log_rn_series(ZERO, omega, 5), np.zeros(5))
