import math

import numpy as np
from django.test import SimpleTestCase

from criteria.exceptions import NotApplicableError
from criteria.fits import (
    DEFAULT_N_GRID, HELLINGER_GROWTH, RN_SQUARE_INTEGRAL, fit_slope, least_squares,
)
from intensity.families import EpsilonFamily, IntensityProfile


class LeastSquaresTest(SimpleTestCase):
    def test_recovers_exact_model(self):
        ns = np.array([16, 32, 64, 128, 256, 512])
        values = 1.5 * np.log(ns) - 0.25 + 3.0 / np.sqrt(ns)
        fit = least_squares('synthetic', ns, values)
        self.assertAlmostEqual(fit.slope, 1.5, places=10)
        self.assertAlmostEqual(fit.intercept, -0.25, places=9)
        self.assertAlmostEqual(fit.correction, 3.0, places=8)
        self.assertLess(fit.residual, 1e-10)
        self.assertEqual(fit.n_range, (16, 512))

    def test_needs_four_points(self):
        with self.assertRaises(NotApplicableError):
            least_squares('synthetic', [16, 32, 64], [1.0, 2.0, 3.0])

    def test_scaled(self):
        fit = least_squares('synthetic', [16, 32, 64, 128, 256], [1.0, 1.7, 2.5, 3.1, 4.0]).scaled(2.0)
        self.assertAlmostEqual(fit.points[0][1], 2.0)
        self.assertGreater(fit.stderr, 0)


class SlopeFitTest(SimpleTestCase):
    def test_rn_square_integral_slope_is_six_a(self):
        for a in (0.1, 0.5, 1.0, 2.0):
            fit = fit_slope(RN_SQUARE_INTEGRAL, IntensityProfile(base=a))
            self.assertGreaterEqual(fit.slope / a, 5.7, msg=f'a={a}')
            self.assertLessEqual(fit.slope / a, 6.3, msg=f'a={a}')
            self.assertEqual(fit.n_range, (DEFAULT_N_GRID[0], DEFAULT_N_GRID[-1]))

    def test_hellinger_growth_slope_is_half_a(self):
        for a in (0.1, 0.5, 1.0, 2.0, 5.0):
            fit = fit_slope(HELLINGER_GROWTH, IntensityProfile(base=a))
            self.assertGreaterEqual(fit.slope / a, 0.475, msg=f'a={a}')
            self.assertLessEqual(fit.slope / a, 0.525, msg=f'a={a}')

    def test_scale_and_base_are_interchangeable(self):
        first = fit_slope(HELLINGER_GROWTH, IntensityProfile(base=2.0, scale=0.5))
        second = fit_slope(HELLINGER_GROWTH, IntensityProfile(base=1.0))
        self.assertTrue(math.isclose(first.slope, second.slope, rel_tol=1e-12))

    def test_zero_family(self):
        profile = IntensityProfile(base=3.0, epsilon=EpsilonFamily.zero())
        for kind in (RN_SQUARE_INTEGRAL, HELLINGER_GROWTH):
            fit = fit_slope(kind, profile)
            self.assertEqual(fit.slope, 0.0)
            self.assertEqual(fit.stderr, 0.0)

    def test_rn_fit_needs_chi_zero(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, 1.0))
        with self.assertRaises(NotApplicableError):
            fit_slope(RN_SQUARE_INTEGRAL, profile)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            fit_slope('mystery', IntensityProfile(base=1.0))
