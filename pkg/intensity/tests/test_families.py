import math

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from intensity.exceptions import ProfileError
from intensity.families import EpsilonFamily, IntensityProfile, eval_intensity


class EvalIntensityTest(SimpleTestCase):
    def test_zero_family(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.zero())
        self.assertEqual(eval_intensity(profile, 5), 1.0)

    def test_power_family(self):
        profile = IntensityProfile(base=2.0)
        self.assertAlmostEqual(eval_intensity(profile, 4), 2 * math.exp(-0.5), places=15)
        self.assertEqual(eval_intensity(profile, 1), 2.0)
        self.assertEqual(eval_intensity(profile, -7), 2.0)

    def test_scale_multiplies(self):
        profile = IntensityProfile(base=1.0, scale=3.0)
        self.assertAlmostEqual(eval_intensity(profile, 9), 3 * math.exp(-1 / 3), places=14)

    def test_step_family(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, math.log(2)))
        self.assertEqual(eval_intensity(profile, 0), 1.0)
        self.assertAlmostEqual(eval_intensity(profile, 1), 2.0, places=14)

    def test_explicit_table_over_tail(self):
        family = EpsilonFamily.explicit({3: 0.25, -2: -0.5}, tail=EpsilonFamily.power(0.5))
        profile = IntensityProfile(base=1.0, epsilon=family)
        self.assertAlmostEqual(eval_intensity(profile, 3), math.exp(0.25), places=15)
        self.assertAlmostEqual(eval_intensity(profile, -2), math.exp(-0.5), places=15)
        self.assertAlmostEqual(eval_intensity(profile, 4), math.exp(-0.5), places=15)

    def test_invalid_profiles(self):
        with self.assertRaises(ProfileError):
            IntensityProfile(base=0.0)
        with self.assertRaises(ProfileError):
            IntensityProfile(base=1.0, scale=-1.0)
        with self.assertRaises(ProfileError):
            EpsilonFamily.power(0.0)
        with self.assertRaises(ProfileError):
            EpsilonFamily.explicit({}, tail=EpsilonFamily.explicit({}))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(-1000, 1000), st.floats(0.01, 100), st.sampled_from([0.3, 0.5, 1.0]))
    def test_scaling_is_multiplicative(self, n, t, gamma):
        profile = IntensityProfile(base=0.7, epsilon=EpsilonFamily.power(gamma))
        scaled = profile.rescaled(t)
        self.assertAlmostEqual(eval_intensity(scaled, n), t * eval_intensity(profile, n),
                               delta=1e-12 * t * eval_intensity(profile, n))

    def test_vector_matches_scalar(self):
        profile = IntensityProfile(base=1.3)
        values = profile.intensities(range(-3, 10))
        for n, value in zip(range(-3, 10), values):
            self.assertAlmostEqual(value, profile.intensity(n), delta=1e-15)


class SupportTest(SimpleTestCase):
    def test_zero_family_has_no_support(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.zero())
        self.assertIsNone(profile.rn_support(5))

    def test_step_support(self):
        profile = IntensityProfile(base=1.0, epsilon=EpsilonFamily.step(0.0, 1.0))
        self.assertEqual(profile.rn_support(7), (1, 7))

    def test_power_support_grows_with_shift(self):
        profile = IntensityProfile(base=1.0)
        lo, hi = profile.rn_support(10, tol=1e-2)
        lo2, hi2 = profile.rn_support(20, tol=1e-2)
        self.assertEqual(lo, 2)
        self.assertEqual(lo2, 2)
        self.assertGreater(hi2, hi)
        self.assertGreaterEqual(hi, 12)

    def test_explicit_zero_tail_support(self):
        family = EpsilonFamily.explicit({-4: 0.1, 6: 0.2}, tail=EpsilonFamily.zero())
        profile = IntensityProfile(base=1.0, epsilon=family)
        self.assertEqual(profile.rn_support(3), (-4, 9))
