import math

from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError

from criteria.continuous import DensityProfile, continuous_base_bound, continuous_hellinger_growth
from criteria.exceptions import NotApplicableError
from criteria.serializers import DensityProfileSerializer, densities_from_document
from intensity.conditions import UNDETERMINED, YES

CELLS = 8


def flat(value):
    return [value] * CELLS


def interpolating(steps=20):
    """Densities rising from 1 to 2 over `steps` cells, uneven across the partition."""
    window = []
    for k in range(steps):
        level = 1 + (k + 1) / (steps + 1)
        window.append([level * (0.5 + i / CELLS) / (0.5 + (CELLS - 1) / (2 * CELLS)) for i in range(CELLS)])
    return DensityProfile.from_rows(flat(1.0), flat(2.0), window)


class ContinuousBaseBoundTest(SimpleTestCase):
    def test_equal_tails(self):
        bound = continuous_base_bound(DensityProfile.from_rows(flat(1.0), flat(1.0)), 100)
        self.assertEqual(bound.chi, 0.0)
        self.assertEqual(bound.dissipative, UNDETERMINED)
        self.assertAlmostEqual(bound.series_partial, 100.0)

    def test_step_tails(self):
        bound = continuous_base_bound(DensityProfile.from_rows(flat(1.0), flat(2.0)), 5000)
        self.assertEqual(bound.chi, 1.0)
        self.assertEqual(bound.D, 2.0)
        self.assertEqual(bound.dissipative, YES)
        ratio = math.exp(-1 / (216 * 4))
        self.assertLessEqual(bound.series_partial, ratio / (1 - ratio))

    def test_interpolating_window_keeps_the_verdict(self):
        profile = interpolating()
        bound = continuous_base_bound(profile, 100)
        step = continuous_base_bound(DensityProfile.from_rows(flat(1.0), flat(2.0)), 100)
        self.assertAlmostEqual(bound.chi, step.chi, delta=1e-12)
        self.assertEqual(bound.dissipative, step.dissipative)

    def test_domain(self):
        with self.assertRaises(NotApplicableError):
            DensityProfile.from_rows(flat(1.0), [1.0, 0.0] + flat(1.0)[2:])
        with self.assertRaises(NotApplicableError):
            DensityProfile.from_rows(flat(1.0), flat(1.0)[:3])
        with self.assertRaises(NotApplicableError):
            continuous_base_bound(DensityProfile.from_rows(flat(1.0), flat(1.0)), 0)


class ContinuousHellingerGrowthTest(SimpleTestCase):
    def test_step_tails(self):
        growth = continuous_hellinger_growth(DensityProfile.from_rows(flat(1.0), flat(2.0)), 12)
        self.assertAlmostEqual(growth.growth, 12 * (math.sqrt(2) - 1) ** 2, delta=1e-12)

    def test_lower_bound_past_the_window(self):
        profile = interpolating()
        for n in (60, 120, 500):
            growth = continuous_hellinger_growth(profile, n)
            self.assertGreaterEqual(growth.growth, growth.lower_bound)

    def test_equal_tails_without_window(self):
        growth = continuous_hellinger_growth(DensityProfile.from_rows(flat(3.0), flat(3.0)), 5)
        self.assertEqual(growth.growth, 0.0)
        self.assertEqual(growth.lower_bound, 0.0)


class DensityProfileSerializerTest(SimpleTestCase):
    def test_document(self):
        profile = densities_from_document({'left': [1, 1], 'right': [2, 2], 'window': [[1.5, 1.5]], 'offset': 3})
        self.assertEqual(profile.window, ((1.5, 1.5),))
        self.assertEqual(profile.end, 4)
        self.assertEqual(DensityProfileSerializer(profile).data['offset'], 3)

    def test_rejects_nonpositive(self):
        with self.assertRaises(ValidationError):
            densities_from_document({'left': [1, -1], 'right': [2, 2]})

    def test_rejects_unknown_keys(self):
        serializer = DensityProfileSerializer(data={'left': [1], 'right': [2], 'widow': []})
        self.assertFalse(serializer.is_valid())
