import numpy as np
from django.test import SimpleTestCase

from simulate.rng import RNGSpec, as_generator, split_samples
from suspensionlab.exceptions import ConfigError


class RNGSpecTest(SimpleTestCase):
    def test_same_spec_same_draws(self):
        first = RNGSpec(2024, 3).generator().poisson(2.5, size=1000)
        second = RNGSpec(2024, 3).generator().poisson(2.5, size=1000)
        np.testing.assert_array_equal(first, second)

    def test_streams_differ(self):
        first, second = (spec.generator().random(8) for spec in RNGSpec(7).streams(2))
        self.assertFalse(np.array_equal(first, second))

    def test_streams_are_consecutive(self):
        self.assertEqual(RNGSpec(1, 2).streams(3), [RNGSpec(1, 2), RNGSpec(1, 3), RNGSpec(1, 4)])

    def test_domain(self):
        with self.assertRaises(ConfigError):
            RNGSpec(-1)
        with self.assertRaises(ConfigError):
            RNGSpec(2 ** 64)
        with self.assertRaises(ConfigError):
            RNGSpec(0, -1)

    def test_as_generator(self):
        generator = np.random.default_rng(0)
        self.assertIs(as_generator(generator), generator)
        with self.assertRaises(TypeError):
            as_generator(42)


class SplitSamplesTest(SimpleTestCase):
    def test_even_and_uneven(self):
        self.assertEqual(split_samples(12, 4), [3, 3, 3, 3])
        self.assertEqual(split_samples(10, 4), [3, 3, 2, 2])

    def test_more_workers_than_samples(self):
        self.assertEqual(split_samples(2, 8), [1, 1])

    def test_rejects_empty(self):
        with self.assertRaises(ConfigError):
            split_samples(0, 4)
