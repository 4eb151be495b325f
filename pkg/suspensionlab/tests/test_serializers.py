import numpy as np
from django.test import SimpleTestCase

from suspensionlab.serializers import finite_or_none, finite_tree


class FiniteOrNoneTest(SimpleTestCase):
    def test_non_finite_values_become_null(self):
        for value in (float('nan'), float('inf'), float('-inf'), np.float64('nan'), np.inf):
            self.assertIsNone(finite_or_none(value))

    def test_finite_values_pass_through(self):
        self.assertEqual(finite_or_none(np.float32(0.5)), 0.5)
        self.assertEqual(finite_or_none(3), 3.0)
        self.assertEqual(finite_or_none(-1e308), -1e308)
        self.assertIsNone(finite_or_none(None))

    def test_tree(self):
        tree = {'rows': (np.array([1.0, np.nan]), [np.int64(4), np.bool_(True)]), 1: 'x'}
        self.assertEqual(finite_tree(tree), {'rows': [[1.0, None], [4, True]], '1': 'x'})
