#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: test_estimators.py
#
# Copyright 2026 Costas Tyfoxylos
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
#  of this software and associated documentation files (the "Software"), to
#  deal in the Software without restriction, including without limitation the
#  rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
#  sell copies of the Software, and to permit persons to whom the Software is
#  furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
#  all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
#  AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
#  LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
#  FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
#  DEALINGS IN THE SOFTWARE.
#

"""
test_estimators
----------------------------------
Tests for `estimators` module.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import math
import unittest

import numpy as np
from scipy.special import gamma

from distributedexpertslib.distributedexpertslibexceptions import EstimatorDomainError
from distributedexpertslib.estimators import (EstimatorParams,
                                              ExpSample,
                                              RandomStream,
                                              StreamRole,
                                              default_copies,
                                              expected_report_count,
                                              geo_constant,
                                              geo_second_moment,
                                              geometric_mean,
                                              max_stable_cdf,
                                              middle_probability,
                                              sample_exponential,
                                              scaled_loss,
                                              stream_key,
                                              threshold_miss_probability)

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".


class FixedStream:
    """Replays a fixed sequence of uniforms."""

    def __init__(self, *values):
        self.values = list(values)

    def uniforms(self, size=None):  # pylint: disable=unused-argument
        return self.values.pop(0)


class TestExponentials(unittest.TestCase):

    def setUp(self):
        """
        Test set up

        This is where you can setup things that you use throughout the tests. This method is called before every test.
        """
        self.key = stream_key(7, 11)

    def test_inverse_cdf_identity(self):
        self.assertAlmostEqual(sample_exponential(FixedStream(math.exp(-1))), 1.0, places=12)

    def test_boundary_uniforms_are_resampled(self):
        self.assertAlmostEqual(sample_exponential(FixedStream(0.0, 1.0, 0.5)), math.log(2), places=12)

    def test_sample_from_random_stream_is_positive(self):
        stream = RandomStream(self.key, StreamRole.MONTE_CARLO)
        self.assertTrue(all(sample_exponential(stream) > 0 for _ in range(1000)))
        self.assertGreater(ExpSample.draw(stream).value, 0)

    def test_exp_sample_rejects_non_positive_values(self):
        with self.assertRaises(EstimatorDomainError):
            ExpSample(0.0)

    def test_empirical_mean_and_cdf(self):
        draws = RandomStream(self.key, StreamRole.MONTE_CARLO).exponentials(1_000_000)
        self.assertAlmostEqual(draws.mean(), 1.0, delta=0.01)
        self.assertAlmostEqual(np.mean(draws <= 1.0), 1 - math.exp(-1), delta=0.005)

    def test_streams_replay_bit_for_bit(self):
        first = RandomStream(self.key, StreamRole.SERVER, time=3, index=2).uniforms((4, 3))
        second = RandomStream(self.key, StreamRole.SERVER, time=3, index=2).uniforms((4, 3))
        np.testing.assert_array_equal(first, second)

    def test_distinct_counters_give_distinct_draws(self):
        base = RandomStream(self.key, StreamRole.SERVER, time=3, index=2).uniforms(8)
        for other in (RandomStream(self.key, StreamRole.PUBLIC, time=3, index=2),
                      RandomStream(self.key, StreamRole.SERVER, time=4, index=2),
                      RandomStream(self.key, StreamRole.SERVER, time=3, index=1),
                      RandomStream(stream_key(8, 11), StreamRole.SERVER, time=3, index=2)):
            self.assertFalse(np.array_equal(base, other.uniforms(8)))


class TestScaling(unittest.TestCase):

    def test_scaled_loss_examples(self):
        self.assertEqual(scaled_loss(0.0, 5.0, 2, 1.0), 0.0)
        self.assertAlmostEqual(scaled_loss(1.0, 1.0, 2, 1.0), 1.0)
        self.assertAlmostEqual(scaled_loss(3.0, 8.0, 3, 1.0), 1.5)

    def test_scaled_loss_broadcasts(self):
        values = scaled_loss(np.array([[1.0], [2.0]]), np.array([[1.0, 16.0], [1.0, 16.0]]), 4, 2.0)
        np.testing.assert_allclose(values, [[0.5, 0.25], [1.0, 0.5]])

    def test_scaled_loss_rejects_non_positive_exponentials(self):
        with self.assertRaises(EstimatorDomainError):
            scaled_loss(1.0, 0.0, 2, 1.0)
        with self.assertRaises(EstimatorDomainError):
            scaled_loss(np.ones(3), np.array([1.0, -1.0, 2.0]), 2, 1.0)

    def test_geometric_mean_examples(self):
        self.assertAlmostEqual(geometric_mean([4, 9]), 6.0)
        self.assertAlmostEqual(geometric_mean([2.5, 2.5, 2.5]), 2.5)
        self.assertAlmostEqual(geometric_mean([1, 8, 27]), 6.0)

    def test_geometric_mean_of_huge_values_does_not_overflow(self):
        self.assertAlmostEqual(geometric_mean([1e300, 1e300, 1e300]) / 1e300, 1.0)

    def test_geometric_mean_with_a_zero_is_no_estimate(self):
        self.assertTrue(math.isnan(geometric_mean([4.0, 0.0])))
        values = geometric_mean(np.array([[4.0, 9.0], [0.0, 1.0]]))
        self.assertAlmostEqual(values[0], 6.0)
        self.assertTrue(math.isnan(values[1]))


class TestConstants(unittest.TestCase):

    def test_geo_constant_matches_gamma(self):
        self.assertAlmostEqual(geo_constant(3, 1), gamma(2 / 3) ** 3, places=10)
        self.assertAlmostEqual(geo_constant(3, 1), 2.4833, places=3)
        self.assertAlmostEqual(geo_constant(2, 2), gamma(3 / 4) ** 2, places=10)
        self.assertAlmostEqual(geo_constant(2, 2), 1.5018, places=3)

    def test_geo_constant_is_bounded(self):
        for p in (1, 1.2, 1.5, 2, 2.5, 3, 4, 7.5, 10):
            copies = default_copies(p)
            self.assertTrue(0 < geo_constant(copies, p) <= 2 ** copies)

    def test_geo_constant_domain(self):
        with self.assertRaises(EstimatorDomainError):
            geo_constant(1, 1)

    def test_geo_second_moment_examples(self):
        self.assertAlmostEqual(geo_second_moment(3, 1), gamma(1 / 3) ** 3, places=8)
        self.assertLessEqual(geo_second_moment(3, 1), 27)
        self.assertAlmostEqual(geo_second_moment(4, 1), math.pi ** 2, places=10)
        self.assertAlmostEqual(geo_second_moment(2, 2), math.pi, places=10)

    def test_geo_second_moment_domain(self):
        with self.assertRaises(EstimatorDomainError):
            geo_second_moment(1, 2)

    def test_default_copies(self):
        self.assertEqual([default_copies(p) for p in (1, 1.5, 2, 3, 4, 0.3)], [3, 2, 2, 1, 1, 10])

    def test_estimator_params(self):
        for p in (1, 1.5, 2, 3, 4, 8):
            params = EstimatorParams.from_p(p)
            self.assertEqual(params.copies, math.ceil(3 / p))
            self.assertGreaterEqual(params.copies * params.p, 3)
            self.assertTrue(0 < params.constant <= 2 ** params.copies)
            self.assertTrue(0 < params.second_moment <= params.proven_second_moment)
            self.assertGreaterEqual(params.normalized_second_moment, 1)
            self.assertLessEqual(params.normalized_second_moment, params.proven_normalized_second_moment)

    def test_estimator_params_reject_small_exponents(self):
        for p in (0.5, float('inf'), float('nan')):
            with self.assertRaises(EstimatorDomainError):
                EstimatorParams.from_p(p)


class TestClosedForms(unittest.TestCase):

    def test_max_stable_cdf(self):
        self.assertAlmostEqual(max_stable_cdf(5.0, [3.0, 4.0], 2), math.exp(-1.0))
        np.testing.assert_allclose(max_stable_cdf(np.array([1.0, 10.0]), [3.0, 4.0], 2),
                                   np.exp(-25 / np.array([1.0, 100.0])))

    def test_middle_probability_lies_between_its_bounds(self):
        for x in (4, 8, 16):
            self.assertTrue(1 / (4 * x) <= middle_probability(x) <= 1 / (2 * x))
        self.assertAlmostEqual(middle_probability(4), math.exp(-1 / 8) - math.exp(-1 / 4))

    def test_threshold_oracles(self):
        self.assertAlmostEqual(threshold_miss_probability(2.0, 1.0, 2, 2.0), math.exp(-1.0))
        self.assertAlmostEqual(expected_report_count([2.0, 0.0], 1.0, 2, 2.0), 1 - math.exp(-1.0))
        self.assertAlmostEqual(expected_report_count([1e6, 1e6, 1e6], 1.0, 2, 1.0), 3.0)
