#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: test_verification.py
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
test_verification
----------------------------------
Tests for `verification` module.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import unittest

import numpy as np

from distributedexpertslib.distributedexpertslibexceptions import InvalidParameter
from distributedexpertslib.estimators import geo_second_moment, stream_key
from distributedexpertslib.verification import (Check,
                                                Suite,
                                                VerificationReport,
                                                chernoff_deviation,
                                                geometric_mean_moments,
                                                ks_distance,
                                                run_suite)

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".


class TestHelpers(unittest.TestCase):

    def test_chernoff_deviation(self):
        self.assertAlmostEqual(chernoff_deviation(300.0, 2 * np.exp(-1.0)), 0.1)
        with self.assertRaises(InvalidParameter):
            chernoff_deviation(0.0)
        with self.assertRaises(InvalidParameter):
            chernoff_deviation(10.0, 1.0)

    def test_second_moment_is_stable_across_seeds(self):
        for seed in range(5):
            for copies, p in ((3, 1.0), (2, 2.0), (1, 4.0)):
                _, square = geometric_mean_moments(copies, p, 200_000, stream_key(seed), 7)
                self.assertAlmostEqual(square / geo_second_moment(copies, p), 1.0, delta=0.01,
                                       msg=f'B={copies} p={p} seed={seed}')
        with self.assertRaises(InvalidParameter):
            geometric_mean_moments(1, 2.0, 10, stream_key(0))

    def test_ks_distance(self):
        self.assertAlmostEqual(ks_distance(np.array([0.25, 0.75]), lambda t: t), 0.25)
        self.assertAlmostEqual(ks_distance(np.array([0.5]), lambda t: t), 0.5)

    def test_report(self):
        report = VerificationReport(Suite.MIDDLE, 0, [Check('a', 1.0, '< 2', True), Check('b', 3.0, '< 2', False)])
        self.assertFalse(report.passed)
        self.assertEqual(list(report.to_frame().columns), ['check', 'statistic', 'bound', 'passed'])
        self.assertEqual(str(report.checks[1]), 'b: 3 vs < 2 -> FAIL')


class TestSuites(unittest.TestCase):
    """Every suite at its default sample size."""

    def assertSuitePasses(self, suite):  # pylint: disable=invalid-name
        report = run_suite(suite)
        self.assertTrue(report.checks)
        self.assertTrue(report.passed, msg='\n'.join(str(check) for check in report.checks))

    def test_constants(self):
        self.assertSuitePasses(Suite.CONSTANTS)

    def test_moments(self):
        self.assertSuitePasses(Suite.MOMENTS)

    def test_moments_for_other_seeds(self):
        for seed in range(1, 5):
            report = run_suite(Suite.MOMENTS, seed=seed, trials=1_000_000)
            self.assertTrue(report.passed, msg='\n'.join(str(check) for check in report.checks))

    def test_maxstability(self):
        self.assertSuitePasses('maxstability')

    def test_middle(self):
        self.assertSuitePasses(Suite.MIDDLE)

    def test_pipeline(self):
        self.assertSuitePasses(Suite.PIPELINE)

    def test_suites_replay(self):
        first = run_suite(Suite.MAXSTABILITY, seed=3, master_seed=1, trials=10_000)
        second = run_suite(Suite.MAXSTABILITY, seed=3, master_seed=1, trials=10_000)
        self.assertEqual(first.checks, second.checks)
