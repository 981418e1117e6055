#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: test_cli.py
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
test_cli
----------------------------------
Tests for `cli` module.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import pathlib
import tempfile
import unittest
from unittest import mock

from distributedexpertslib.cli import (EXIT_INVALID,
                                       EXIT_SUCCESS,
                                       EXIT_VERIFICATION_FAILED,
                                       execute,
                                       get_arguments,
                                       main)
from distributedexpertslib.verification import Check, Suite, VerificationReport

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".

CONFIG = """n = 4
s = 2
T = 30
variants = baseline, simple
seeds = 0, 1
"""


class TestArguments(unittest.TestCase):

    def test_verify(self):
        args = get_arguments(['verify', 'middle', '--trials', '100', '--seed', '5'])
        self.assertEqual((args.command, args.suite, args.trials, args.seed), ('verify', 'middle', 100, 5))
        self.assertEqual(args.log_level, 'info')

    def test_run(self):
        args = get_arguments(['run', '--config', 'x.cfg', '--out', 'results', '--jobs', '2'])
        self.assertEqual((args.command, args.config, args.out, args.jobs), ('run', 'x.cfg', 'results', 2))
        self.assertIsNone(args.seed)

    def test_unknown_suite(self):
        with self.assertRaises(SystemExit):
            get_arguments(['verify', 'everything'])


@mock.patch('distributedexpertslib.cli.setup_logging')
class TestExecute(unittest.TestCase):

    def setUp(self):
        """
        Test set up

        This is where you can setup things that you use throughout the tests. This method is called before every test.
        """
        self._directory = tempfile.TemporaryDirectory()
        self.root = pathlib.Path(self._directory.name)
        self.config = self.root / 'experiment.cfg'
        self.config.write_text(CONFIG)

    def tearDown(self):
        """
        Test tear down

        This is where you should tear down what you've setup in setUp before. This method is called after every test.
        """
        self._directory.cleanup()

    def test_run(self, _):
        output = self.root / 'out'
        self.assertEqual(execute(['run', '--config', str(self.config), '--out', str(output), '--seed', '9']),
                         EXIT_SUCCESS)
        self.assertEqual(len(list(output.glob('report_*.csv'))), 4)
        self.assertTrue((output / 'summary.csv').read_text().startswith('# master_seed=9 '))

    def test_sweep(self, _):
        output = self.root / 'sweep'
        self.assertEqual(execute(['sweep-figures', '--config', str(self.config), '--out', str(output)]), EXIT_SUCCESS)
        self.assertTrue((output / 'reward_vs_p.csv').exists())

    def test_invalid_configuration(self, _):
        self.config.write_text('n = 1\nvariants = magic\n')
        with self.assertLogs('distributedexpertslib.cli', level='ERROR') as logs:
            self.assertEqual(execute(['run', '--config', str(self.config)]), EXIT_INVALID)
        self.assertGreaterEqual(len(logs.output), 2)

    def test_missing_configuration(self, _):
        self.assertEqual(execute(['run', '--config', str(self.root / 'missing.cfg')]), EXIT_INVALID)

    def test_verification_verdicts(self, _):
        passing = VerificationReport(Suite.MIDDLE, 0, [Check('ok', 1.0, '< 2', True)])
        failing = VerificationReport(Suite.MIDDLE, 0, [Check('ok', 1.0, '< 2', True), Check('bad', 3.0, '< 2', False)])
        with mock.patch('distributedexpertslib.cli.cmd_verify', return_value=passing) as verify:
            self.assertEqual(execute(['verify', 'middle', '--seed', '4', '--trials', '10']), EXIT_SUCCESS)
            verify.assert_called_once_with('middle', master_seed=4, trials=10)
        with mock.patch('distributedexpertslib.cli.cmd_verify', return_value=failing):
            self.assertEqual(execute(['verify', 'middle']), EXIT_VERIFICATION_FAILED)

    def test_verify_reads_the_master_seed_of_a_configuration(self, _):
        self.config.write_text(CONFIG + 'master_seed = 12\n')
        passing = VerificationReport(Suite.CONSTANTS, 0, [Check('ok', 1.0, '< 2', True)])
        with mock.patch('distributedexpertslib.cli.cmd_verify', return_value=passing) as verify:
            self.assertEqual(execute(['verify', 'constants', '--config', str(self.config)]), EXIT_SUCCESS)
            verify.assert_called_once_with('constants', master_seed=12, trials=None)

    def test_small_verification_runs(self, _):
        self.assertEqual(execute(['verify', 'maxstability', '--trials', '200000']), EXIT_SUCCESS)

    def test_main_exits_with_the_status(self, _):
        with mock.patch('distributedexpertslib.cli.execute', return_value=EXIT_INVALID):
            with self.assertRaises(SystemExit) as context:
                main()
        self.assertEqual(context.exception.code, EXIT_INVALID)
