#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: test_configuration.py
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
test_configuration
----------------------------------
Tests for `configuration` module.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import pathlib
import tempfile
import unittest

from distributedexpertslib.configuration import ExperimentConfig, load_config, parse_config
from distributedexpertslib.distributedexpertslibexceptions import ConfigurationError
from distributedexpertslib.losses import Regime, RegimeKind, export_trace, gen_range_instance

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".

SAMPLE = """# a tradeoff sweep
instance = range
n = 8
T = 400
variants = simple, tradeoff
p_values = 1.5, 2
R_values = 0.1, 0.2
seeds = 0, 1, 2
keep_transcripts = yes
"""


class TestParsing(unittest.TestCase):

    def test_defaults_are_valid(self):
        config = ExperimentConfig()
        self.assertEqual(config.validate(), [])
        self.assertEqual(config.regime, Regime.range(1.0, 5.0))

    def test_parse(self):
        config = parse_config(SAMPLE)
        self.assertEqual(config.n, 8)
        self.assertEqual(config.s, 4)
        self.assertEqual(config.variants, ('SIMPLE', 'TRADEOFF'))
        self.assertEqual(config.p_values, (1.5, 2.0))
        self.assertEqual(config.seeds, (0, 1, 2))
        self.assertTrue(config.keep_transcripts)

    def test_serialized_text_parses_back(self):
        config = parse_config(SAMPLE)
        self.assertEqual(parse_config(config.serialize()), config)
        self.assertEqual(parse_config(ExperimentConfig().serialize()), ExperimentConfig())

    def test_hash_follows_the_content(self):
        config = parse_config(SAMPLE)
        self.assertEqual(config.config_hash, parse_config(SAMPLE + '\n# trailing comment\n').config_hash)
        self.assertNotEqual(config.config_hash, config.with_overrides(master_seed=7).config_hash)
        self.assertEqual(config.provenance, f'master_seed=0 config_hash={config.config_hash}')

    def test_hash_ignores_execution_settings(self):
        config = parse_config(SAMPLE)
        moved = config.with_overrides(output_dir='elsewhere', jobs=4)
        self.assertEqual(config.config_hash, moved.config_hash)
        self.assertEqual(config.provenance, moved.provenance)
        self.assertIn('jobs = 4', moved.serialize())
        self.assertNotEqual(config.config_hash, config.with_overrides(value_bits=16).config_hash)

    def test_every_syntax_problem_is_reported(self):
        text = 'n = four\nsize = 3\nT 10\nn = 5\n'
        with self.assertRaises(ConfigurationError) as context:
            parse_config(text, 'broken.cfg')
        problems = context.exception.problems
        self.assertEqual(len(problems), 3)
        self.assertTrue(problems[0].startswith('broken.cfg:1:'))
        self.assertIn('unknown key "size"', problems[1])
        self.assertIn('broken.cfg:3:', problems[2])

    def test_every_semantic_problem_is_reported(self):
        text = 'variants = tradeoff, full, magic\np_values = 0.5\njobs = 0\n'
        with self.assertRaises(ConfigurationError) as context:
            parse_config(text)
        problems = ' | '.join(context.exception.problems)
        for fragment in ('unknown variant "MAGIC"', 'R_values must not be empty', 'FULL needs losses bounded by 1',
                         'p must be finite and at least 1', 'jobs must be at least 1'):
            self.assertIn(fragment, problems)

    def test_parameters_are_checked_without_targets(self):
        text = 'variants = tradeoff\np_values = 0.5\nthreshold_consts = -1\nvalue_bits = 1\n'
        with self.assertRaises(ConfigurationError) as context:
            parse_config(text)
        problems = ' | '.join(context.exception.problems)
        for fragment in ('R_values must not be empty', 'p must be finite and at least 1',
                         'threshold_const must be positive', 'value_bits must lie in [2, 63]'):
            self.assertIn(fragment, problems)

    def test_targets_below_the_horizon_limit_are_rejected(self):
        with self.assertRaises(ConfigurationError):
            parse_config('T = 100\nvariants = tradeoff\nR_values = 0.05\n')

    def test_unit_instances(self):
        config = parse_config('instance = unit\nsparsity = 0.3\nvariants = full\nR_values = 0.5\n')
        self.assertIs(config.regime.kind, RegimeKind.UNIT)
        with self.assertRaises(ConfigurationError):
            parse_config('instance = unit\nsparsity = 0\n')

    def test_trace_instances_need_a_readable_trace(self):
        with self.assertRaises(ConfigurationError):
            parse_config('instance = trace\n')
        with self.assertRaises(ConfigurationError) as context:
            parse_config('instance = trace\ntrace_path = /nonexistent/trace.txt\n')
        self.assertIn('cannot be used', context.exception.problems[0])

    def test_single_expert_traces_are_rejected(self):
        with tempfile.TemporaryDirectory() as directory:
            trace = pathlib.Path(directory) / 'trace.txt'
            export_trace(gen_range_instance(1, 3, 10, 1, 5, 0.0, 0), trace)
            with self.assertRaises(ConfigurationError) as context:
                parse_config(f'instance = trace\ntrace_path = {trace}\nvariants = baseline\n')
        self.assertIn('n must be at least 2', ' | '.join(context.exception.problems))


class TestOverrides(unittest.TestCase):

    def test_none_is_ignored(self):
        config = ExperimentConfig()
        self.assertEqual(config.with_overrides(output_dir=None, master_seed=None), config)
        self.assertEqual(config.with_overrides(master_seed=3).master_seed, 3)

    def test_invalid_overrides_raise(self):
        with self.assertRaises(ConfigurationError):
            ExperimentConfig().with_overrides(jobs=0)

    def test_protocol_options(self):
        options = ExperimentConfig(value_bits=16).protocol_options()
        self.assertEqual(options['value_bits'], 16)
        self.assertEqual(options['increment_rule'], 'inverse_probability')
        self.assertIsNone(options['loss_bound'])
        self.assertEqual(options['moment_bound'], 'proven')

    def test_loss_bound_defaults_to_the_regime(self):
        config = ExperimentConfig()
        self.assertIsNone(config.loss_bound)
        self.assertIn('loss_bound = \n', config.serialize())
        self.assertEqual(parse_config('loss_bound = 2.5\n').loss_bound, 2.5)
        self.assertIn('loss_bound must be positive', ' | '.join(ExperimentConfig(loss_bound=-1.0).validate()))


class TestLoading(unittest.TestCase):

    def test_load(self):
        with tempfile.TemporaryDirectory() as directory:
            path = pathlib.Path(directory) / 'experiment.cfg'
            path.write_text(SAMPLE)
            self.assertEqual(load_config(path), parse_config(SAMPLE))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError) as context:
            load_config('/nonexistent/experiment.cfg')
        self.assertIn('cannot read', context.exception.problems[0])
