#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: __init__.py
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
distributedexpertslib package.

Learning with experts whose losses are spread over servers and aggregated as l_p
norms, with the protocols, the communication accounting and the experiment harness.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html
"""
from ._version import __version__
from .estimators import (EstimatorParams,
                         ExpSample,
                         RandomStream,
                         sample_exponential,
                         scaled_loss,
                         geo_constant,
                         geo_second_moment,
                         geometric_mean)
from .losses import (LossTensor,
                     AggregatedLosses,
                     RunReport,
                     Regime,
                     lp_aggregate,
                     regret,
                     gen_range_instance,
                     gen_unit_instance,
                     ingest_trace,
                     export_trace)
from .learners import WeightState, learning_rate, update, sample
from .network import Network, CommLedger, RoundTranscript, ledger_total
from .protocols import (ProtocolConfig,
                        Variant,
                        run_baseline,
                        run_simple,
                        run_tradeoff,
                        run_full)
from .configuration import ExperimentConfig, load_config, parse_config
from .harness import cmd_run, cmd_sweep_figures, cmd_verify
from .verification import run_suite

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".

# This is to 'use' the module(s), so lint doesn't complain
assert __version__

assert EstimatorParams
assert ExpSample
assert RandomStream
assert sample_exponential
assert scaled_loss
assert geo_constant
assert geo_second_moment
assert geometric_mean
assert LossTensor
assert AggregatedLosses
assert RunReport
assert Regime
assert lp_aggregate
assert regret
assert gen_range_instance
assert gen_unit_instance
assert ingest_trace
assert export_trace
assert WeightState
assert learning_rate
assert update
assert sample
assert Network
assert CommLedger
assert RoundTranscript
assert ledger_total
assert ProtocolConfig
assert Variant
assert run_baseline
assert run_simple
assert run_tradeoff
assert run_full
assert ExperimentConfig
assert load_config
assert parse_config
assert cmd_run
assert cmd_sweep_figures
assert cmd_verify
assert run_suite
