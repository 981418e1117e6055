#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: verification.py
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
Statistical verification suites of the estimator and the protocol pipelines.

Every suite draws from the Monte Carlo role of the shared stream in fixed size
chunks keyed by the chunk number, so its verdict depends on the seed only.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np
import pandas as pd

from .distributedexpertslibexceptions import InvalidParameter
from .estimators import (RandomStream,
                         StreamRole,
                         expected_report_count,
                         geo_constant,
                         geo_second_moment,
                         max_stable_cdf,
                         middle_probability,
                         stream_key,
                         threshold_miss_probability)
from .losses import gen_range_instance
from .protocols import ProtocolConfig, Variant, pipeline_increments

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".


# This is the main prefix used for logging
LOGGER_BASENAME = '''distributedexpertslib.verification'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

CHUNK_SIZE = 1_000_000
ESTIMATOR_CASES = ((3, 1.0), (2, 2.0), (1, 4.0))
MIDDLE_POINTS = (4.0, 8.0, 16.0)
MAX_STABLE_WEIGHTS = (3.0, 4.0)
# dimensions the pipeline thresholds are computed for
PIPELINE_EXPERTS, PIPELINE_SERVERS, PIPELINE_HORIZON = 16, 4, 20000
PIPELINE_ACTIVITY = 0.5
FAILURE_PROBABILITY = 1e-6


class Suite(Enum):
    """The verification suites."""

    CONSTANTS = 'constants'
    MAXSTABILITY = 'maxstability'
    MOMENTS = 'moments'
    MIDDLE = 'middle'
    PIPELINE = 'pipeline'


@dataclass(frozen=True)
class Check:
    """One verdict: the measured statistic against its bound."""

    name: str
    statistic: float
    bound: str
    passed: bool

    def __str__(self):
        verdict = 'PASS' if self.passed else 'FAIL'
        return f'{self.name}: {self.statistic:.6g} vs {self.bound} -> {verdict}'


@dataclass(frozen=True)
class VerificationReport:
    """The checks of a suite run."""

    suite: Suite
    seed: int
    checks: List[Check]

    @property
    def passed(self):
        """Whether every check passed."""
        return all(check.passed for check in self.checks)

    def to_frame(self):
        """The checks as a ``check,statistic,bound,passed`` table."""
        return pd.DataFrame([(check.name, check.statistic, check.bound, check.passed) for check in self.checks],
                            columns=['check', 'statistic', 'bound', 'passed'])


def chernoff_deviation(mu, failure=FAILURE_PROBABILITY):
    """Relative deviation ``d`` of a sum with mean ``mu`` exceeded with probability ``2 exp(-d ** 2 mu / 3)``."""
    if not mu > 0 or not 0 < failure < 1:
        raise InvalidParameter(f'Need mu > 0 and failure in (0, 1), got {mu}, {failure}')
    return math.sqrt(3.0 * math.log(2.0 / failure) / mu)


def _within(value, target, tolerance):
    return abs(value / target - 1.0) <= tolerance


def _chunks(total, chunk_size=CHUNK_SIZE):
    for chunk, start in enumerate(range(0, total, chunk_size)):
        yield chunk, min(chunk_size, total - start)


def geometric_mean_moments(copies, p, draws, key, index=0):
    """Monte Carlo ``E[Z]`` and ``E[Z ** 2]`` of ``Z = prod_b e_b ** (-1 / (B p))``.

    ``E[Z]`` is the plain sample mean. ``Z ** 2`` has infinite variance once ``B p <= 4`` so
    ``E[Z ** 2]`` is taken as the product over the copies of ``E[e ** (-q)]``, ``q = 2 / (B p)``,
    each estimated as ``m E[exp(y - y ** m)]`` for exponential ``y`` and ``m = 1 / (1 - q)``.
    That integrand is bounded by ``m e``.

    Returns:
        (tuple): The two empirical moments

    Raises:
        InvalidParameter: if ``B p <= 2`` where ``E[Z ** 2]`` is infinite

    """
    order = 2.0 / (copies * p)
    if not order < 1:
        raise InvalidParameter(f'E[Z^2] is infinite for B={copies}, p={p}')
    power = 1.0 / (1.0 - order)
    first = 0.0
    factors = np.zeros(copies)
    for chunk, size in _chunks(draws):
        stream = RandomStream(key, StreamRole.MONTE_CARLO, chunk, index)
        exponentials = stream.exponentials((size, copies))
        first += np.exp(-np.log(exponentials).sum(axis=1) / (copies * p)).sum()
        factors += np.exp(exponentials - exponentials ** power).sum(axis=0)
    return first / draws, float(np.prod(power * factors / draws))


def max_stable_samples(weights, p, trials, key, index=0):
    """Draws ``max_j f_j / e_j ** (1 / p)``."""
    weights = np.asarray(weights, dtype=float)
    parts = []
    for chunk, size in _chunks(trials):
        stream = RandomStream(key, StreamRole.MONTE_CARLO, chunk, index)
        parts.append((weights / stream.exponentials((size, len(weights))) ** (1.0 / p)).max(axis=1))
    return np.concatenate(parts)


def ks_distance(samples, cdf):
    """Sup distance between the empirical CDF of the samples and ``cdf``."""
    ordered = np.sort(samples)
    expected = cdf(ordered)
    count = len(ordered)
    above = np.arange(1, count + 1) / count - expected
    below = expected - np.arange(count) / count
    return float(max(above.max(), below.max()))


def middle_frequency(x, draws, key, index=0):
    """Empirical ``Pr[1 / e in (x, 2x]]``."""
    hits = 0
    for chunk, size in _chunks(draws):
        inverse = 1.0 / RandomStream(key, StreamRole.MONTE_CARLO, chunk, index).exponentials(size)
        hits += int(np.count_nonzero((inverse > x) & (inverse <= 2 * x)))
    return hits / draws


def verify_constants(key, trials=None):
    """Monte Carlo ``E[Z]`` against ``Gamma(1 - 1 / (B p)) ** B``, and ``C <= 2 ** B``."""
    draws = trials or 10_000_000
    checks = []
    for index, (copies, p) in enumerate(ESTIMATOR_CASES):
        constant = geo_constant(copies, p)
        mean, _ = geometric_mean_moments(copies, p, draws, key, index)
        checks.append(Check(f'E[Z] B={copies} p={p:g}', mean, f'{constant:.6g} +/- 0.5%',
                            _within(mean, constant, 0.005)))
        checks.append(Check(f'C <= 2^B B={copies} p={p:g}', constant, f'<= {2 ** copies}', constant <= 2 ** copies))
    return checks


def verify_moments(key, trials=None):
    """Second moments against ``Gamma(1 - 2 / (B p)) ** B`` and ``3 ** B``, and the unbiasedness of ``Z / C``."""
    draws = trials or 10_000_000
    checks = []
    for index, (copies, p) in enumerate(ESTIMATOR_CASES):
        constant = geo_constant(copies, p)
        second_moment = geo_second_moment(copies, p)
        mean, square = geometric_mean_moments(copies, p, draws, key, 10 + index)
        checks.extend([Check(f'E[Z/C] B={copies} p={p:g}', mean / constant, '1 +/- 1%',
                             _within(mean / constant, 1.0, 0.01)),
                       Check(f'E[Z^2] B={copies} p={p:g}', square, f'{second_moment:.6g} +/- 2%',
                             _within(square, second_moment, 0.02)),
                       Check(f'E[Z^2] <= 3^B B={copies} p={p:g}', square, f'<= {3 ** copies}', square <= 3 ** copies)])
    return checks


def verify_maxstability(key, trials=None):
    """Sup distance of the max of scaled losses to ``exp(-||f||_p ** p t ** -p)``."""
    samples = max_stable_samples(MAX_STABLE_WEIGHTS, 2.0, trials or 1_000_000, key, 20)
    distance = ks_distance(samples, lambda t: max_stable_cdf(t, MAX_STABLE_WEIGHTS, 2.0))
    return [Check('sup CDF distance f=(3,4) p=2', distance, '< 0.01', distance < 0.01)]


def verify_middle(key, trials=None):
    """``Pr[1 / e in (x, 2x]]`` against ``[1 / (4x), 1 / (2x)]``."""
    draws = trials or 10_000_000
    checks = []
    for index, x in enumerate(MIDDLE_POINTS):
        frequency = middle_frequency(x, draws, key, 30 + index)
        checks.append(Check(f'Pr[1/e in (x,2x]] x={x:g}', frequency,
                            f'[{1 / (4 * x):.6g}, {1 / (2 * x):.6g}] (exact {middle_probability(x):.6g})',
                            1 / (4 * x) <= frequency <= 1 / (2 * x)))
    return checks


def pipeline_cases(seed=0):
    """The single expert protocol configurations and losses the pipeline suite samples."""
    target = math.sqrt(1.0 / (PIPELINE_ACTIVITY * PIPELINE_HORIZON))
    shape = dict(p=2.0, n=PIPELINE_EXPERTS, s=PIPELINE_SERVERS, T=PIPELINE_HORIZON)
    range_losses = gen_range_instance(1, PIPELINE_SERVERS, 1, 1.0, 5.0, 0.0, seed).values[0, :, 0]
    return [(ProtocolConfig(Variant.SIMPLE, loss_bound=5.0, **shape), range_losses),
            (ProtocolConfig(Variant.TRADEOFF, R=target, loss_bound=5.0, **shape), range_losses),
            (ProtocolConfig(Variant.FULL, R=target, **shape), np.ones(PIPELINE_SERVERS))]


def _pipeline_checks(config, losses, sample):
    name = config.variant.value
    aggregate = float(np.sum(losses ** config.p) ** (1.0 / config.p))
    active = int(sample.active.sum())
    mean = float(sample.increments.mean())
    second = float(np.square(sample.increments).mean())
    checks = [Check(f'{name} mean increment / L', mean / aggregate, '1 +/- 5%', _within(mean, aggregate, 0.05)),
              Check(f'{name} E[increment^2]', second, f'<= 1.1 rho = {1.1 * config.rho:.6g}',
                    second <= 1.1 * config.rho)]
    missed = float(sample.missed.sum() / max(active, 1))
    checks.append(Check(f'{name} rounds missing a copy maximum', missed, '<= 0.001', missed <= 1e-3))
    trials = len(sample.active)
    spread = 3 * math.sqrt(trials * config.activity * (1 - config.activity))
    checks.append(Check(f'{name} active rounds', active, f'{trials * config.activity:.6g} +/- {spread:.6g}',
                        abs(active - trials * config.activity) <= max(spread, 1e-9)))
    if config.variant is Variant.FULL:
        ones, twos = (int(np.count_nonzero(sample.levels == level)) for level in (1, 2))
        ratio = ones / max(twos, 1)
        checks.append(Check('FULL Pr[a=1] / Pr[a=2]', ratio, '2 +/- 10%', _within(ratio, 2.0, 0.1)))
        return checks
    expected = active * config.copies * expected_report_count(losses, config.threshold, config.p,
                                                              config.estimator.constant)
    reports = float(sample.reports.sum())
    tolerance = chernoff_deviation(expected)
    checks.append(Check(f'{name} value reports', reports, f'{expected:.6g} +/- {tolerance:.2%}',
                        _within(reports, expected, tolerance)))
    miss = threshold_miss_probability(aggregate, config.threshold, config.p, config.estimator.constant)
    checks.append(Check(f'{name} analytic copy miss probability', miss, '<= 0.001', miss <= 1e-3))
    return checks


def verify_pipeline(key, trials=None, seed=0):
    """Pushes single expert rounds through every variant and checks bias, moments and message laws."""
    checks = []
    for index, (config, losses) in enumerate(pipeline_cases(seed)):
        sample = pipeline_increments(config, losses, trials or 1_000_000, key, 40 + index)
        checks.extend(_pipeline_checks(config, losses, sample))
    return checks


def run_suite(suite, seed=0, master_seed=0, trials=None):
    """Runs a verification suite.

    Args:
        suite (Suite|str): The suite
        seed (int): The seed of the Monte Carlo streams
        master_seed (int): The master seed
        trials (int): Overrides the number of draws of every check

    Returns:
        (VerificationReport): The verdicts

    """
    suite = Suite(suite)
    key = stream_key(seed, master_seed)
    runners = {Suite.CONSTANTS: verify_constants,
               Suite.MAXSTABILITY: verify_maxstability,
               Suite.MOMENTS: verify_moments,
               Suite.MIDDLE: verify_middle,
               Suite.PIPELINE: lambda run_key, draws: verify_pipeline(run_key, draws, seed)}
    checks = runners[suite](key, trials)
    for check in checks:
        LOGGER.debug('%s', check)
    report = VerificationReport(suite, seed, checks)
    LOGGER.info('Suite %s %s (%s checks)', suite.value, 'passed' if report.passed else 'failed', len(checks))
    return report
