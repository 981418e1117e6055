#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: harness.py
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
Experiment harness: runs protocol grids and writes their CSV outputs.

Every output file starts with a ``# master_seed=... config_hash=...`` comment line
followed by the header row. Outputs are staged and only published when the whole
command succeeded.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from .losses import gen_range_instance, gen_unit_instance, ingest_trace
from .network import dump_transcripts
from .protocols import ProtocolConfig, Variant, run_protocol
from .utils import Hasher, staging_directory
from .verification import run_suite

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
LOGGER_BASENAME = '''distributedexpertslib.harness'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

SUMMARY_COLUMNS = ['variant', 'p', 'R', 'seed', 'total_bits', 'final_regret']


@dataclass(frozen=True)
class GridPoint:
    """One protocol run of an experiment."""

    variant: Variant
    p: float
    R: Optional[float]  # pylint: disable=invalid-name
    threshold_const: float
    seed: int

    @property
    def label(self):
        """File name stem of the run."""
        target = 'none' if self.R is None else f'{self.R:g}'
        return f'{self.variant.value}_p{self.p:g}_R{target}_seed{self.seed}'


def build_instance(config, seed):
    """The loss tensor of a seed: a fresh synthetic instance, or the configured trace."""
    if config.instance == 'trace':
        return ingest_trace(config.trace_path)
    if config.instance == 'unit':
        return gen_unit_instance(config.n, config.s, config.T, config.sparsity, config.gap, seed)
    return gen_range_instance(config.n, config.s, config.T, config.a, config.b, config.gap, seed)


def grid_points(config, variants=None, threshold_consts=None):
    """Every ``(variant, p, R, threshold_const, seed)`` combination, in a fixed order.

    ``BASELINE`` ignores the threshold and only runs with the first constant.
    """
    variants = [Variant(variant) for variant in (variants or config.variants)]
    threshold_consts = threshold_consts or config.threshold_consts
    points = []
    for variant in variants:
        targets = config.R_values if variant.needs_target else (None,)
        constants = threshold_consts[:1] if variant is Variant.BASELINE else threshold_consts
        for p in config.p_values:
            for target in targets:
                for threshold_const in constants:
                    points.extend(GridPoint(variant, p, target, threshold_const, seed) for seed in config.seeds)
    return points


def execute_point(config, point):
    """Runs a single grid point."""
    tensor = build_instance(config, point.seed)
    protocol = ProtocolConfig.for_tensor(tensor, point.variant, point.p, point.R,
                                         threshold_const=point.threshold_const,
                                         **config.protocol_options())
    return run_protocol(tensor, protocol, point.seed, config.master_seed)


def run_points(config, points):
    """Runs grid points, in parallel up to ``config.jobs`` processes, results in point order."""
    if config.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            return list(executor.map(execute_point, [config] * len(points), points))
    return [execute_point(config, point) for point in points]


def write_csv(frame, path, comment):
    """Writes a table as ``,`` separated LF terminated text after a ``#`` comment line."""
    with open(path, 'w', newline='') as output:
        output.write(f'# {comment}\n')
        frame.to_csv(output, index=False, lineterminator='\n')
    return path


def _log_digest(config):
    LOGGER.info('Outputs in "%s" have digest %s', config.output_dir, Hasher().hash_directory(config.output_dir))


def cmd_run(config):
    """Runs every ``(variant, p, R, seed)`` point with the first threshold constant.

    Writes ``report_<variant>_p<p>_R<R>_seed<seed>.csv`` per point, ``summary.csv`` and,
    when transcripts are kept, ``transcript_<...>.txt`` per point.

    Args:
        config (ExperimentConfig): A validated configuration

    Returns:
        (list): The run reports in point order

    """
    points = grid_points(config, threshold_consts=config.threshold_consts[:1])
    LOGGER.info('Running %s points into "%s"', len(points), config.output_dir)
    reports = run_points(config, points)
    with staging_directory(config.output_dir) as staging:
        for point, report in zip(points, reports):
            report.to_csv(staging / f'report_{point.label}.csv', comment=config.provenance)
            if report.transcripts is not None:
                dump_transcripts(report.transcripts, staging / f'transcript_{point.label}.txt')
        summary = pd.DataFrame([(point.variant.value, point.p, point.R, point.seed, report.bits, report.regret)
                                for point, report in zip(points, reports)], columns=SUMMARY_COLUMNS)
        write_csv(summary, staging / 'summary.csv', config.provenance)
    _log_digest(config)
    return reports


def _aggregate(frame, keys, metrics):
    aggregations = {}
    for metric in metrics:
        aggregations[f'mean_{metric}'] = (metric, 'mean')
        aggregations[f'stderr_{metric}'] = (metric, 'sem')
    table = frame.groupby(keys, dropna=False, sort=False).agg(**aggregations).reset_index()
    errors = [f'stderr_{metric}' for metric in metrics]
    table[errors] = table[errors].fillna(0.0)
    return table


def comm_regret_monotone(table):
    """Whether mean bits decrease with ``R`` for every ``(variant, p)`` beyond the combined standard errors."""
    monotone = True
    for (variant, p), curve in table.groupby(['variant', 'p'], sort=False):
        curve = curve.sort_values('R')
        bits = curve['mean_bits'].to_numpy()
        noise = curve['stderr_bits'].to_numpy()
        rising = np.diff(bits) > noise[1:] + noise[:-1]
        if rising.any():
            LOGGER.warning('Communication of %s at p=%s does not decrease with R: %s', variant, p, bits.tolist())
            monotone = False
    return monotone


def sweep_frame(points, reports):
    """One row of metrics per run."""
    return pd.DataFrame({'variant': [point.variant.value for point in points],
                         'p': [point.p for point in points],
                         'R': [math.nan if point.R is None else point.R for point in points],
                         'threshold_const': [point.threshold_const for point in points],
                         'seed': [point.seed for point in points],
                         'bits': [report.bits for report in reports],
                         'reports_per_round': [report.report_count / report.horizon for report in reports],
                         'regret': [report.regret for report in reports],
                         'reward': [report.reward for report in reports]})


def cmd_sweep_figures(config):
    """Produces ``comm_vs_p.csv``, ``reward_vs_p.csv`` and ``comm_vs_regret.csv``.

    The communication table sweeps ``p`` and the threshold constants of the
    distributed variants, the reward table adds the exact loss ``BASELINE`` and the
    communication against regret table sweeps ``R`` of the variants that take one.
    Every table holds the mean and standard error over the seeds.

    Args:
        config (ExperimentConfig): A validated configuration

    Returns:
        (dict): The three tables by file name

    """
    distributed = [variant for variant in config.variants if variant != Variant.BASELINE.value]
    points = grid_points(config, variants=distributed + [Variant.BASELINE.value])
    LOGGER.info('Sweeping %s points into "%s"', len(points), config.output_dir)
    frame = sweep_frame(points, run_points(config, points))
    first_constant = frame['threshold_const'] == config.threshold_consts[0]
    baseline = frame['variant'] == Variant.BASELINE.value
    targeted = frame['variant'].isin([variant.value for variant in Variant if variant.needs_target])
    tables = {'comm_vs_p.csv': _aggregate(frame[~baseline] if distributed else frame,
                                          ['variant', 'p', 'R', 'threshold_const'],
                                          ['bits', 'reports_per_round']),
              'reward_vs_p.csv': _aggregate(frame[first_constant], ['variant', 'p', 'R'], ['reward']),
              'comm_vs_regret.csv': _aggregate(frame[first_constant & targeted], ['variant', 'p', 'R'],
                                               ['bits', 'regret'])}
    comm_regret_monotone(tables['comm_vs_regret.csv'])
    with staging_directory(config.output_dir) as staging:
        for name, table in tables.items():
            write_csv(table, staging / name, config.provenance)
    _log_digest(config)
    return tables


def cmd_verify(suite, seed=0, master_seed=0, trials=None):
    """Runs a verification suite, see :func:`distributedexpertslib.verification.run_suite`."""
    return run_suite(suite, seed=seed, master_seed=master_seed, trials=trials)
