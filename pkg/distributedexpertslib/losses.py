#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: losses.py
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
Ground truth losses, their l_p aggregation and the regret they induce.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
import pathlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np
import pandas as pd

from .distributedexpertslibexceptions import (InvalidParameter,
                                              RegimeViolation,
                                              TraceFormatError,
                                              MalformedHeader,
                                              DimensionMismatch)

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
LOGGER_BASENAME = '''distributedexpertslib.losses'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())


class RegimeKind(Enum):
    """The families of loss values the protocols are analysed for."""

    RANGE = 'RANGE'
    UNIT = 'UNIT'


@dataclass(frozen=True)
class Regime:
    """A declared bound on every per server loss.

    ``RANGE(a, b)`` requires every value in ``[a, b]`` with ``0 < a < b``,
    ``UNIT`` requires every value in ``[0, 1]``.
    """

    kind: RegimeKind
    lower: float = 0.0
    upper: float = 1.0

    @classmethod
    def range(cls, lower, upper):
        """Builds a ``RANGE(a, b)`` regime."""
        if not 0 < lower < upper:
            raise InvalidParameter(f'A range regime needs 0 < a < b, got a={lower}, b={upper}')
        return cls(RegimeKind.RANGE, float(lower), float(upper))

    @classmethod
    def unit(cls):
        """Builds the ``UNIT`` regime."""
        return cls(RegimeKind.UNIT, 0.0, 1.0)

    def violations(self, values):
        """Boolean mask of the values that do not belong to the regime."""
        return (values < self.lower) | (values > self.upper)

    def tokens(self):
        """The regime as it appears in a trace header."""
        if self.kind is RegimeKind.UNIT:
            return ['UNIT']
        return ['RANGE', repr(self.lower), repr(self.upper)]

    def __str__(self):
        if self.kind is RegimeKind.UNIT:
            return 'UNIT'
        return f'RANGE({self.lower}, {self.upper})'


def _first_violation(regime, values):
    offending = np.argwhere(regime.violations(values))
    return tuple(int(index) for index in offending[0]) if len(offending) else None


@dataclass(frozen=True)
class LossTensor:
    """Immutable dense array of per server losses indexed ``(expert, server, time)``.

    Attributes:
        values (numpy.ndarray): Read only float array of shape ``(n, s, T)``
        regime (Regime): The declared regime every value belongs to
        shift (float): The constant added at ingestion to make a trace non negative

    """

    values: np.ndarray
    regime: Regime
    shift: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 3 or min(values.shape) < 1:
            raise InvalidParameter(f'Loss tensors need three strictly positive dimensions, got {values.shape}')
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise InvalidParameter('Loss values must be finite and non negative')
        violation = _first_violation(self.regime, values)
        if violation:
            expert, server, time = violation
            raise RegimeViolation(f'Loss {values[violation]} at expert {expert}, server {server}, time {time} '
                                  f'is outside of {self.regime}',
                                  expert=expert, server=server, time=time)
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @property
    def n(self):
        """Number of experts."""
        return self.values.shape[0]

    @property
    def s(self):
        """Number of servers."""
        return self.values.shape[1]

    @property
    def T(self):  # pylint: disable=invalid-name
        """Horizon."""
        return self.values.shape[2]

    def server_losses(self, server):
        """The read only ``(n, T)`` slice a single server holds."""
        return self.values[:, server, :]

    def replace_values(self, values):
        """A new tensor with the same regime and shift holding ``values``."""
        return LossTensor(values, self.regime, self.shift)


@dataclass(frozen=True)
class AggregatedLosses:
    """The l_p losses ``L_i(t)`` of every expert, shape ``(n, T)``."""

    values: np.ndarray
    p: float

    def to_csv(self, path):
        """Exports the losses as ``expert,time,loss`` rows, expert major."""
        experts, times = np.indices(self.values.shape)
        frame = pd.DataFrame({'expert': experts.ravel(),
                              'time': times.ravel(),
                              'loss': self.values.ravel()})
        frame.to_csv(path, index=False, lineterminator='\n')
        return pathlib.Path(path)


def lp_aggregate(tensor, p):
    """Aggregates the per server losses to ``L_i(t) = (sum_j l_i(j, t) ** p) ** (1 / p)``.

    The row maximum is factored out before exponentiation so large ``p`` does not
    overflow.

    Args:
        tensor (LossTensor): The losses
        p (float): The finite loss exponent, at least 1

    Returns:
        (AggregatedLosses): The aggregated losses

    """
    if not (p >= 1 and math.isfinite(p)):
        raise InvalidParameter(f'The loss exponent must be finite and at least 1, got {p}')
    values = tensor.values
    peak = values.max(axis=1, keepdims=True)
    ratios = values / np.where(peak > 0, peak, 1.0)
    aggregated = peak[:, 0, :] * np.sum(ratios ** p, axis=1) ** (1.0 / p)
    return AggregatedLosses(aggregated, float(p))


def regret(choices, agg):
    """Time amortised regret ``(sum_t L_{i_t}(t) - min_i sum_t L_i(t)) / T``.

    Negative values are returned as they are.
    """
    choices = np.asarray(choices, dtype=int)
    horizon = agg.values.shape[1]
    if choices.shape != (horizon,):
        raise InvalidParameter(f'Expected {horizon} choices, got {choices.shape}')
    algorithm_loss = agg.values[choices, np.arange(horizon)].sum()
    best_loss = agg.values.sum(axis=1).min()
    return float((algorithm_loss - best_loss) / horizon)


def regret_trajectory(choices, agg):
    """Regret amortised over the elapsed rounds, after every round."""
    choices = np.asarray(choices, dtype=int)
    elapsed = np.arange(1, agg.values.shape[1] + 1)
    algorithm = np.cumsum(agg.values[choices, np.arange(len(choices))])
    best = np.cumsum(agg.values, axis=1).min(axis=0)
    return (algorithm - best) / elapsed


def _validate_dimensions(n, s, T):  # pylint: disable=invalid-name
    if min(n, s, T) < 1:
        raise InvalidParameter(f'Dimensions must be strictly positive, got n={n}, s={s}, T={T}')


def gen_range_instance(n, s, T, a, b, gap, seed):  # pylint: disable=invalid-name,too-many-arguments
    """Generates a ``RANGE(a, b)`` instance with a designated best expert.

    Expert 0 draws uniformly from ``[a, b - gap (b - a)]``, every other expert
    from ``[a, b]``.
    """
    if a <= 0:
        raise InvalidParameter(f'The lower end of a range instance must be positive, got {a}')
    if not 0 <= gap < 1:
        raise InvalidParameter(f'The gap must lie in [0, 1), got {gap}')
    regime = Regime.range(a, b)
    _validate_dimensions(n, s, T)
    uniforms = np.random.default_rng(seed).random((n, s, T))
    widths = np.full((n, 1, 1), b - a)
    widths[0] = (b - gap * (b - a)) - a
    return LossTensor(a + widths * uniforms, regime)


def gen_unit_instance(n, s, T, sparsity, gap, seed):  # pylint: disable=invalid-name,too-many-arguments
    """Generates a ``UNIT`` instance whose entries are non zero with probability ``sparsity``.

    Non zero entries are uniform on ``[0, 1]`` except for expert 0, whose entries
    are uniform on ``[0, 1 - gap]``.
    """
    if not 0 < sparsity <= 1:
        raise InvalidParameter(f'The sparsity must lie in (0, 1], got {sparsity}')
    if not 0 <= gap < 1:
        raise InvalidParameter(f'The gap must lie in [0, 1), got {gap}')
    _validate_dimensions(n, s, T)
    generator = np.random.default_rng(seed)
    values = generator.random((n, s, T))
    values[0] *= 1.0 - gap
    values *= generator.random((n, s, T)) < sparsity
    return LossTensor(values, Regime.unit())


def _parse_header(line):
    tokens = line.split()
    if len(tokens) < 4:
        raise MalformedHeader('The header must read "n s T regime[ a b]"', line=1)
    dimensions = []
    for column, token in enumerate(tokens[:3], start=1):
        try:
            dimension = int(token)
        except ValueError:
            raise MalformedHeader(f'Dimension "{token}" is not an integer', line=1, column=column) from None
        if dimension < 1:
            raise MalformedHeader(f'Dimension {dimension} must be strictly positive', line=1, column=column)
        dimensions.append(dimension)
    kind = tokens[3].upper()
    if kind == 'UNIT' and len(tokens) == 4:
        return dimensions, Regime.unit()
    if kind == 'RANGE' and len(tokens) == 6:
        try:
            return dimensions, Regime.range(float(tokens[4]), float(tokens[5]))
        except (ValueError, InvalidParameter) as error:
            raise MalformedHeader(f'Invalid range bounds: {error}', line=1, column=5) from None
    raise MalformedHeader(f'Unknown regime declaration "{" ".join(tokens[3:])}"', line=1, column=4)


def ingest_trace(path):
    """Reads a loss trace.

    The first line reads ``n s T regime[ a b]``; it is followed by ``n * T`` lines
    of ``s`` decimal values, the line of expert ``i`` at time ``t`` being
    ``2 + i * T + t`` (expert major). Traces holding negative values (for example
    negated accuracies) are shifted by ``-min`` so they become non negative; the
    shift is kept on the returned tensor.

    Raises:
        MalformedHeader: if the first line cannot be parsed
        DimensionMismatch: if the body does not hold ``n * T`` lines of ``s`` values
        TraceFormatError: if a value is not a finite decimal
        RegimeViolation: if a (shifted) value lies outside of the declared regime

    """
    lines = pathlib.Path(path).read_text().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedHeader('The trace is empty', line=1)
    (experts, servers, horizon), regime = _parse_header(lines[0])
    body = lines[1:]
    if len(body) != experts * horizon:
        raise DimensionMismatch(f'Expected {experts * horizon} value lines, found {len(body)}',
                                line=len(lines) + 1)
    rows = np.empty((experts * horizon, servers))
    for row, text in enumerate(body):
        tokens = text.split()
        if len(tokens) != servers:
            raise DimensionMismatch(f'Expected {servers} values, found {len(tokens)}',
                                    line=row + 2, column=min(len(tokens), servers) + 1)
        for column, token in enumerate(tokens):
            try:
                rows[row, column] = float(token)
            except ValueError:
                raise TraceFormatError(f'Value "{token}" is not a number', line=row + 2, column=column + 1) from None
    if not np.all(np.isfinite(rows)):
        row, column = np.argwhere(~np.isfinite(rows))[0]
        raise TraceFormatError('Values must be finite', line=int(row) + 2, column=int(column) + 1)
    shift = 0.0
    if rows.min() < 0:
        shift = -float(rows.min())
        rows = rows + shift
        LOGGER.info('Shifted trace %s by %s to make it non negative', path, shift)
    violation = _first_violation(regime, rows)
    if violation:
        row, column = violation
        expert, time = divmod(row, horizon)
        raise RegimeViolation(f'Value {rows[row, column]} is outside of {regime}',
                              expert=expert, server=column, time=time, line=row + 2, column=column + 1)
    values = rows.reshape(experts, horizon, servers).transpose(0, 2, 1)
    LOGGER.debug('Ingested trace %s with n=%s, s=%s, T=%s', path, experts, servers, horizon)
    return LossTensor(values, regime, shift)


def export_trace(tensor, path):
    """Writes a tensor in the trace format using shortest round trip float text."""
    header = ' '.join([str(tensor.n), str(tensor.s), str(tensor.T)] + tensor.regime.tokens())
    rows = tensor.values.transpose(0, 2, 1).reshape(tensor.n * tensor.T, tensor.s)
    lines = [header] + [' '.join(repr(float(value)) for value in row) for row in rows]
    path = pathlib.Path(path)
    path.write_text('\n'.join(lines) + '\n')
    return path


@dataclass
class RunReport:  # pylint: disable=too-many-instance-attributes
    """Outcome of one protocol run.

    ``alg_loss``, ``best_loss`` and ``regret`` are evaluated on the true l_p losses;
    every other field only holds what the coordinator saw or did.
    """

    variant: str
    p: float
    R: Optional[float]  # pylint: disable=invalid-name
    seed: int
    choices: np.ndarray
    true_losses: np.ndarray
    estimates: np.ndarray
    increments: np.ndarray
    active: np.ndarray
    levels: np.ndarray
    cumulative_bits: np.ndarray
    cumulative_regret: np.ndarray
    alg_loss: float
    best_loss: float
    regret: float
    bits: int
    report_count: int = 0
    missed_copies: int = 0
    shift: float = 0.0
    ledger: Any = field(default=None, repr=False)
    transcripts: Any = field(default=None, repr=False)

    @classmethod
    def evaluate(cls, agg, choices, **kwargs):
        """Builds a report, evaluating the choices on the aggregated losses."""
        choices = np.asarray(choices, dtype=int)
        horizon = agg.values.shape[1]
        true_losses = agg.values[choices, np.arange(horizon)]
        alg_loss = float(true_losses.sum())
        best_loss = float(agg.values.sum(axis=1).min())
        return cls(choices=choices,
                   true_losses=true_losses,
                   cumulative_regret=regret_trajectory(choices, agg),
                   alg_loss=alg_loss,
                   best_loss=best_loss,
                   regret=(alg_loss - best_loss) / horizon,
                   **kwargs)

    @property
    def horizon(self):
        """Number of rounds played."""
        return len(self.choices)

    @property
    def reward(self):
        """Average negated loss of the played experts."""
        return -self.alg_loss / self.horizon

    @property
    def chosen_estimates(self):
        """Estimate of the played expert's loss in every round, NaN when none was formed."""
        return self.estimates[self.choices, np.arange(self.horizon)]

    def to_frame(self):
        """The per round table ``time,choice,true_loss,estimate,cum_bits,cum_regret``."""
        return pd.DataFrame({'time': np.arange(self.horizon),
                             'choice': self.choices,
                             'true_loss': self.true_losses,
                             'estimate': self.chosen_estimates,
                             'cum_bits': self.cumulative_bits,
                             'cum_regret': self.cumulative_regret})

    def to_csv(self, path, comment=None):
        """Writes the per round table, preceded by an optional ``#`` comment line."""
        path = pathlib.Path(path)
        with open(path, 'w', newline='') as report_file:
            if comment:
                report_file.write(f'# {comment}\n')
            self.to_frame().to_csv(report_file, index=False, lineterminator='\n')
        return path
