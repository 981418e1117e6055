#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: protocols.py
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
The distributed protocols and the exact loss reference they are measured against.

``SIMPLE`` talks to every server in every round, ``TRADEOFF`` only in rounds
activated by a public coin and ``FULL`` additionally draws a public reporting
level that trades the threshold of the servers against the weight of an update.
``BASELINE`` ships every exact l_p loss to the coordinator.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
import numbers
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, partial
from typing import Optional

import numpy as np

from .distributedexpertslibexceptions import InvalidParameter, RegimeViolation
from .estimators import (EstimatorParams,
                         RandomStream,
                         StreamRole,
                         geometric_mean,
                         scaled_loss,
                         stream_key)
from .learners import WeightState, learning_rate, sample, update
from .losses import RegimeKind, RunReport, lp_aggregate
from .network import CostModel, MessageKind, Network, ServerReport, ValueCodec

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
LOGGER_BASENAME = '''distributedexpertslib.protocols'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

# R ** 2 * T may fall short of 1 by rounding when R = 1 / sqrt(T)
ACTIVITY_TOLERANCE = 1e-12


class Variant(Enum):
    """The protocols a run can execute."""

    BASELINE = 'BASELINE'
    SIMPLE = 'SIMPLE'
    TRADEOFF = 'TRADEOFF'
    FULL = 'FULL'

    @property
    def needs_target(self):
        """Whether the variant is parameterised by a target regret ``R``."""
        return self in (Variant.TRADEOFF, Variant.FULL)


class IncrementRule(Enum):
    """How a gated update of the full protocol is weighted."""

    INVERSE_PROBABILITY = 'inverse_probability'
    LITERAL = 'literal'


class MomentBound(Enum):
    """Which second moment of the normalised estimator sets the learning rate."""

    EXACT = 'exact'
    PROVEN = 'proven'


def check_protocol_parameters(variant, p, n, s, T, R=None,  # pylint: disable=invalid-name,too-many-arguments
                              threshold_const=100.0, value_bits=32, loss_bound=1.0, level_cap=None):
    """Collects every problem of a protocol parameterisation.

    Returns:
        (list): Human readable problems, empty if the parameters are valid

    """
    problems = []
    try:
        variant = Variant(variant)
    except ValueError:
        return [f'unknown variant "{variant}"']
    if not (isinstance(p, numbers.Real) and math.isfinite(p) and p >= 1):
        problems.append(f'p must be finite and at least 1, got {p}')
    if min(s, T) < 1:
        problems.append(f's and T must be strictly positive, got s={s}, T={T}')
    if n < 2:
        problems.append(f'n must be at least 2 experts, got n={n}')
    if variant.needs_target:
        if R is None:
            problems.append(f'{variant.value} needs a target regret R')
        elif not R > 0 or R ** 2 * T < 1 - ACTIVITY_TOLERANCE:
            problems.append(f'{variant.value} needs R >= 1/sqrt(T) = {1 / math.sqrt(max(T, 1)):.6g}, got R={R}')
    if not threshold_const > 0:
        problems.append(f'threshold_const must be positive, got {threshold_const}')
    if not 2 <= value_bits <= 63:
        problems.append(f'value_bits must lie in [2, 63], got {value_bits}')
    if not loss_bound > 0:
        problems.append(f'loss_bound must be positive, got {loss_bound}')
    if level_cap is not None and level_cap < 1:
        problems.append(f'level_cap must be at least 1, got {level_cap}')
    return problems


def check_regime(variant, regime):
    """Rejects tensors whose regime the variant is not analysed for.

    Raises:
        RegimeViolation: if ``SIMPLE``/``TRADEOFF`` get a non ``RANGE`` tensor or ``FULL``
            a tensor not bounded by 1

    """
    variant = Variant(variant)
    if variant in (Variant.SIMPLE, Variant.TRADEOFF) and regime.kind is not RegimeKind.RANGE:
        raise RegimeViolation(f'{variant.value} needs a RANGE(a, b) instance, got {regime}')
    if variant is Variant.FULL and regime.upper > 1:
        raise RegimeViolation(f'FULL needs losses bounded by 1, got {regime}')


@dataclass(frozen=True)
class ProtocolConfig:  # pylint: disable=too-many-instance-attributes
    """A fully validated protocol parameterisation and everything derived from it.

    Attributes:
        variant (Variant): The protocol
        p (float): The loss exponent
        n (int): The number of experts
        s (int): The number of servers
        T (int): The horizon
        R (float): The target regret, ``TRADEOFF`` and ``FULL`` only
        threshold_const (float): The constant dividing the report threshold
        value_bits (int): The width of a coded value
        loss_bound (float): The bound ``b`` on every per server loss used for the learning rate, 1 when
            unset and the upper end of the regime through :meth:`for_tensor`
        moment_bound (MomentBound): Which estimator second moment enters the learning rate
        increment_rule (IncrementRule): How ``FULL`` weighs a gated update
        level_cap (int): The highest level ``A`` of ``FULL``, ``ceil(10 ln(nsT))`` by default
        keep_transcripts (bool): Whether every round transcript is retained

    """

    variant: Variant
    p: float
    n: int
    s: int
    T: int  # pylint: disable=invalid-name
    R: Optional[float] = None  # pylint: disable=invalid-name
    threshold_const: float = 100.0
    value_bits: int = 32
    loss_bound: Optional[float] = 1.0
    moment_bound: MomentBound = MomentBound.PROVEN
    increment_rule: IncrementRule = IncrementRule.INVERSE_PROBABILITY
    level_cap: Optional[int] = None
    keep_transcripts: bool = False

    def __post_init__(self):
        if self.loss_bound is None:
            object.__setattr__(self, 'loss_bound', 1.0)
        problems = check_protocol_parameters(self.variant, self.p, self.n, self.s, self.T, self.R,
                                             self.threshold_const, self.value_bits, self.loss_bound,
                                             self.level_cap)
        if problems:
            raise InvalidParameter('; '.join(problems))
        object.__setattr__(self, 'variant', Variant(self.variant))
        object.__setattr__(self, 'moment_bound', MomentBound(self.moment_bound))
        object.__setattr__(self, 'increment_rule', IncrementRule(self.increment_rule))
        if self.level_cap is None:
            object.__setattr__(self, 'level_cap', max(1, math.ceil(10 * self.log_term)))

    @classmethod
    def for_tensor(cls, tensor, variant, p, R=None, **options):  # pylint: disable=invalid-name
        """Builds the configuration matching the dimensions of a tensor.

        The loss bound defaults to the upper end of the tensor regime.
        """
        if options.get('loss_bound') is None:
            options['loss_bound'] = tensor.regime.upper
        return cls(variant=variant, p=p, n=tensor.n, s=tensor.s, T=tensor.T, R=R, **options)

    @cached_property
    def estimator(self):
        """The estimator constants for ``p``."""
        return EstimatorParams.from_p(self.p)

    @property
    def copies(self):
        """Independent copies per expert, a single exact value for ``BASELINE``."""
        return 1 if self.variant is Variant.BASELINE else self.estimator.copies

    @property
    def log_term(self):
        """``ln(n s T)``."""
        return math.log(self.n * self.s * self.T)

    @property
    def spread(self):
        """``max(s ** (1 - 2 / p), 1)``, the extra activity ``FULL`` needs for ``p > 2``."""
        return max(self.s ** (1.0 - 2.0 / self.p), 1.0)

    @property
    def activity(self):
        """Probability ``rho`` that a round is active."""
        if self.variant is Variant.TRADEOFF:
            activity = 1.0 / (self.R ** 2 * self.T)
        elif self.variant is Variant.FULL:
            activity = self.spread / (self.R ** 2 * self.T)
        else:
            return 1.0
        # R = 1/sqrt(T) up to rounding samples every round
        return 1.0 if activity >= 1.0 - ACTIVITY_TOLERANCE else activity

    @property
    def threshold(self):
        """The report threshold ``s ** (1 / p) / (threshold_const ln(nsT))``."""
        return self.s ** (1.0 / self.p) / (self.threshold_const * self.log_term)

    def level_threshold(self, level):
        """The ``FULL`` report threshold of a level, lowered by ``2 ** (level / p)``."""
        return self.threshold / 2.0 ** (np.asarray(level, dtype=float) / self.p)

    def report_threshold(self, level=0):
        """The threshold a server applies in a round drawn at ``level``."""
        if self.variant is Variant.FULL:
            return float(self.level_threshold(level))
        return self.threshold

    @property
    def moment_factor(self):
        """Second moment of the normalised estimator, relative to the squared loss."""
        if self.moment_bound is MomentBound.PROVEN:
            return self.estimator.proven_normalized_second_moment
        return self.estimator.normalized_second_moment

    @property
    def rho(self):
        """Second moment bound of every update, which sets the learning rate."""
        scale = (self.loss_bound * self.s ** (1.0 / self.p)) ** 2
        if self.variant is Variant.BASELINE:
            return scale
        if self.variant is Variant.FULL:
            # the level gate adds at most one squared aggregate
            return (self.moment_factor + 1.0) * self.spread * scale / self.activity
        return self.moment_factor * scale / self.activity

    @property
    def eta(self):
        """The learning rate ``sqrt(ln n / (rho T))``."""
        return learning_rate(self.rho, self.T, self.n)

    @property
    def cost_model(self):
        """The bit cost of every message of a run."""
        return CostModel(self.n, self.copies, self.value_bits)


def level_probabilities(level_cap):
    """Probability ``2 ** -a`` of every level ``a = 1..A``, the tail mass folded into ``A``."""
    probabilities = 0.5 ** np.arange(1, level_cap + 1, dtype=float)
    probabilities[-1] *= 2.0
    return probabilities


def draw_level(uniforms, level_cap):
    """Maps uniforms in (0, 1) to levels distributed as :func:`level_probabilities`."""
    uniforms = np.asarray(uniforms, dtype=float)
    levels = np.minimum(level_cap, np.floor(-np.log2(1.0 - uniforms)) + 1).astype(int)
    return levels if levels.ndim else int(levels)


def level_tail_probability(levels):
    """Probability that a drawn level is at least ``levels`` (zero for infinite levels)."""
    levels = np.asarray(levels, dtype=float)
    with np.errstate(over='ignore'):
        tail = np.where(levels <= 1, 1.0, 2.0 ** (1.0 - levels))
    return tail if tail.ndim else float(tail)


def estimate_levels(estimates, s, p):
    """Smallest integer ``a >= 0`` with ``estimate >= (s / 2 ** a) ** (1 / p)``.

    Estimates that are zero or missing get an infinite level.
    """
    estimates = np.asarray(estimates, dtype=float)
    levels = np.full(estimates.shape, np.inf)
    positive = np.nan_to_num(estimates, nan=0.0) > 0
    values = estimates[positive]
    with np.errstate(over='ignore', divide='ignore'):
        candidates = np.maximum(np.ceil(math.log2(s) - p * np.log2(values)), 0.0)
        lower = np.maximum(candidates - 1, 0.0)
        candidates = np.where((candidates > 0) & (values >= (s / 2.0 ** lower) ** (1.0 / p)), lower, candidates)
        candidates = np.where(values < (s / 2.0 ** candidates) ** (1.0 / p), candidates + 1, candidates)
    levels[positive] = candidates
    return levels if levels.ndim else float(levels)


def server_values(losses, exponentials, p, constant):
    """Scaled losses ``l / (constant e ** (1 / p))``, the losses broadcast over the trailing copy axis."""
    return scaled_loss(np.asarray(losses, dtype=float)[..., None], exponentials, p, constant)


def report_mask(values, threshold):
    """The scaled losses a server reports."""
    return values >= threshold


def copy_maxima(n, copies, experts, copy_indices, values):
    """Largest received value of every ``(expert, copy)``, zero where nothing was received."""
    maxima = np.zeros((n, copies))
    np.maximum.at(maxima, (np.asarray(experts, dtype=int), np.asarray(copy_indices, dtype=int)), values)
    return maxima


def simple_estimates(maxima, activity=1.0):
    """Geometric mean of the copy maxima scaled by ``1 / rho``, missing where a copy got nothing."""
    return geometric_mean(maxima) / activity


def full_estimates(maxima, constant):
    """Geometric mean of the copy maxima divided by ``C`` at the coordinator, zero where a copy got nothing."""
    return np.nan_to_num(geometric_mean(np.asarray(maxima) / constant), nan=0.0)


def full_increments(estimates, levels, config):
    """Updates of ``FULL``, non zero only where the estimate's level does not exceed the round's level."""
    estimates = np.asarray(estimates, dtype=float)
    estimate_level = estimate_levels(estimates, config.s, config.p)
    gate = (estimates > 0) & (estimate_level <= levels)
    safe_level = np.where(gate, estimate_level, 0.0)
    if config.increment_rule is IncrementRule.LITERAL:
        weights = 2.0 ** safe_level * config.R ** 2 * config.T
    else:
        weights = 1.0 / (config.activity * level_tail_probability(safe_level))
    return np.where(gate, weights * estimates, 0.0)


def public_schedule(config, key):
    """Activity and level of every round, drawn from the public stream every party can replay.

    Returns:
        (tuple): Boolean activity per round and the level per round (0 where none was drawn)

    """
    draws = RandomStream(key, StreamRole.PUBLIC).uniforms((config.T, 2))
    active = draws[:, 0] < config.activity
    levels = np.zeros(config.T, dtype=int)
    if config.variant is Variant.FULL:
        levels = np.where(active, draw_level(draws[:, 1], config.level_cap), 0)
    return active, levels


class Server:
    """A server holding the ``(n, T)`` losses of its own users.

    Args:
        index (int): The server index
        losses (numpy.ndarray): The losses of the server, indexed ``(expert, time)``
        config (ProtocolConfig): The protocol parameters
        key (int): The stream key of the run

    """

    def __init__(self, index, losses, config, key):
        logger_name = u'{base}.{suffix}'.format(base=LOGGER_BASENAME,
                                                suffix=self.__class__.__name__)
        self._logger = logging.getLogger(logger_name)
        self.index = index
        self._losses = losses
        self._config = config
        self._key = key
        self._constant = 1.0 if config.variant is Variant.FULL else config.estimator.constant

    def values(self, time):
        """Scaled losses of every expert and copy in a round, from the server's private stream."""
        stream = RandomStream(self._key, StreamRole.SERVER, time, self.index)
        exponentials = stream.exponentials((self._config.n, self._config.copies))
        return server_values(self._losses[:, time], exponentials, self._config.p, self._constant)

    def report(self, time, level=0):
        """The values clearing the round's threshold."""
        values = self.values(time)
        return ServerReport.from_mask(self.index, values, report_mask(values, self._config.report_threshold(level)))


class ReferenceServer:
    """Relays the exact l_p losses; server 0 ships all of them, the others stay silent."""

    def __init__(self, index, aggregated):
        self.index = index
        self._aggregated = aggregated

    def report(self, time, level=0):  # pylint: disable=unused-argument
        """All ``n`` exact losses of a round from server 0, nothing from the others."""
        if self.index:
            return ServerReport.empty(self.index)
        values = self._aggregated[:, time][:, None]
        return ServerReport.from_mask(self.index, values, np.ones(values.shape, dtype=bool))


@dataclass(frozen=True)
class RoundEstimate:
    """What the coordinator made of a round.

    Attributes:
        estimates (numpy.ndarray): The estimate of every expert, NaN where none was formed
        increments (numpy.ndarray): The update applied to the weights
        missed (int): The number of ``(expert, copy)`` pairs for which nothing was received

    """

    estimates: np.ndarray
    increments: np.ndarray
    missed: int = 0


class Coordinator:
    """The learner of a run.

    It reads nothing but transcripts and the public schedule, and owns the weights
    and the stream its choices are sampled from.
    """

    def __init__(self, config, key):
        logger_name = u'{base}.{suffix}'.format(base=LOGGER_BASENAME,
                                                suffix=self.__class__.__name__)
        self._logger = logging.getLogger(logger_name)
        self.config = config
        self.state = WeightState.initial(config.n, config.eta)
        self._learner = RandomStream(key, StreamRole.LEARNER)

    def choose(self):
        """Samples the expert followed in the current round."""
        return sample(self.state, self._learner)

    def estimate(self, transcript, level=0):
        """Turns the reports of an active round into estimates and updates.

        Args:
            transcript (RoundTranscript): The round as received
            level (int): The public level of the round, ``FULL`` only

        Returns:
            (RoundEstimate): The estimates and updates of every expert

        """
        config = self.config
        maxima = copy_maxima(config.n, config.copies, transcript.experts, transcript.copies, transcript.values)
        if config.variant is Variant.BASELINE:
            estimates = maxima[:, 0]
            return RoundEstimate(estimates, estimates.copy())
        missed = int(np.count_nonzero(maxima == 0))
        if config.variant is Variant.FULL:
            estimates = full_estimates(maxima, config.estimator.constant)
            increments = full_increments(estimates, level, config)
        else:
            estimates = simple_estimates(maxima, config.activity)
            increments = np.nan_to_num(estimates, nan=0.0)
        if missed:
            self._logger.debug('Round %s missed %s copy maxima', transcript.round_index, missed)
        return RoundEstimate(estimates, increments, missed)

    def apply(self, increments):
        """Adds a round's updates to the weights."""
        self.state = update(self.state, increments)


def _server_report(servers, time, level, server):
    return servers[server].report(time, level)


def run_protocol(tensor, config, seed, master_seed=0):
    """Runs a protocol on a tensor.

    Args:
        tensor (LossTensor): The ground truth losses
        config (ProtocolConfig): The protocol parameters, matching the tensor's dimensions
        seed (int): The seed of the run
        master_seed (int): The master seed shared by every party

    Returns:
        (RunReport): The outcome of the run

    Raises:
        InvalidParameter: if the configuration does not match the tensor
        RegimeViolation: if the tensor's regime does not suit the variant

    """
    if (config.n, config.s, config.T) != tensor.values.shape:
        raise InvalidParameter(f'Configuration for {(config.n, config.s, config.T)} does not match '
                               f'a tensor of shape {tensor.values.shape}')
    check_regime(config.variant, tensor.regime)
    key = stream_key(seed, master_seed)
    aggregated = lp_aggregate(tensor, config.p)
    if config.variant is Variant.BASELINE:
        servers = [ReferenceServer(index, aggregated.values) for index in range(tensor.s)]
    else:
        servers = [Server(index, tensor.server_losses(index), config, key) for index in range(tensor.s)]
    network = Network(tensor.s, config.cost_model, ValueCodec(config.value_bits), config.keep_transcripts)
    coordinator = Coordinator(config, key)
    active, levels = public_schedule(config, key)
    LOGGER.debug('Running %s with p=%s, R=%s, seed=%s, rho=%s, eta=%s',
                 config.variant.value, config.p, config.R, seed, config.activity, config.eta)
    choices = np.empty(config.T, dtype=int)
    estimates = np.full((config.n, config.T), np.nan)
    increments = np.zeros((config.n, config.T))
    missed = 0
    for time in range(config.T):
        choices[time] = coordinator.choose()
        level = int(levels[time])
        transcript = network.run_round(time, bool(active[time]), partial(_server_report, servers, time, level))
        if transcript.active:
            round_estimate = coordinator.estimate(transcript, level)
            estimates[:, time] = round_estimate.estimates
            increments[:, time] = round_estimate.increments
            missed += round_estimate.missed
        coordinator.apply(increments[:, time])
    report = RunReport.evaluate(aggregated, choices,
                                variant=config.variant.value,
                                p=config.p,
                                R=config.R,
                                seed=seed,
                                estimates=estimates,
                                increments=increments,
                                active=active,
                                levels=levels,
                                cumulative_bits=network.ledger.cumulative_bits(),
                                bits=network.ledger.total,
                                report_count=int(network.ledger.counts[MessageKind.VALUE_REPORT]),
                                missed_copies=missed,
                                shift=tensor.shift,
                                ledger=network.ledger,
                                transcripts=network.transcripts if config.keep_transcripts else None)
    LOGGER.info('%s run with p=%s, R=%s, seed=%s: regret %.6g, %s bits',
                config.variant.value, config.p, config.R, seed, report.regret, report.bits)
    return report


def run_baseline(tensor, p, seed, master_seed=0, **options):
    """Multiplicative weights on the exact l_p losses, all shipped to the coordinator."""
    return run_protocol(tensor, ProtocolConfig.for_tensor(tensor, Variant.BASELINE, p, **options), seed, master_seed)


def run_simple(tensor, p, seed, master_seed=0, **options):
    """Every round, servers report the scaled losses clearing the threshold."""
    return run_protocol(tensor, ProtocolConfig.for_tensor(tensor, Variant.SIMPLE, p, **options), seed, master_seed)


def run_tradeoff(tensor, p, R, seed, master_seed=0, **options):  # pylint: disable=invalid-name
    """Like :func:`run_simple` in rounds activated with probability ``1 / (R ** 2 T)``."""
    config = ProtocolConfig.for_tensor(tensor, Variant.TRADEOFF, p, R, **options)
    return run_protocol(tensor, config, seed, master_seed)


def run_full(tensor, p, R, seed, master_seed=0, **options):  # pylint: disable=invalid-name
    """The level gated protocol for losses bounded by 1."""
    config = ProtocolConfig.for_tensor(tensor, Variant.FULL, p, R, **options)
    return run_protocol(tensor, config, seed, master_seed)


@dataclass(frozen=True)
class PipelineSample:
    """Independent single expert rounds pushed through a protocol's estimation pipeline.

    Attributes:
        increments (numpy.ndarray): The update of every trial, zero for inactive trials
        active (numpy.ndarray): Whether each trial was active
        levels (numpy.ndarray): The level of each trial, ``FULL`` only
        reports (numpy.ndarray): The number of values reported in each trial
        missed (numpy.ndarray): Whether some copy got no report in an active trial

    """

    increments: np.ndarray
    active: np.ndarray
    levels: np.ndarray
    reports: np.ndarray
    missed: np.ndarray


def pipeline_increments(config, losses, trials, key, index=0, chunk_size=100_000):  # pylint: disable=too-many-arguments,too-many-locals
    """Samples the update one expert with per server ``losses`` receives in independent rounds.

    Values are not quantised. Draws come from the Monte Carlo role of the stream, in
    chunks keyed by the chunk number and ``index``.

    Args:
        config (ProtocolConfig): The protocol parameters
        losses (array_like): The ``s`` per server losses of the expert
        trials (int): The number of independent rounds
        key (int): The stream key
        index (int): A sub index separating independent samples under one key
        chunk_size (int): The number of trials drawn at once

    Returns:
        (PipelineSample): The per trial outcome

    """
    losses = np.asarray(losses, dtype=float)
    copies = config.copies
    constant = 1.0 if config.variant is Variant.FULL else config.estimator.constant
    outcomes = []
    for chunk, start in enumerate(range(0, trials, chunk_size)):
        size = min(chunk_size, trials - start)
        stream = RandomStream(key, StreamRole.MONTE_CARLO, chunk, index)
        public = stream.uniforms((size, 2))
        active = public[:, 0] < config.activity
        levels = np.zeros(size, dtype=int)
        if config.variant is Variant.BASELINE:
            aggregate = np.sum(losses ** config.p) ** (1.0 / config.p)
            outcomes.append((np.where(active, aggregate, 0.0), active, levels,
                             np.full(size, len(losses)), np.zeros(size, dtype=bool)))
            continue
        values = server_values(losses[None, :], stream.exponentials((size, len(losses), copies)),
                               config.p, constant)
        if config.variant is Variant.FULL:
            levels = np.where(active, draw_level(public[:, 1], config.level_cap), 0)
            thresholds = config.level_threshold(np.maximum(levels, 1))[:, None, None]
        else:
            thresholds = config.threshold
        mask = report_mask(values, thresholds)
        maxima = np.where(mask, values, 0.0).max(axis=1)
        if config.variant is Variant.FULL:
            increments = full_increments(full_estimates(maxima, config.estimator.constant), levels, config)
        else:
            increments = np.nan_to_num(simple_estimates(maxima, config.activity), nan=0.0)
        outcomes.append((np.where(active, increments, 0.0), active, levels,
                         np.where(active, mask.sum(axis=(1, 2)), 0), active & (maxima == 0).any(axis=1)))
    return PipelineSample(*(np.concatenate(parts) for parts in zip(*outcomes)))
