#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: configuration.py
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
Experiment configuration files.

A configuration is a flat ``key = value`` text, one key per line, ``#`` starting a
comment and lists being comma separated::

    instance = range
    n = 16
    variants = SIMPLE, TRADEOFF
    R_values = 0.05, 0.1, 0.2
    seeds = 0, 1, 2

Parsing validates everything up front and reports every problem at once.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import dataclasses
import logging
import pathlib
from dataclasses import dataclass
from typing import Optional, Tuple

from .distributedexpertslibexceptions import (ConfigurationError,
                                              InvalidParameter,
                                              RegimeViolation,
                                              TraceFormatError)
from .losses import Regime, ingest_trace
from .protocols import (IncrementRule,
                        MomentBound,
                        Variant,
                        check_protocol_parameters,
                        check_regime)
from .utils import Hasher

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
LOGGER_BASENAME = '''distributedexpertslib.configuration'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

INSTANCES = ('range', 'unit', 'trace')
MAX_SEED = (1 << 64) - 1
TRUE_TOKENS = ('true', 'yes', 'on', '1')
FALSE_TOKENS = ('false', 'no', 'off', '0')
# execution settings that never change a result
UNHASHED_FIELDS = ('output_dir', 'jobs')


def _parse_bool(text):
    token = text.lower()
    if token in TRUE_TOKENS:
        return True
    if token in FALSE_TOKENS:
        return False
    raise ValueError(f'"{text}" is not a boolean')


def _parse_list(parser):
    def parse(text):
        return tuple(parser(item.strip()) for item in text.split(',') if item.strip())
    return parse


def _format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, tuple):
        return ', '.join(_format_value(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


PARSERS = {int: int,
           float: float,
           Optional[float]: lambda text: float(text) if text else None,
           str: str,
           bool: _parse_bool,
           Tuple[str, ...]: _parse_list(lambda text: text.upper()),
           Tuple[float, ...]: _parse_list(float),
           Tuple[int, ...]: _parse_list(int)}


@dataclass(frozen=True)
class ExperimentConfig:  # pylint: disable=too-many-instance-attributes
    """Everything an experiment needs, with the documented defaults.

    Synthetic instances are regenerated for every seed; a trace is shared by all seeds.
    An unset ``loss_bound`` is taken from the upper end of the instance regime.
    """

    instance: str = 'range'
    n: int = 16
    s: int = 4
    T: int = 1000  # pylint: disable=invalid-name
    a: float = 1.0
    b: float = 5.0
    gap: float = 0.5
    sparsity: float = 1.0
    trace_path: str = ''
    variants: Tuple[str, ...] = ('SIMPLE',)
    p_values: Tuple[float, ...] = (2.0,)
    R_values: Tuple[float, ...] = ()  # pylint: disable=invalid-name
    threshold_consts: Tuple[float, ...] = (100.0,)
    seeds: Tuple[int, ...] = (0,)
    master_seed: int = 0
    value_bits: int = 32
    loss_bound: Optional[float] = None
    moment_bound: str = 'proven'
    increment_rule: str = 'inverse_probability'
    keep_transcripts: bool = False
    output_dir: str = 'output'
    jobs: int = 1

    def serialize(self, exclude=()):
        """The canonical ``key = value`` text, keys in declaration order."""
        return ''.join(f'{field.name} = {_format_value(getattr(self, field.name))}\n'
                       for field in dataclasses.fields(self) if field.name not in exclude)

    @property
    def config_hash(self):
        """sha1 of the canonical text without the execution settings."""
        return Hasher.hash_text(self.serialize(exclude=UNHASHED_FIELDS))

    @property
    def provenance(self):
        """The comment heading every output file."""
        return f'master_seed={self.master_seed} config_hash={self.config_hash}'

    @property
    def regime(self):
        """The regime of a generated instance, ``None`` for traces."""
        if self.instance == 'range':
            return Regime.range(self.a, self.b)
        if self.instance == 'unit':
            return Regime.unit()
        return None

    def protocol_options(self):
        """Keyword arguments shared by every protocol run of the experiment."""
        return {'value_bits': self.value_bits,
                'loss_bound': self.loss_bound,
                'moment_bound': self.moment_bound,
                'increment_rule': self.increment_rule,
                'keep_transcripts': self.keep_transcripts}

    def with_overrides(self, **overrides):
        """A validated copy with the non ``None`` overrides applied.

        Raises:
            ConfigurationError: if the result is invalid

        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        config = dataclasses.replace(self, **changes)
        problems = config.validate()
        if problems:
            raise ConfigurationError(problems)
        return config

    def _instance_problems(self):
        problems = []
        if self.instance not in INSTANCES:
            return [f'instance must be one of {", ".join(INSTANCES)}, got "{self.instance}"'], None
        if self.instance == 'trace':
            if not self.trace_path:
                return ['instance = trace needs a trace_path'], None
            try:
                tensor = ingest_trace(self.trace_path)
            except (OSError, TraceFormatError, RegimeViolation) as error:
                return [f'trace "{self.trace_path}" cannot be used: {error}'], None
            return [], (tensor.n, tensor.s, tensor.T, tensor.regime)
        if self.n < 2 or self.s < 1 or self.T < 1:
            problems.append(f'n must be at least 2, s and T at least 1, got n={self.n}, s={self.s}, T={self.T}')
        if not 0 <= self.gap < 1:
            problems.append(f'gap must lie in [0, 1), got {self.gap}')
        if self.instance == 'unit' and not 0 < self.sparsity <= 1:
            problems.append(f'sparsity must lie in (0, 1], got {self.sparsity}')
        try:
            regime = self.regime
        except InvalidParameter as error:
            problems.append(str(error))
            regime = None
        return problems, (self.n, self.s, self.T, regime)

    def _list_problems(self):
        problems = []
        for name in ('variants', 'p_values', 'threshold_consts', 'seeds'):
            if not getattr(self, name):
                problems.append(f'{name} must not be empty')
        for variant in self.variants:
            if variant not in Variant.__members__:
                problems.append(f'unknown variant "{variant}"')
        if any(Variant.__members__.get(variant, Variant.SIMPLE).needs_target for variant in self.variants) \
                and not self.R_values:
            problems.append('R_values must not be empty for TRADEOFF or FULL')
        for seed in self.seeds + (self.master_seed,):
            if not 0 <= seed <= MAX_SEED:
                problems.append(f'seeds must be unsigned 64 bit integers, got {seed}')
        for enumeration, value in ((MomentBound, self.moment_bound), (IncrementRule, self.increment_rule)):
            if value not in {member.value for member in enumeration}:
                problems.append(f'"{value}" is not one of {", ".join(member.value for member in enumeration)}')
        if self.jobs < 1:
            problems.append(f'jobs must be at least 1, got {self.jobs}')
        return problems

    def validate(self):
        """Collects every problem of the configuration, every grid point included.

        Returns:
            (list): Human readable problems, empty for a valid configuration

        """
        problems, dimensions = self._instance_problems()
        problems.extend(self._list_problems())
        if dimensions is None:
            return problems
        n, s, horizon, regime = dimensions
        variants = [Variant(variant) for variant in self.variants if variant in Variant.__members__]
        for variant in variants:
            if regime is not None:
                try:
                    check_regime(variant, regime)
                except RegimeViolation as error:
                    problems.append(str(error))
            # an empty R_values is reported on its own, the other parameters are still checked
            targets = (self.R_values or (None,)) if variant.needs_target else (None,)
            loss_bound = self.loss_bound
            if loss_bound is None:
                loss_bound = regime.upper if regime is not None else 1.0
            for p in self.p_values:
                for target in targets:
                    for threshold_const in self.threshold_consts:
                        problems.extend(check_protocol_parameters(variant, p, n, s, horizon, target,
                                                                  threshold_const, self.value_bits,
                                                                  loss_bound))
        return list(dict.fromkeys(problems))


FIELD_TYPES = {field.name: field.type for field in dataclasses.fields(ExperimentConfig)}


def parse_config(text, source='<string>'):
    """Parses and validates a configuration text.

    Args:
        text (str): The ``key = value`` text
        source (str): The name the text is reported under

    Returns:
        (ExperimentConfig): The validated configuration

    Raises:
        ConfigurationError: listing every problem found

    """
    problems = []
    values = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        key, separator, value = (part.strip() for part in line.partition('='))
        if not separator:
            problems.append(f'{source}:{number}: expected "key = value"')
        elif key not in FIELD_TYPES:
            problems.append(f'{source}:{number}: unknown key "{key}"')
        elif key in values:
            problems.append(f'{source}:{number}: duplicate key "{key}"')
        else:
            try:
                values[key] = PARSERS[FIELD_TYPES[key]](value)
            except ValueError as error:
                problems.append(f'{source}:{number}: invalid value for "{key}": {error}')
    if problems:
        raise ConfigurationError(problems)
    config = ExperimentConfig(**values)
    problems = config.validate()
    if problems:
        raise ConfigurationError(problems)
    LOGGER.debug('Parsed configuration from %s with hash %s', source, config.config_hash)
    return config


def load_config(path):
    """Reads, parses and validates a configuration file."""
    path = pathlib.Path(path)
    try:
        text = path.read_text()
    except OSError as error:
        raise ConfigurationError([f'cannot read "{path}": {error}']) from None
    return parse_config(text, str(path))
