#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: estimators.py
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
Exponential scalings and the geometric mean estimator.

A per-server loss ``l`` is scaled as ``l / (C * e ** (1 / p))`` for a rate one
exponential ``e``. By max-stability the maximum of the scaled losses over the
servers is distributed as ``L / (C * e ** (1 / p))`` where ``L`` is the l_p
aggregate, and the geometric mean of ``B`` independent such maxima normalised by
``C = Gamma(1 - 1 / (B p)) ** B`` is an unbiased estimate of ``L`` with second
moment ``Gamma(1 - 2 / (B p)) ** B / C ** 2`` times ``L ** 2``.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy.special import gammaln

from .distributedexpertslibexceptions import EstimatorDomainError

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
LOGGER_BASENAME = '''distributedexpertslib.estimators'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

NO_ESTIMATE = float('nan')
MASK_64 = (1 << 64) - 1


class StreamRole(IntEnum):
    """Owners of disjoint counter ranges of the shared random source."""

    PUBLIC = 1
    SERVER = 2
    LEARNER = 3
    MONTE_CARLO = 4


def stream_key(seed, master_seed=0):
    """Combines a run seed and the shared master seed into a 128 bit Philox key.

    Args:
        seed (int): The per run seed
        master_seed (int): The 64 bit master seed shared by every party of a run

    Returns:
        (int): The key

    """
    return ((int(seed) & MASK_64) << 64) | (int(master_seed) & MASK_64)


class RandomStream:
    """Counter based deterministic stream of uniforms in the open interval (0, 1).

    The stream is a Philox generator whose key is the run key and whose counter
    starts at ``(0, index, time, role)``. Any party knowing the key replays the
    exact same draws for a given ``(role, time, index)`` without communicating, and
    distinct triples never share counter values.

    Args:
        key (int): The 128 bit key, see :func:`stream_key`
        role (StreamRole): The owner of the stream
        time (int): The round the stream belongs to
        index (int): A role specific sub index, for example the server index

    """

    def __init__(self, key, role, time=0, index=0):
        self.key = int(key)
        self.role = StreamRole(role)
        self.time = int(time)
        self.index = int(index)
        counter = np.array([0, self.index, self.time, int(self.role)], dtype=np.uint64)
        self._generator = np.random.Generator(np.random.Philox(key=self.key, counter=counter))

    def uniforms(self, size=None):
        """Draws uniforms, resampling the (measure zero) value 0.

        Args:
            size (int|tuple): The shape of the draw, ``None`` for a single float

        Returns:
            (float|numpy.ndarray): The uniforms

        """
        if size is None:
            value = self._generator.random()
            while value <= 0.0:
                value = self._generator.random()
            return value
        values = self._generator.random(size)
        invalid = values <= 0.0
        while invalid.any():
            values[invalid] = self._generator.random(int(invalid.sum()))
            invalid = values <= 0.0
        return values

    def exponentials(self, size=None):
        """Draws rate one exponentials by inverse CDF, all strictly positive."""
        return -np.log(self.uniforms(size))


@dataclass(frozen=True)
class ExpSample:
    """A single strictly positive draw of a rate one exponential random variable."""

    value: float

    def __post_init__(self):
        if not self.value > 0:
            raise EstimatorDomainError(f'Exponential samples must be positive, got {self.value}')

    @classmethod
    def draw(cls, rng_stream):
        """Draws a sample from a stream, see :func:`sample_exponential`."""
        return cls(sample_exponential(rng_stream))


def sample_exponential(rng_stream):
    """Draws one rate one exponential as ``-ln(U)``.

    Args:
        rng_stream: Any object exposing ``uniforms()`` returning a float in (0, 1)

    Returns:
        (float): A strictly positive exponential draw

    """
    uniform = float(rng_stream.uniforms())
    while not 0.0 < uniform < 1.0:
        uniform = float(rng_stream.uniforms())
    return -math.log(uniform)


def default_copies(p):
    """Number of independent copies ``B = ceil(3 / p)``."""
    if not p > 0:
        raise EstimatorDomainError(f'The loss exponent must be positive, got {p}')
    # rounding guards values like 3 / 0.3 = 10.000000000000002
    return max(1, math.ceil(round(3.0 / p, 9)))


def geo_constant(copies, p):
    """Normalisation constant ``C = Gamma(1 - 1 / (B p)) ** B`` of the geometric mean.

    Args:
        copies (int): The number of copies ``B``
        p (float): The loss exponent

    Returns:
        (float): ``E[Z]`` for ``Z`` the geometric mean of ``B`` draws of ``e ** (-1 / p)``

    Raises:
        EstimatorDomainError: if ``B p <= 1``, where the expectation diverges

    """
    order = copies * p
    if order <= 1:
        raise EstimatorDomainError(f'The geometric mean has no finite mean for B*p = {order} <= 1')
    return float(np.exp(copies * gammaln(1.0 - 1.0 / order)))


def geo_second_moment(copies, p):
    """Exact second moment ``E[Z ** 2] = Gamma(1 - 2 / (B p)) ** B`` of the geometric mean.

    Raises:
        EstimatorDomainError: if ``B p <= 2``, where the second moment diverges

    """
    order = copies * p
    if order <= 2:
        raise EstimatorDomainError(f'The geometric mean has no finite second moment for B*p = {order} <= 2')
    return float(np.exp(copies * gammaln(1.0 - 2.0 / order)))


@dataclass(frozen=True)
class EstimatorParams:
    """Every constant of the estimator for a given loss exponent.

    Attributes:
        p (float): The loss exponent, at least 1
        copies (int): The number of independent copies ``B``
        constant (float): The normalisation constant ``C``
        second_moment (float): The exact ``E[Z ** 2]``

    """

    p: float
    copies: int
    constant: float
    second_moment: float

    @classmethod
    def from_p(cls, p, copies=None):
        """Builds the parameters with ``B = ceil(3 / p)`` unless ``copies`` is given."""
        if not (p >= 1 and math.isfinite(p)):
            raise EstimatorDomainError(f'The loss exponent must be finite and at least 1, got {p}')
        copies = default_copies(p) if copies is None else int(copies)
        return cls(p=float(p),
                   copies=copies,
                   constant=geo_constant(copies, p),
                   second_moment=geo_second_moment(copies, p))

    @property
    def normalized_second_moment(self):
        """Second moment of ``Z / C``, the multiplier of ``L ** 2`` in ``E[estimate ** 2]``."""
        return self.second_moment / self.constant ** 2

    @property
    def proven_second_moment(self):
        """The analytic ceiling ``3 ** B`` on ``E[Z ** 2]``."""
        return 3.0 ** self.copies

    @property
    def proven_normalized_second_moment(self):
        """The analytic ceiling ``3 ** B / C ** 2`` on the second moment of ``Z / C``."""
        return self.proven_second_moment / self.constant ** 2


def scaled_loss(loss, e, p, c):
    """Scales losses as ``loss / (c * e ** (1 / p))``.

    Works element wise on numpy arrays as well as on floats.

    Raises:
        EstimatorDomainError: if any ``e`` is not strictly positive

    """
    exponentials = np.asarray(e, dtype=float)
    if np.any(exponentials <= 0):
        raise EstimatorDomainError('Exponential scalings must be strictly positive')
    result = np.asarray(loss, dtype=float) / (c * exponentials ** (1.0 / p))
    return result if result.ndim else float(result)


def geometric_mean(values, axis=-1):
    """Geometric mean computed in log space.

    Args:
        values (array_like): Non negative values, reduced along ``axis``
        axis (int): The axis holding the ``B`` copies

    Returns:
        (float|numpy.ndarray): The geometric mean, :data:`NO_ESTIMATE` wherever a value is zero

    """
    values = np.asarray(values, dtype=float)
    positive = values > 0
    with np.errstate(divide='ignore'):
        logs = np.log(np.where(positive, values, 1.0))
    result = np.where(positive.all(axis=axis), np.exp(logs.mean(axis=axis)), NO_ESTIMATE)
    return result if result.ndim else float(result)


def max_stable_cdf(t, weights, p):
    """CDF of ``max_j f_j / e_j ** (1 / p)``, that is ``exp(-||f||_p ** p / t ** p)``."""
    norm_p = float(np.sum(np.asarray(weights, dtype=float) ** p))
    t = np.asarray(t, dtype=float)
    return np.exp(-norm_p * t ** (-p))


def middle_probability(x):
    """Exact ``Pr[1 / e in (x, 2x]]`` for a rate one exponential ``e``."""
    return math.exp(-1.0 / (2.0 * x)) - math.exp(-1.0 / x)


def threshold_miss_probability(aggregate, threshold, p, c):
    """Probability that the maximum scaled loss of one copy stays below the threshold.

    The maximum is distributed as ``L / (c * e ** (1 / p))``, so the miss
    probability is ``exp(-(L / (c * threshold)) ** p)``.
    """
    return math.exp(-(aggregate / (c * threshold)) ** p)


def expected_report_count(losses, threshold, p, c):
    """Expected number of servers whose scaled loss of one copy clears the threshold."""
    ratios = np.asarray(losses, dtype=float) / (c * threshold)
    return float(np.sum(-np.expm1(-ratios ** p)))
