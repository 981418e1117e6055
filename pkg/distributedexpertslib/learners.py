#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: learners.py
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
Multiplicative weights over cumulative (estimated) losses.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .distributedexpertslibexceptions import InvalidParameter, InvalidEstimate

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
LOGGER_BASENAME = '''distributedexpertslib.learners'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())


def learning_rate(rho, T, n):  # pylint: disable=invalid-name
    """Learning rate ``sqrt(ln n / (rho T))`` for losses with second moment at most ``rho``.

    Args:
        rho (float): The bound on the second moment of every fed loss
        T (int): The horizon
        n (int): The number of experts, at least 2

    Returns:
        (float): The learning rate

    """
    if not rho > 0 or T < 1 or n < 2:
        raise InvalidParameter(f'The learning rate needs rho > 0, T >= 1 and n >= 2, got {rho}, {T}, {n}')
    return math.sqrt(math.log(n) / (rho * T))


@dataclass(frozen=True)
class WeightState:
    """Cumulative losses ``w`` fed to the learner, its learning rate and the elapsed rounds.

    Weights are kept as sums and only exponentiated when sampling, which is the
    multiplicative form without its underflow over long horizons.
    """

    w: np.ndarray
    eta: float
    t: int = 0

    @classmethod
    def initial(cls, n, eta):
        """The state before any loss is observed."""
        if not eta > 0:
            raise InvalidParameter(f'The learning rate must be positive, got {eta}')
        return cls(np.zeros(n), float(eta), 0)

    @property
    def probabilities(self):
        """The sampling distribution ``softmax(-eta w)``, shifted by ``min w``."""
        unnormalised = np.exp(-self.eta * (self.w - self.w.min()))
        return unnormalised / unnormalised.sum()


def update(state, estimates):
    """Adds one round of non negative loss estimates to the cumulative weights.

    Raises:
        InvalidEstimate: if an estimate is negative or not finite

    """
    estimates = np.asarray(estimates, dtype=float)
    if estimates.shape != state.w.shape:
        raise InvalidEstimate(f'Expected {state.w.shape} estimates, got {estimates.shape}')
    if not np.all(np.isfinite(estimates)) or np.any(estimates < 0):
        raise InvalidEstimate('Loss estimates must be finite and non negative')
    return WeightState(state.w + estimates, state.eta, state.t + 1)


def sample(state, rng_stream):
    """Samples an expert with probability proportional to ``exp(-eta w_i)``.

    Args:
        state (WeightState): The current weights
        rng_stream: Any object exposing ``uniforms()`` returning a float in (0, 1)

    Returns:
        (int): The sampled expert index

    """
    cumulative = np.cumsum(state.probabilities)
    index = int(np.searchsorted(cumulative, rng_stream.uniforms() * cumulative[-1], side='right'))
    return min(index, len(cumulative) - 1)
