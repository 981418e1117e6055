#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: distributedexpertslibexceptions.py
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
Custom exception code for distributedexpertslib.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

__author__ = '''Costas Tyfoxylos <ctyfoxylos@schubergphilis.com>'''
__docformat__ = '''google'''
__date__ = '''19-10-2026'''
__copyright__ = '''Copyright 2026, Costas Tyfoxylos'''
__credits__ = ["Costas Tyfoxylos"]
__license__ = '''MIT'''
__maintainer__ = '''Costas Tyfoxylos'''
__email__ = '''<ctyfoxylos@schubergphilis.com>'''
__status__ = '''Development'''  # "Prototype", "Development", "Production".


class DistributedExpertsError(Exception):
    """Base exception of the library."""


class EstimatorDomainError(DistributedExpertsError, ValueError):
    """An estimator function was called outside of its mathematical domain."""


class InvalidParameter(DistributedExpertsError, ValueError):
    """A generator, learner or protocol parameter is out of its valid range."""


class InvalidEstimate(DistributedExpertsError, ValueError):
    """A loss estimate fed to the learner is negative or not finite."""


class RegimeViolation(DistributedExpertsError):
    """A loss value lies outside of the regime declared for its tensor.

    Args:
        message (str): The description of the violation
        expert (int): The expert index of the offending value
        server (int): The server index of the offending value
        time (int): The time index of the offending value
        line (int): The 1-based line of a trace file, if the value came from one
        column (int): The 1-based column of a trace file, if the value came from one

    """

    def __init__(self, message, expert=None, server=None, time=None, line=None, column=None):  # pylint: disable=too-many-arguments
        super().__init__(message)
        self.expert = expert
        self.server = server
        self.time = time
        self.line = line
        self.column = column


class TraceFormatError(DistributedExpertsError):
    """A trace file could not be parsed.

    Args:
        message (str): The description of the problem
        line (int): The 1-based line the problem was found on
        column (int): The 1-based whitespace separated column, if known

    """

    def __init__(self, message, line=None, column=None):
        location = f' (line {line}' + (f', column {column})' if column else ')') if line else ''
        super().__init__(f'{message}{location}')
        self.line = line
        self.column = column


class MalformedHeader(TraceFormatError):
    """The first line of a trace file is not ``n s T regime[ a b]``."""


class DimensionMismatch(TraceFormatError):
    """The body of a trace file does not match the dimensions of its header."""


class ConfigurationError(DistributedExpertsError):
    """One or more problems were found while validating an experiment configuration.

    All problems are collected before raising so a single error reports everything.

    Args:
        problems (list): The human readable descriptions of every problem found

    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__('Invalid configuration: ' + '; '.join(self.problems))
