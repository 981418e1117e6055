#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: cli.py
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
Command line entry point ``distributedexperts``.

Exit status is 0 on success, 1 when the configuration is invalid and 2 when a
verification suite fails.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import argparse
import logging

from emoji import emojize

from .configuration import ExperimentConfig, load_config
from .distributedexpertslibexceptions import ConfigurationError, DistributedExpertsError
from .harness import cmd_run, cmd_sweep_figures, cmd_verify
from .verification import Suite

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
LOGGER_BASENAME = '''distributedexpertslib.cli'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

EXIT_SUCCESS, EXIT_INVALID, EXIT_VERIFICATION_FAILED = 0, 1, 2
LOGGERS_TO_DISABLE = ['matplotlib', 'numexpr']


def _add_common_arguments(parser):
    parser.add_argument('--config', help='The "key = value" experiment configuration file')
    parser.add_argument('--out', help='Overrides the output directory of the configuration')
    parser.add_argument('--seed', type=int, help='Overrides the 64 bit master seed')
    parser.add_argument('--jobs', type=int, help='Overrides the number of parallel runs')
    parser.add_argument('--log-level',
                        dest='log_level',
                        default='info',
                        choices=['debug', 'info', 'warning', 'error', 'critical'],
                        help='The level of the console logs')


def get_arguments(arguments=None):
    """Parses the command line.

    Args:
        arguments (list): The arguments, ``sys.argv[1:]`` if ``None``

    Returns:
        (argparse.Namespace): The parsed arguments

    """
    parser = argparse.ArgumentParser(prog='distributedexperts',
                                     description='Distributed experts protocols, experiments and checks')
    commands = parser.add_subparsers(dest='command', required=True)
    run = commands.add_parser('run', help='Writes one report per (variant, p, R, seed) and a summary')
    _add_common_arguments(run)
    sweep = commands.add_parser('sweep-figures', help='Writes the communication and reward sweep tables')
    _add_common_arguments(sweep)
    verify = commands.add_parser('verify', help='Runs a statistical verification suite')
    verify.add_argument('suite', choices=[suite.value for suite in Suite])
    verify.add_argument('--trials', type=int, help='Overrides the number of draws of every check')
    _add_common_arguments(verify)
    return parser.parse_args(arguments)


def setup_logging(level):
    """Installs console logging, colored when coloredlogs is available."""
    try:
        import coloredlogs  # pylint: disable=import-outside-toplevel
        coloredlogs.install(level=level.upper())
    except ImportError:
        logger = logging.getLogger()
        handler = logging.StreamHandler()
        handler.setLevel(level.upper())
        formatter = logging.Formatter(('%(asctime)s - '
                                       '%(name)s - '
                                       '%(levelname)s - '
                                       '%(message)s'))
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(level.upper())
    for logger_name in LOGGERS_TO_DISABLE:
        logging.getLogger(logger_name).disabled = True


def build_config(args):
    """The configuration of the file given, or the defaults, with the command line overrides applied."""
    config = load_config(args.config) if args.config else ExperimentConfig()
    return config.with_overrides(output_dir=args.out, master_seed=args.seed, jobs=args.jobs)


def verify(args, master_seed=0):
    """Runs a suite and logs every verdict, returning the exit status."""
    report = cmd_verify(args.suite, master_seed=master_seed, trials=args.trials)
    for check in report.checks:
        if check.passed:
            LOGGER.info('%s %s', emojize(':white_heavy_check_mark:'), check)
        else:
            LOGGER.error('%s %s', emojize(':cross_mark:'), check)
    if report.passed:
        LOGGER.info('%s Suite %s passed! %s', emojize(':white_heavy_check_mark:'), args.suite, emojize(':thumbs_up:'))
        return EXIT_SUCCESS
    LOGGER.error('%s Suite %s failed! %s', emojize(':cross_mark:'), args.suite, emojize(':crying_face:'))
    return EXIT_VERIFICATION_FAILED


def execute(arguments=None):
    """Runs a command and returns its exit status."""
    args = get_arguments(arguments)
    setup_logging(args.log_level)
    try:
        if args.command == 'verify':
            master_seed = build_config(args).master_seed if args.config else args.seed
            return verify(args, master_seed or 0)
        config = build_config(args)
        if args.command == 'run':
            cmd_run(config)
        else:
            cmd_sweep_figures(config)
    except ConfigurationError as error:
        for problem in error.problems:
            LOGGER.error('%s %s', emojize(':cross_mark:'), problem)
        return EXIT_INVALID
    except DistributedExpertsError as error:
        LOGGER.error('%s %s', emojize(':cross_mark:'), error)
        return EXIT_INVALID
    return EXIT_SUCCESS


def main():
    """Console script entry point."""
    raise SystemExit(execute())


if __name__ == '__main__':
    main()
