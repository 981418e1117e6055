#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: utils.py
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
Filesystem helpers of the harness: atomically published output directories and digests.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import hashlib
import logging
import os
import pathlib
import shutil
import stat
import tempfile
from contextlib import contextmanager

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
LOGGER_BASENAME = '''distributedexpertslib.utils'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())


def on_error(func, path, exc_info):  # pylint: disable=unused-argument
    """Error handler for ``shutil.rmtree`` that retries read only entries after making them writable."""
    if not os.access(path, os.W_OK):
        os.chmod(path, stat.S_IWUSR)
        func(path)
    else:
        raise  # pylint: disable=misplaced-bare-raise


def remove_tree(path):
    """Removes a directory tree, read only entries included."""
    shutil.rmtree(path, onerror=on_error)


@contextmanager
def staging_directory(output_directory):
    """Yields a sibling staging directory that replaces ``output_directory`` only on success.

    Outputs are written to a temporary directory next to the destination and moved
    into place with a single rename, so a failing run never leaves partial outputs
    behind. On failure the staging directory is removed and the destination is left
    untouched.

    Args:
        output_directory (str): The directory the outputs are published to

    Yields:
        (pathlib.Path): The staging directory to write to

    """
    destination = pathlib.Path(output_directory).absolute()
    destination.parent.mkdir(parents=True, exist_ok=True)
    staging = pathlib.Path(tempfile.mkdtemp(prefix=f'.{destination.name}.', dir=destination.parent))
    try:
        yield staging
    except BaseException:
        LOGGER.debug('Discarding staged outputs in "%s"', staging)
        remove_tree(staging)
        raise
    if destination.exists():
        remove_tree(destination)
    os.replace(staging, destination)
    LOGGER.debug('Published outputs to "%s"', destination)


class Hasher:
    """Calculates sha1 digests of texts, files and directories."""

    def __init__(self, buffer_size=65536):
        logger_name = u'{base}.{suffix}'.format(base=LOGGER_BASENAME,
                                                suffix=self.__class__.__name__)
        self._logger = logging.getLogger(logger_name)
        self.buffer_size = buffer_size

    @staticmethod
    def hash_text(text):
        """Calculates the sha1 hash of a text.

        Args:
            text (str): The text, utf-8 encoded before hashing

        Returns:
            (str): The hex digest

        """
        return hashlib.sha1(text.encode('utf-8')).hexdigest()

    def hash_file(self, file_name):
        """Calculates the sha1 hash of a file.

        Args:
            file_name (str): The file to hash

        Returns:
            (str): The hex digest

        """
        return self._update_with_file(hashlib.sha1(), file_name).hexdigest()

    def hash_directory(self, path):
        """Calculates the sha1 hash of every file under a directory, relative names included.

        Args:
            path (str): The directory

        Returns:
            (str): The hex digest, that of nothing if the directory does not exist

        """
        digest = hashlib.sha1()
        root = pathlib.Path(path).absolute()
        if not root.is_dir():
            self._logger.error('Directory "%s" does not exist', root)
            return digest.hexdigest()
        self._logger.debug('Calculating hash for directory "%s"', root)
        for file_path in sorted(entry for entry in root.rglob('*') if entry.is_file()):
            digest.update(hashlib.sha1(file_path.relative_to(root).as_posix().encode()).digest())
            digest = self._update_with_file(digest, file_path)
        return digest.hexdigest()

    def _update_with_file(self, digest, file_name):
        with open(file_name, 'rb') as input_file:
            for data in iter(lambda: input_file.read(self.buffer_size), b''):
                digest.update(data)
        return digest
