#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File: network.py
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
Simulation of the coordinator model.

Every round is self delimiting: when a round is active the coordinator probes
each server, which answers with its value reports followed by an acknowledgement.
Inactive rounds exchange nothing. Every message is charged to a
:class:`CommLedger` under a fixed :class:`CostModel`.

.. _Google Python Style Guide:
   http://google.github.io/styleguide/pyguide.html

"""

import logging
import pathlib
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .distributedexpertslibexceptions import InvalidParameter

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
LOGGER_BASENAME = '''distributedexpertslib.network'''
LOGGER = logging.getLogger(LOGGER_BASENAME)
LOGGER.addHandler(logging.NullHandler())

COORDINATOR = 'coordinator'


def server_name(index):
    """Role id of a server."""
    return f'server-{index}'


def ceil_log2(value):
    """``ceil(log2(value))`` for positive integers, exact."""
    return (int(value) - 1).bit_length()


class MessageKind(Enum):
    """The kinds of messages exchanged in a round."""

    VALUE_REPORT = 'VALUE_REPORT'
    SYNC_PROBE = 'SYNC_PROBE'
    SYNC_ACK = 'SYNC_ACK'


@dataclass(frozen=True)
class Message:
    """A single message; only value reports carry a payload."""

    kind: MessageKind
    sender: str
    receiver: str
    bits: int
    expert: Optional[int] = None
    copy: Optional[int] = None
    value: Optional[float] = None

    def __str__(self):
        expert = '-' if self.expert is None else self.expert
        copy = '-' if self.copy is None else self.copy
        return f'{self.kind.value} {self.sender} {self.receiver} {expert} {copy} {self.bits}'


@dataclass(frozen=True)
class CostModel:
    """Bit cost of every message kind.

    A value report costs ``ceil(log2 n) + ceil(log2 B) + V`` bits, a probe and an
    acknowledgement cost one bit each by default.
    """

    n: int
    copies: int = 1
    value_bits: int = 32
    probe_bits: int = 1
    ack_bits: int = 1

    @property
    def report_bits(self):
        """Cost of one value report."""
        return ceil_log2(self.n) + ceil_log2(self.copies) + self.value_bits

    def cost(self, kind):
        """Cost of one message of the given kind."""
        return {MessageKind.VALUE_REPORT: self.report_bits,
                MessageKind.SYNC_PROBE: self.probe_bits,
                MessageKind.SYNC_ACK: self.ack_bits}[kind]


class ValueCodec:
    """Fixed point code of ``ln(value)`` over ``[log_min, log_max]`` on ``value_bits`` bits.

    Code 0 is reserved for an exact zero, values outside the range saturate.
    """

    def __init__(self, value_bits=32, log_min=-50.0, log_max=50.0):
        if not 2 <= value_bits <= 63:
            raise InvalidParameter(f'Values must be coded on 2 to 63 bits, got {value_bits}')
        if not log_min < log_max:
            raise InvalidParameter('The dynamic range of the codec is empty')
        self.value_bits = value_bits
        self.log_min = float(log_min)
        self.log_max = float(log_max)
        self.max_code = (1 << value_bits) - 1
        self._steps = float((1 << value_bits) - 2)

    def encode(self, values):
        """Codes non negative values."""
        values = np.asarray(values, dtype=float)
        with np.errstate(divide='ignore'):
            logs = np.clip(np.log(values), self.log_min, self.log_max)
        fractions = (logs - self.log_min) / (self.log_max - self.log_min)
        codes = np.minimum(1 + np.rint(fractions * self._steps).astype(np.uint64), np.uint64(self.max_code))
        return np.where(values > 0, codes, np.uint64(0)).astype(np.uint64)

    def decode(self, codes):
        """Values a coordinator reads back from codes."""
        codes = np.asarray(codes, dtype=np.uint64)
        fractions = (codes.astype(float) - 1.0) / self._steps
        values = np.exp(self.log_min + fractions * (self.log_max - self.log_min))
        return np.where(codes > 0, values, 0.0)


@dataclass(frozen=True)
class ServerReport:
    """The value reports one server sends in a round, as parallel arrays."""

    server: int
    experts: np.ndarray
    copies: np.ndarray
    values: np.ndarray

    @classmethod
    def empty(cls, server):
        """A server with nothing to report."""
        return cls(server, np.empty(0, dtype=int), np.empty(0, dtype=int), np.empty(0))

    @classmethod
    def from_mask(cls, server, values, mask):
        """Reports every ``values[expert, copy]`` selected by ``mask``."""
        experts, copies = np.nonzero(mask)
        return cls(server, experts, copies, values[experts, copies])


@dataclass(frozen=True)
class RoundTranscript:  # pylint: disable=too-many-instance-attributes
    """Everything exchanged in one round, value reports held as parallel arrays.

    ``values`` are the decoded values, the only view of a report the coordinator
    ever gets.
    """

    round_index: int
    active: bool
    server_count: int
    cost_model: CostModel
    senders: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    experts: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    copies: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    codes: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.uint64))
    values: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def report_count(self):
        """Number of value reports."""
        return len(self.senders)

    @property
    def kind_counts(self):
        """Number of messages per kind."""
        if not self.active:
            return Counter()
        return Counter({MessageKind.SYNC_PROBE: self.server_count,
                        MessageKind.VALUE_REPORT: self.report_count,
                        MessageKind.SYNC_ACK: self.server_count})

    @property
    def bits(self):
        """Total cost of the round."""
        return sum(self.cost_model.cost(kind) * count for kind, count in self.kind_counts.items())

    def messages(self):
        """Expands the round into messages, in the order they are exchanged."""
        if not self.active:
            return
        probe_bits = self.cost_model.cost(MessageKind.SYNC_PROBE)
        ack_bits = self.cost_model.cost(MessageKind.SYNC_ACK)
        report_bits = self.cost_model.report_bits
        for server in range(self.server_count):
            name = server_name(server)
            yield Message(MessageKind.SYNC_PROBE, COORDINATOR, name, probe_bits)
            for index in np.flatnonzero(self.senders == server):
                yield Message(MessageKind.VALUE_REPORT, name, COORDINATOR, report_bits,
                              int(self.experts[index]), int(self.copies[index]), float(self.values[index]))
            yield Message(MessageKind.SYNC_ACK, name, COORDINATOR, ack_bits)


class CommLedger:
    """Bit accounting of a run, kept per round and as a running total."""

    def __init__(self):
        self.round_bits = []
        self.total = 0
        self.counts = Counter()

    def record(self, transcript):
        """Charges one round."""
        bits = transcript.bits
        self.round_bits.append(bits)
        self.total += bits
        self.counts.update(transcript.kind_counts)
        return bits

    def cumulative_bits(self):
        """Running total after every round."""
        return np.cumsum(np.asarray(self.round_bits, dtype=np.int64))

    def audit(self, transcripts=None):
        """Double entry check of the running total.

        The total is recounted from the per round entries and, when transcripts are
        given, from the individual messages of every round.
        """
        balanced = ledger_total(self) == self.total
        if transcripts is not None:
            recount = sum(message.bits for transcript in transcripts for message in transcript.messages())
            balanced = balanced and recount == self.total
        return balanced


def ledger_total(ledger):
    """Exact total communication, recounted from the per round entries."""
    return int(sum(ledger.round_bits))


class Network:
    """Round based message passing between a coordinator and ``s`` servers.

    Args:
        server_count (int): The number of servers
        cost_model (CostModel): The bit cost of every message
        codec (ValueCodec): The wire format of reported values
        keep_transcripts (bool): Whether every round transcript is retained

    """

    def __init__(self, server_count, cost_model, codec=None, keep_transcripts=False):
        logger_name = u'{base}.{suffix}'.format(base=LOGGER_BASENAME,
                                                suffix=self.__class__.__name__)
        self._logger = logging.getLogger(logger_name)
        self.server_count = server_count
        self.cost_model = cost_model
        self.codec = codec or ValueCodec(cost_model.value_bits)
        self.keep_transcripts = keep_transcripts
        self.ledger = CommLedger()
        self.transcripts = []

    def run_round(self, round_index, active, report_source):
        """Runs one round.

        Args:
            round_index (int): The round
            active (bool): Whether the coordinator talks to the servers at all
            report_source (callable): Called with a server index, returns its :class:`ServerReport`

        Returns:
            (RoundTranscript): The transcript, already charged to the ledger

        """
        if not active:
            transcript = RoundTranscript(round_index, False, self.server_count, self.cost_model)
        else:
            reports = [report_source(server) for server in range(self.server_count)]
            codes = self.codec.encode(np.concatenate([report.values for report in reports]))
            transcript = RoundTranscript(
                round_index, True, self.server_count, self.cost_model,
                senders=np.concatenate([np.full(len(report.values), report.server, dtype=int)
                                        for report in reports]),
                experts=np.concatenate([report.experts for report in reports]).astype(int),
                copies=np.concatenate([report.copies for report in reports]).astype(int),
                codes=codes,
                values=self.codec.decode(codes))
        bits = self.ledger.record(transcript)
        if self.keep_transcripts:
            self.transcripts.append(transcript)
        self._logger.debug('Round %s active=%s reports=%s bits=%s',
                           round_index, active, transcript.report_count, bits)
        return transcript


def dump_transcripts(transcripts, path):
    """Writes one ``round kind sender receiver expert b bits`` line per message."""
    path = pathlib.Path(path)
    with open(path, 'w') as dump:
        for transcript in transcripts:
            for message in transcript.messages():
                dump.write(f'{transcript.round_index} {message}\n')
    return path
