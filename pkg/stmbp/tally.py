#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from itertools import chain
import logging

# stmbp
from .exceptions import DataError

#----------------------------------------------------------------------------------------------------------------------------------

PREPARED = 'prepared'


class SamplesFailed(DataError):
    pass

#----------------------------------------------------------------------------------------------------------------------------------

class Tally(object):
    """
    Counts what became of each sample of a batch job (prepared, or the name of the error that stopped it) and logs a summary
    table at the end.
    """
    # pylint: disable=attribute-defined-outside-init

    def __init__(self, label=None, log=logging):
        self.label = label
        self.log = log
        self.reset()

    def reset(self):
        self._expected = None
        self._count_by_fate = {}
        self._failed_samples = []

    def set_expected(self, expected):
        if not isinstance(expected, int):
            raise ValueError(repr(expected))
        self._expected = expected

    def record_fate(self, sample_id, fate=PREPARED):
        self._count_by_fate[fate] = self._count_by_fate.get(fate, 0) + 1
        if fate != PREPARED:
            self._failed_samples.append(sample_id)

    @property
    def failed_samples(self):
        return tuple(self._failed_samples)

    @property
    def total(self):
        return sum(self._count_by_fate.values())

    def check(self):
        self._log_table()
        if self._failed_samples:
            raise SamplesFailed("%d of %d samples failed: %s" % (
                len(self._failed_samples),
                self.total,
                ', '.join(self._failed_samples),
            ))
        if self._expected is not None and self.total != self._expected:
            raise SamplesFailed("Expected %d samples, saw %d" % (self._expected, self.total))
        self.log.debug('All %d samples prepared', self.total)

    def _log_table(self):
        table = [
            line.split('|')
            for line in chain(
                ['-- %s --||' % self.label] if self.label else [],
                self._iter_unpadded_table_lines('Sample fate', self._count_by_fate),
                [
                    '-- Tally --||',
                    'expected | %s |' % (
                        self._expected if self._expected is not None else '?',
                    ),
                    'total | %d | %s' % (
                        self.total,
                        '%.02f%%' % (100.0 * self.total / self._expected) if self._expected else '',
                    ),
                    '-||',
                ],
            )
        ]
        widths = [
            max(len(row[i]) for row in table)
            for i in (0, 1, 2)
        ]
        for row in table:
            pad, sep = '-+' if row[0].startswith('-') else ' |'
            self.log.info('    ' + sep.join(
                cell + pad * (width - len(cell))
                for cell, width in zip(row, widths)
            ))

    @staticmethod
    def _iter_unpadded_table_lines(title, counts):
        total = sum(counts.values())
        yield '-- %s --||' % title
        for fate, count in sorted(counts.items()):
            yield '%s | %-d | %.02f%%' % (
                fate,
                count,
                100.0 * count / total,
            )

#----------------------------------------------------------------------------------------------------------------------------------
