#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from sys import stderr

#----------------------------------------------------------------------------------------------------------------------------------

class LogEntry(object):

    all_sections = (
        (
            'target',
            '[{}]'.format,
        ), (
            'fold',
            lambda fold: '[fold {}] '.format(fold),
        ), (
            'epoch',
            'epoch {:>3d}'.format,
        ), (
            'step',
            ' step {:>6d}'.format,
        ), (
            'loss',
            lambda terms: ' loss {:.4f} (ce {:.4f} + mae {:.4f})'.format(*terms),
        ), (
            'val_mae',
            ' val MAE {:.3f}'.format,
        ), (
            'elapsed',
            ' [{0:.2f}s]'.format,
        ),
    )

    all_section_keys = frozenset(key for key, _ in all_sections)

    def __init__(self, **parts):
        self.parts = parts

    def __setitem__(self, key, value):
        if key not in self.all_section_keys:
            raise KeyError(repr(key))
        self.parts[key] = value

    def pop(self, key, default):
        if key not in self.all_section_keys:
            raise KeyError(repr(key))
        return self.parts.pop(key, default)

    def clear(self):
        self.parts.clear()

#----------------------------------------------------------------------------------------------------------------------------------

class Logger(object):

    def flush(self, entry, end='\n'):
        raise NotImplementedError


class NullLogger(Logger):

    def flush(self, entry, end='\n'):
        entry.clear()


class DefaultLogger(Logger):

    def __init__(self, file_out=None):
        self.file_out = file_out

    def flush(self, entry, end='\n'):
        line = []
        for key, format in LogEntry.all_sections: # pylint: disable=redefined-builtin
            value = entry.pop(key, None)
            if value is not None:
                line.append(format(value))
        print("".join(line), end=end, file=self.file_out or stderr)


class RecordingLogger(Logger):
    """ Keeps the raw entries instead of printing them, for tests """

    def __init__(self):
        self.entries = []

    def flush(self, entry, end='\n'):
        self.entries.append(dict(entry.parts))
        entry.clear()


def pick_logger(kwargs):
    """ Pops the `logger` kwarg: absent means the stderr logger, None means silence """
    return kwargs.pop('logger', DefaultLogger()) or NullLogger()

#----------------------------------------------------------------------------------------------------------------------------------
