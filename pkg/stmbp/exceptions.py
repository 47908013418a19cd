#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

#----------------------------------------------------------------------------------------------------------------------------------
# exception classes

class StmbpException(Exception):

    exit_code = 1

    def __init__(self, message=None, reason=None):
        super(StmbpException, self).__init__(message)
        self.reason = reason # a chain link to a further exception, where applicable

#----------------------------------------------------------------------------------------------------------------------------------
# bad inputs: exit code 1

class DataError(StmbpException):
    exit_code = 1


class ManifestError(DataError):
    pass


class LandmarkError(DataError):
    pass


class FrameError(DataError):
    pass


class RoiError(DataError):
    pass


class DegenerateRoi(RoiError):
    pass


class StmError(DataError):
    pass


class SliceError(DataError):
    pass


class SamplerError(DataError):
    pass


class CheckpointError(DataError):

    def __init__(self, message=None, offset=None, reason=None):
        if offset is not None:
            message = '%s (at byte offset %d)' % (message, offset)
        super(CheckpointError, self).__init__(message, reason)
        self.offset = offset

#----------------------------------------------------------------------------------------------------------------------------------
# bad settings: exit code 2

class ConfigError(StmbpException):
    exit_code = 2

#----------------------------------------------------------------------------------------------------------------------------------
# training blew up: exit code 3

class NumericalFailure(StmbpException):
    exit_code = 3

    def __init__(self, message=None, diagnostics=None, reason=None):
        super(NumericalFailure, self).__init__(message, reason)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self):
        text = super(NumericalFailure, self).__str__()
        if self.diagnostics:
            text += ' [%s]' % ', '.join('%s=%s' % item for item in sorted(self.diagnostics.items()))
        return text

#----------------------------------------------------------------------------------------------------------------------------------
