#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict, namedtuple

# 3rd parties
import numpy as np

# stmbp
from .exceptions import FrameError, LandmarkError, ManifestError, StmError
from .sampler import assign_group

#----------------------------------------------------------------------------------------------------------------------------------
# constants

N_ROI = 4
N_CHANNELS = 3
N_LANDMARKS = 68

#----------------------------------------------------------------------------------------------------------------------------------
# dataset manifests

ManifestEntry = namedtuple('ManifestEntry', (
    'sample_id',
    'frames_path',
    'landmarks_path', # '-' when frames_path names a prepared .stm file
    'sbp',
    'dbp',
))


class Manifest(object):

    def __init__(self, entries=()):
        self.entries = tuple(entries)
        self._by_id = OrderedDict()
        for entry in self.entries:
            if entry.sample_id in self._by_id:
                raise ManifestError("Duplicate sample_id %r" % (entry.sample_id,))
            self._by_id[entry.sample_id] = entry

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, sample_id):
        return self._by_id[sample_id]

    def __contains__(self, sample_id):
        return sample_id in self._by_id

    def __eq__(self, other):
        return isinstance(other, Manifest) and self.entries == other.entries

    def __ne__(self, other):
        return not self == other

    @property
    def sample_ids(self):
        return tuple(self._by_id)

    def __repr__(self):
        return 'Manifest(%d entries)' % len(self.entries)

#----------------------------------------------------------------------------------------------------------------------------------
# labels

class BpRecord(namedtuple('BpRecord', (
        'sample_id',
        'sbp',
        'dbp',
        'sbp_group',
        'dbp_group',
        ))):
    __slots__ = ()

    @classmethod
    def build(cls, sample_id, sbp, dbp, groups):
        return cls(
            sample_id=sample_id,
            sbp=float(sbp),
            dbp=float(dbp),
            sbp_group=assign_group(sbp, groups.sbp_bounds),
            dbp_group=assign_group(dbp, groups.dbp_bounds),
        )

    def value(self, target):
        return self.sbp if target == 'SBP' else self.dbp

    def group(self, target):
        return self.sbp_group if target == 'SBP' else self.dbp_group

#----------------------------------------------------------------------------------------------------------------------------------
# raw inputs

class FrameSequence(object):

    def __init__(self, frames, fps):
        frames = np.asarray(frames) if not isinstance(frames, np.ndarray) else frames
        if frames.ndim != 4 or frames.shape[-1] != N_CHANNELS:
            raise FrameError("Expected frames of shape (T, H, W, 3), got %r" % (frames.shape,))
        if frames.shape[0] < 1:
            raise FrameError("Frame sequence is empty")
        if frames.dtype != np.uint8:
            raise FrameError("Expected 8-bit frames, got %s" % (frames.dtype,))
        if not fps > 0:
            raise FrameError("fps must be positive, got %r" % (fps,))
        self.frames = frames
        self.fps = float(fps)

    @property
    def T(self): # pylint: disable=invalid-name
        return self.frames.shape[0]

    @property
    def H(self): # pylint: disable=invalid-name
        return self.frames.shape[1]

    @property
    def W(self): # pylint: disable=invalid-name
        return self.frames.shape[2]

    def __len__(self):
        return self.T

    def __repr__(self):
        return 'FrameSequence(T=%d, H=%d, W=%d, fps=%g)' % (self.T, self.H, self.W, self.fps)


class LandmarkTrack(object):

    def __init__(self, points):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 3 or points.shape[1:] != (N_LANDMARKS, 2):
            raise LandmarkError("Expected landmarks of shape (T, 68, 2), got %r" % (points.shape,))
        if not np.all(np.isfinite(points)):
            raise LandmarkError("Landmark track contains non-finite coordinates")
        self.points = points

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, t):
        return self.points[t]

    def check_bounds(self, height, width):
        x, y = self.points[..., 0], self.points[..., 1]
        outside = (x < 0) | (x > width) | (y < 0) | (y > height)
        if outside.any():
            t, point = np.argwhere(outside)[0]
            raise LandmarkError("Landmark %d of frame %d lies outside the %dx%d frame" % (point, t, width, height))

    def translated(self, dx, dy):
        return LandmarkTrack(self.points + np.array([dx, dy], dtype=np.float64))

#----------------------------------------------------------------------------------------------------------------------------------
# spatial-temporal maps

class IstmTensor(object):
    """
    Initial spatial-temporal map: per-ROI, per-frame RGB channel means, shape (n_roi, T, 3), on the 8-bit intensity scale. The
    `mask` marks cells that augmentation has zeroed.
    """

    def __init__(self, values, mask=None):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 3 or values.shape[0] != N_ROI or values.shape[2] != N_CHANNELS:
            raise StmError("Expected an ISTM of shape (%d, T, %d), got %r" % (N_ROI, N_CHANNELS, values.shape))
        if values.shape[1] < 1:
            raise StmError("ISTM has no frames")
        if not np.all(np.isfinite(values)) or values.min() < 0 or values.max() > 255:
            raise StmError("ISTM values must lie in [0, 255]")
        self.values = values
        self.mask = _checked_mask(mask, values.shape[:2])

    @property
    def T(self): # pylint: disable=invalid-name
        return self.values.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, IstmTensor)
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.mask, other.mask)
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'IstmTensor(T=%d, masked=%d)' % (self.T, int(self.mask.sum()))


class StmTensor(object):
    """
    Spatial-temporal map after colour transformation, shape (n_roi, T, 3), channels in `color_space` order ('yuv' or 'rgb').
    """

    def __init__(self, values, mask=None, normalized=False, color_space='yuv'):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 3 or values.shape[2] != N_CHANNELS:
            raise StmError("Expected an STM of shape (n_roi, T, %d), got %r" % (N_CHANNELS, values.shape))
        if not np.all(np.isfinite(values)):
            raise StmError("STM contains non-finite values")
        if normalized and (values.min() < 0 or values.max() > 1):
            raise StmError("Normalized STM values must lie in [0, 1]")
        self.values = values
        self.mask = _checked_mask(mask, values.shape[:2])
        self.normalized = bool(normalized)
        self.color_space = color_space

    @property
    def n_roi(self):
        return self.values.shape[0]

    @property
    def T(self): # pylint: disable=invalid-name
        return self.values.shape[1]

    def __repr__(self):
        return 'StmTensor(n_roi=%d, T=%d, %s%s)' % (
            self.n_roi,
            self.T,
            self.color_space,
            ', normalized' if self.normalized else '',
        )


def _checked_mask(mask, shape):
    if mask is None:
        return np.zeros(shape, dtype=bool)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != shape:
        raise StmError("Mask shape %r does not match map shape %r" % (mask.shape, shape))
    return mask

#----------------------------------------------------------------------------------------------------------------------------------
# model inputs and outputs

class SliceBatch(namedtuple('SliceBatch', (
        'clips', # ndarray (M, L, n_roi * 3)
        'clip_length',
        'sample_id',
        ))):
    __slots__ = ()

    @property
    def n_clips(self):
        return self.clips.shape[0]


EstimatorOutput = namedtuple('EstimatorOutput', (
    'class_logits',
    'class_probs',
    'reg_value',
    'fused',
))

#----------------------------------------------------------------------------------------------------------------------------------
