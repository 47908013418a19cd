#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# 3rd parties
import numpy as np

# stmbp
from .datastructures import N_CHANNELS, SliceBatch, StmTensor
from .exceptions import SliceError

#----------------------------------------------------------------------------------------------------------------------------------

def flatten_frame(stm, t):
    """
    Concatenates the channels of every ROI at frame t: [roi0.c0, roi0.c1, roi0.c2, roi1.c0, ...].
    """
    if not 0 <= t < stm.T:
        raise SliceError("Frame index %r out of range for a map of %d frames" % (t, stm.T))
    return stm.values[:, t, :].reshape(-1)


def flatten_stm(stm):
    """ All frame vectors at once, as a (T, n_roi * 3) matrix """
    return np.ascontiguousarray(stm.values.transpose(1, 0, 2)).reshape(stm.T, -1)


def unflatten_frames(matrix, n_roi, normalized=False, color_space='yuv'):
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != n_roi * N_CHANNELS:
        raise SliceError("Expected a (T, %d) matrix, got %r" % (n_roi * N_CHANNELS, matrix.shape))
    values = matrix.reshape(matrix.shape[0], n_roi, N_CHANNELS).transpose(1, 0, 2)
    return StmTensor(values, normalized=normalized, color_space=color_space)


def make_slices(stm, clip_length, sample_id=None, max_clips=None):
    """
    Cuts the map into M = floor(T / L) consecutive, non-overlapping clips of L frames. The T mod L trailing frames are dropped;
    so are any clips beyond `max_clips`.
    """
    if clip_length < 1:
        raise SliceError("Clip length must be positive, got %r" % (clip_length,))
    if stm.T < clip_length:
        raise SliceError("video shorter than clip length (%d < %d frames)%s" % (
            stm.T,
            clip_length,
            ' for %s' % sample_id if sample_id else '',
        ))
    n_clips = stm.T // clip_length
    if max_clips is not None:
        n_clips = min(n_clips, max_clips)
    frames = flatten_stm(stm)[:n_clips * clip_length]
    return SliceBatch(
        clips=frames.reshape(n_clips, clip_length, frames.shape[1]),
        clip_length=clip_length,
        sample_id=sample_id,
    )

#----------------------------------------------------------------------------------------------------------------------------------
