#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# 3rd parties
import numpy as np

# stmbp
from ..config import AugmentConfig
from ..datastructures import N_CHANNELS, N_ROI, IstmTensor, StmTensor
from ..exceptions import RoiError, StmError
from .rois import ROI_NAMES, rasterize

#----------------------------------------------------------------------------------------------------------------------------------
# constants

RGB_TO_YUV = np.array([
    [0.299, 0.587, 0.114],
    [-0.169, -0.331, 0.5],
    [0.5, -0.419, -0.081],
])

# Analytic range of each channel, used to map it onto [0, 1]. U and V rows of the matrix each sum to zero, with a positive part
# of 0.5, so for 8-bit inputs they span [-127.5, 127.5].
CHANNEL_RANGES = {
    'yuv': ((0.0, 255.0), (-127.5, 127.5), (-127.5, 127.5)),
    'rgb': ((0.0, 255.0), (0.0, 255.0), (0.0, 255.0)),
}

#----------------------------------------------------------------------------------------------------------------------------------
# ROI averaging

def compute_istm(frames, rois):
    """
    Averages each channel over the pixels of each ROI, frame by frame, giving the initial spatial-temporal map.
    """
    if len(rois) != frames.T:
        raise RoiError("ROI track has %d frames, video has %d" % (len(rois), frames.T))
    values = np.empty((N_ROI, frames.T, N_CHANNELS), dtype=np.float64)
    for t in range(frames.T):
        frame = np.asarray(frames.frames[t])
        for n, polygon in enumerate(rois[t]):
            try:
                rows, cols = rasterize(polygon, frames.H, frames.W)
            except RoiError as error:
                raise RoiError("ROI %s in frame %d: %s" % (ROI_NAMES[n], t, error), reason=error)
            if not len(rows):
                raise RoiError("ROI %s in frame %d covers zero pixels" % (ROI_NAMES[n], t))
            values[n, t] = frame[rows, cols].mean(axis=0, dtype=np.float64)
    return IstmTensor(values)

#----------------------------------------------------------------------------------------------------------------------------------
# augmentation

def random_mask(istm, config=AugmentConfig.DEFAULT, seed=0):
    """
    With probability `config.mask_probability`, zeroes one contiguous time span, no longer than
    `config.max_time_mask_fraction * T` frames, on between 1 and `config.max_roi_masked` ROIs. Otherwise returns the input
    unchanged. Same seed, same mask.
    """
    T = istm.T # pylint: disable=invalid-name
    max_span = int(np.floor(config.max_time_mask_fraction * T))
    if not config.enabled or config.max_roi_masked == 0 or max_span < 1 or config.mask_probability <= 0:
        return istm
    rng = np.random.RandomState(seed)
    if rng.random_sample() >= config.mask_probability:
        return istm
    span = rng.randint(1, max_span + 1)
    start = rng.randint(0, T - span + 1)
    n_masked = rng.randint(1, min(config.max_roi_masked, N_ROI) + 1)
    masked_rois = np.sort(rng.choice(N_ROI, size=n_masked, replace=False))
    values = istm.values.copy()
    mask = istm.mask.copy()
    for n in masked_rois:
        values[n, start:start + span, :] = config.mask_value
        mask[n, start:start + span] = True
    return IstmTensor(values, mask)

#----------------------------------------------------------------------------------------------------------------------------------
# colour spaces

def rgb_to_yuv(istm):
    values = np.einsum('ij,ntj->nti', RGB_TO_YUV, istm.values)
    return StmTensor(values, istm.mask.copy(), normalized=False, color_space='yuv')


def rgb_passthrough(istm):
    return StmTensor(istm.values.copy(), istm.mask.copy(), normalized=False, color_space='rgb')


def to_color_space(istm, color_space):
    if color_space == 'yuv':
        return rgb_to_yuv(istm)
    elif color_space == 'rgb':
        return rgb_passthrough(istm)
    else:
        raise StmError("Unknown colour space %r" % (color_space,))

#----------------------------------------------------------------------------------------------------------------------------------
# normalization

def normalize(stm):
    """
    Maps each channel from its analytic range onto [0, 1]. Masked cells are left at 0 in every channel.
    """
    if stm.normalized:
        raise StmError("STM is already normalized")
    low, span = _channel_affine(stm.color_space)
    values = (stm.values - low) / span
    values[stm.mask] = 0.0
    # guard against float error at the range endpoints
    values = np.clip(values, 0.0, 1.0)
    return StmTensor(values, stm.mask.copy(), normalized=True, color_space=stm.color_space)


def denormalize(stm):
    if not stm.normalized:
        raise StmError("STM is not normalized")
    low, span = _channel_affine(stm.color_space)
    values = stm.values * span + low
    values[stm.mask] = 0.0
    return StmTensor(values, stm.mask.copy(), normalized=False, color_space=stm.color_space)


def _channel_affine(color_space):
    if color_space not in CHANNEL_RANGES:
        raise StmError("Unknown colour space %r" % (color_space,))
    ranges = np.array(CHANNEL_RANGES[color_space])
    return ranges[:, 0], ranges[:, 1] - ranges[:, 0]

#----------------------------------------------------------------------------------------------------------------------------------

def build_stm(istm, config=AugmentConfig.DEFAULT, seed=None):
    """
    Runs the augmentation, colour and normalization stages on an ISTM. With `seed=None` no masking is applied, which is what
    validation and prediction want.
    """
    if seed is not None:
        istm = random_mask(istm, config, seed)
    return normalize(to_color_space(istm, config.color_space))

#----------------------------------------------------------------------------------------------------------------------------------
