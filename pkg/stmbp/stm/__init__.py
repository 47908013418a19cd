#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# stmbp
from .maps import (
    CHANNEL_RANGES, RGB_TO_YUV, build_stm, compute_istm, denormalize, normalize, random_mask, rgb_passthrough, rgb_to_yuv,
    to_color_space,
)
from .rois import ANCHORS, ROI_NAMES, RoiSet, define_rois, polygon_area, rasterize
from .storage import dump_stm, load_istm, load_stm

#----------------------------------------------------------------------------------------------------------------------------------
