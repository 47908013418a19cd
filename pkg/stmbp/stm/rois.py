#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Regions of interest on the face, built from 7 anchor points of the 68-point landmark scheme (0-based iBUG indexing):

    17, 26  outer ends of the right and left eyebrows
    36, 45  outer corners of the right and left eyes
    31, 35  right and left nose wings
    8       chin

The 68-point scheme has no forehead points, so the forehead is a rectangle standing on the brow segment 17-26, extruded away
from the eyes by 0.6 times the eye-to-brow distance. With `d` the vector from the midpoint of the nose wings to the chin, the
cheeks are the parallelograms spanned by eye corner, nose wing and the same two points shifted by d/2, and the fourth region is
a band across the chin, between 0.75d and 0.95d below the nose wings.

Every vertex is an affine combination of landmarks, so the construction is translation (and rotation) equivariant.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# 3rd parties
from matplotlib.path import Path
import numpy as np

# stmbp
from ..datastructures import N_LANDMARKS, N_ROI
from ..exceptions import DegenerateRoi, RoiError

#----------------------------------------------------------------------------------------------------------------------------------
# constants

RIGHT_BROW_OUTER = 17
LEFT_BROW_OUTER = 26
RIGHT_EYE_OUTER = 36
LEFT_EYE_OUTER = 45
RIGHT_NOSE_WING = 31
LEFT_NOSE_WING = 35
CHIN = 8

ANCHORS = (RIGHT_BROW_OUTER, LEFT_BROW_OUTER, RIGHT_EYE_OUTER, LEFT_EYE_OUTER, RIGHT_NOSE_WING, LEFT_NOSE_WING, CHIN)

ROI_NAMES = ('forehead', 'left_cheek', 'right_cheek', 'chin_band')

FOREHEAD_HEIGHT_RATIO = 0.6
CHEEK_DEPTH = 0.5
CHIN_BAND = (0.75, 0.95)

MIN_POLYGON_AREA = 1e-6

#----------------------------------------------------------------------------------------------------------------------------------

class RoiSet(object):
    """
    Per-frame ROI polygons, an array of shape (T, n_roi, n_vertices, 2) in pixel coordinates.
    """

    def __init__(self, polygons):
        polygons = np.asarray(polygons, dtype=np.float64)
        if polygons.ndim != 4 or polygons.shape[1] != N_ROI or polygons.shape[2] < 3 or polygons.shape[3] != 2:
            raise RoiError("Expected polygons of shape (T, %d, >=3, 2), got %r" % (N_ROI, polygons.shape))
        self.polygons = polygons

    def __len__(self):
        return self.polygons.shape[0]

    def __getitem__(self, t):
        return self.polygons[t]

    @classmethod
    def from_track(cls, track):
        return cls(np.stack([
            define_rois(track[t], frame_index=t)
            for t in range(len(track))
        ]))

#----------------------------------------------------------------------------------------------------------------------------------

def define_rois(landmarks, frame_index=None):
    """
    Takes the 68 (x, y) landmarks of one frame and returns the 4 ROI polygons as an array of shape (4, 4, 2).
    """
    points = np.asarray(landmarks, dtype=np.float64)
    if points.shape != (N_LANDMARKS, 2):
        raise RoiError("Expected 68 landmarks, got shape %r" % (points.shape,))
    brow_r, brow_l = points[RIGHT_BROW_OUTER], points[LEFT_BROW_OUTER]
    eye_r, eye_l = points[RIGHT_EYE_OUTER], points[LEFT_EYE_OUTER]
    wing_r, wing_l = points[RIGHT_NOSE_WING], points[LEFT_NOSE_WING]
    chin = points[CHIN]

    # forehead
    brow = brow_l - brow_r
    brow_length = np.hypot(*brow)
    if brow_length == 0:
        raise DegenerateRoi(_degenerate_message('forehead', frame_index))
    normal = np.array([brow[1], -brow[0]]) / brow_length
    eye_offsets = np.array([np.dot(eye_r - brow_r, normal), np.dot(eye_l - brow_r, normal)])
    if np.mean(eye_offsets) > 0:
        # make the normal point away from the eyes
        normal, eye_offsets = -normal, -eye_offsets
    height = FOREHEAD_HEIGHT_RATIO * np.mean(np.abs(eye_offsets))
    forehead = np.array([brow_r, brow_l, brow_l + height * normal, brow_r + height * normal])

    # cheeks and chin
    down = chin - (wing_r + wing_l) / 2.0
    left_cheek = np.array([eye_r, wing_r, wing_r + CHEEK_DEPTH * down, eye_r + CHEEK_DEPTH * down])
    right_cheek = np.array([eye_l, wing_l, wing_l + CHEEK_DEPTH * down, eye_l + CHEEK_DEPTH * down])
    top, bottom = CHIN_BAND
    chin_band = np.array([wing_r + top * down, wing_l + top * down, wing_l + bottom * down, wing_r + bottom * down])

    polygons = np.stack([forehead, left_cheek, right_cheek, chin_band])
    for name, polygon in zip(ROI_NAMES, polygons):
        if polygon_area(polygon) < MIN_POLYGON_AREA:
            raise DegenerateRoi(_degenerate_message(name, frame_index))
    return polygons


def _degenerate_message(roi_name, frame_index):
    if frame_index is None:
        return "degenerate ROI: %s" % roi_name
    return "degenerate ROI: %s in frame %d" % (roi_name, frame_index)


def polygon_area(polygon):
    x, y = polygon[:, 0], polygon[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

#----------------------------------------------------------------------------------------------------------------------------------
# rasterization

def rasterize(polygon, height, width):
    """
    Returns the (rows, cols) index arrays of the pixels whose centre lies inside the polygon. Pixel (col i, row j) covers
    [i, i+1) x [j, j+1), so its centre is (i + 0.5, j + 0.5).
    """
    polygon = np.asarray(polygon, dtype=np.float64)
    x_min, y_min = np.floor(polygon.min(axis=0)).astype(int)
    x_max, y_max = np.ceil(polygon.max(axis=0)).astype(int)
    if x_min < 0 or y_min < 0 or x_max > width or y_max > height:
        raise RoiError("ROI polygon extends outside the %dx%d frame" % (width, height))
    cols, rows = np.meshgrid(np.arange(x_min, x_max), np.arange(y_min, y_max))
    cols, rows = cols.ravel(), rows.ravel()
    if not len(cols):
        return rows, cols
    inside = Path(polygon).contains_points(np.column_stack((cols + 0.5, rows + 0.5)))
    return rows[inside], cols[inside]

#----------------------------------------------------------------------------------------------------------------------------------
