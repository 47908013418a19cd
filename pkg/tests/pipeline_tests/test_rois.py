#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from unittest import TestCase

# 3rd parties
import numpy as np

# stmbp
from stmbp.exceptions import DegenerateRoi, RoiError
from stmbp.stm import RoiSet, define_rois, polygon_area, rasterize

# tests
from .plumbing import FOREHEAD_PIXELS, face_landmarks, face_track

#----------------------------------------------------------------------------------------------------------------------------------

class DefineRoisTests(TestCase):

    def test_four_quadrilaterals(self):
        self.assertEqual(define_rois(face_landmarks()).shape, (4, 4, 2))

    def test_forehead_extends_away_from_the_eyes(self):
        forehead = define_rois(face_landmarks())[0]
        np.testing.assert_allclose(forehead, [(30, 40), (70, 40), (70, 34), (30, 34)], atol=1e-12)

    def test_cheeks_and_chin_lie_below_the_eyes(self):
        rois = define_rois(face_landmarks())
        for polygon in rois[1:]:
            self.assertTrue((polygon[:, 1] >= 50).all())

    def test_translating_landmarks_translates_polygons(self):
        shifted = define_rois(face_landmarks(dx=7, dy=-3))
        np.testing.assert_allclose(shifted, define_rois(face_landmarks()) + np.array([7, -3]), atol=1e-9)

    def test_coincident_brows_are_degenerate(self):
        points = face_landmarks()
        points[26] = points[17]
        with self.assertRaises(DegenerateRoi) as cm:
            define_rois(points, frame_index=4)
        self.assertEqual(str(cm.exception), 'degenerate ROI: forehead in frame 4')

    def test_collapsed_cheek_is_degenerate(self):
        points = face_landmarks()
        # chin on the nose wings: cheeks and chin band have no height
        points[8] = (50.0, 62.0)
        with self.assertRaises(DegenerateRoi) as cm:
            define_rois(points)
        self.assertIn('degenerate ROI: left_cheek', str(cm.exception))

    def test_wrong_landmark_count(self):
        with self.assertRaises(RoiError):
            define_rois(np.zeros((5, 2)))

    def test_roi_set_from_track(self):
        rois = RoiSet.from_track(face_track(6))
        self.assertEqual(len(rois), 6)
        self.assertEqual(rois.polygons.shape, (6, 4, 4, 2))

    def test_translated_track_translates_every_frame(self):
        track = face_track(3)
        shifted = RoiSet.from_track(track.translated(10, 10))
        np.testing.assert_allclose(shifted.polygons, RoiSet.from_track(track).polygons + 10.0, atol=1e-9)
        np.testing.assert_array_equal(track.points, face_track(3).points)


class RasterizeTests(TestCase):

    def test_forehead_pixel_count(self):
        rows, cols = rasterize(define_rois(face_landmarks())[0], 100, 100)
        self.assertEqual(len(rows), FOREHEAD_PIXELS)
        self.assertEqual((rows.min(), rows.max(), cols.min(), cols.max()), (34, 39, 30, 69))

    def test_pixel_centre_rule(self):
        # the triangle covers the centre of pixel (0, 0) but not that of (1, 1)
        rows, cols = rasterize(np.array([(0.0, 0.0), (1.2, 0.0), (0.0, 1.2)]), 4, 4)
        self.assertEqual(list(zip(rows, cols)), [(0, 0)])

    def test_polygon_outside_frame(self):
        with self.assertRaises(RoiError):
            rasterize(np.array([(90.0, 90.0), (110.0, 90.0), (110.0, 95.0)]), 100, 100)

    def test_area(self):
        self.assertAlmostEqual(polygon_area(np.array([(0, 0), (4, 0), (4, 3), (0, 3)], dtype=float)), 12.0)

#----------------------------------------------------------------------------------------------------------------------------------
