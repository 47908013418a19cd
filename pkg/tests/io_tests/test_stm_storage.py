#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import os

# 3rd parties
import numpy as np

# stmbp
from stmbp.datastructures import IstmTensor
from stmbp.exceptions import StmError
from stmbp.stm import build_stm, dump_stm, load_istm, load_stm

# tests
from .plumbing import TempDirTestCase

#----------------------------------------------------------------------------------------------------------------------------------

def sample_istm(T=10, seed=0): # pylint: disable=invalid-name
    # multiples of 1/4 are exact in float32
    values = np.random.RandomState(seed).randint(0, 1021, size=(4, T, 3)) / 4.0
    mask = np.zeros((4, T), dtype=bool)
    mask[2, 3:5] = True
    return IstmTensor(values, mask)


class StmStorageTests(TempDirTestCase):

    def test_istm_round_trip(self):
        istm = sample_istm()
        dump_stm(istm, self.temp_path('a.stm'))
        self.assertEqual(load_istm(self.temp_path('a.stm')), istm)

    def test_no_part_files_left_behind(self):
        dump_stm(sample_istm(), self.temp_path('a.stm'))
        self.assertEqual(sorted(os.listdir(self.temp_dir)), ['a.stm', 'a.stm.mask'])

    def test_header_layout(self):
        dump_stm(sample_istm(T=7), self.temp_path('a.stm'))
        data = self.read_bytes('a.stm')
        self.assertEqual(data[:13], b'\x04\x00\x00\x00\x07\x00\x00\x00\x03\x00\x00\x00\x00')
        self.assertEqual(len(data), 13 + 4 * 4 * 7 * 3)

    def test_normalized_stm_round_trip(self):
        stm = build_stm(sample_istm())
        dump_stm(stm, self.temp_path('b.stm'))
        loaded = load_stm(self.temp_path('b.stm'))
        self.assertTrue(loaded.normalized)
        np.testing.assert_allclose(loaded.values, stm.values, atol=1e-6)

    def test_normalized_file_is_not_an_istm(self):
        dump_stm(build_stm(sample_istm()), self.temp_path('b.stm'))
        with self.assertRaises(StmError):
            load_istm(self.temp_path('b.stm'))

    def test_truncated_file(self):
        dump_stm(sample_istm(), self.temp_path('a.stm'))
        self.write_file('a.stm', self.read_bytes('a.stm')[:-4])
        with self.assertRaises(StmError):
            load_istm(self.temp_path('a.stm'))

    def test_missing_mask_sidecar_means_unmasked(self):
        dump_stm(sample_istm(), self.temp_path('a.stm'))
        os.unlink(self.temp_path('a.stm.mask'))
        self.assertFalse(load_istm(self.temp_path('a.stm')).mask.any())

    def test_same_map_same_bytes(self):
        dump_stm(sample_istm(seed=4), self.temp_path('a.stm'))
        dump_stm(sample_istm(seed=4), self.temp_path('b.stm'))
        self.assertEqual(self.read_bytes('a.stm'), self.read_bytes('b.stm'))

#----------------------------------------------------------------------------------------------------------------------------------
