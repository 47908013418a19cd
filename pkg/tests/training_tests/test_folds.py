#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from unittest import TestCase

# stmbp
from stmbp.config import GroupConfig
from stmbp.exceptions import SamplerError
from stmbp.sampler import GROUPS, assign_group, make_folds

# tests
from ..io_tests.plumbing import TempDirTestCase
from .plumbing import counted_records

#----------------------------------------------------------------------------------------------------------------------------------

class GroupAssignmentTests(TestCase):

    def test_sbp_bounds(self):
        bounds = GroupConfig.DEFAULT.sbp_bounds
        self.assertEqual(
            [assign_group(bp, bounds) for bp in (95.0, 109.99, 110.0, 119.9, 120.0, 139.9, 140.0, 190.0)],
            [1, 1, 2, 2, 3, 3, 4, 4],
        )

    def test_dbp_bounds(self):
        bounds = GroupConfig.DEFAULT.dbp_bounds
        self.assertEqual([assign_group(bp, bounds) for bp in (69.0, 70.0, 80.0, 90.0)], [1, 2, 3, 4])


class FoldPlanTests(TestCase):

    def test_exact_split(self):
        plan = make_folds(counted_records((50, 25, 10, 40)), 'SBP', k=5, seed=0)
        for (group, _), count in plan.sizes().items():
            self.assertEqual(count, {1: 10, 2: 5, 3: 2, 4: 8}[group])

    def test_near_equal_split(self):
        plan = make_folds(counted_records((13, 7, 6, 9), target='DBP'), 'DBP', k=5, seed=2)
        sizes = plan.sizes()
        for group in GROUPS:
            counts = [sizes[group, c] for c in range(5)]
            self.assertLessEqual(max(counts) - min(counts), 1)

    def test_partition(self):
        records = counted_records((13, 7, 6, 9))
        plan = make_folds(records, 'SBP', k=5, seed=2)
        all_ids = sorted(record.sample_id for record in records)
        seen = []
        for fold in range(5):
            validation, training = set(plan.validation(fold)), set(plan.training(fold))
            self.assertFalse(validation & training)
            self.assertEqual(sorted(validation | training), all_ids)
            seen.extend(validation)
        self.assertEqual(sorted(seen), all_ids)

    def test_training_groups(self):
        plan = make_folds(counted_records((10, 5, 5, 5)), 'SBP', k=5, seed=0)
        members = plan.training_groups(1)
        self.assertEqual([len(members[group]) for group in GROUPS], [8, 4, 4, 4])
        for group, sample_ids in members.items():
            for sample_id in sample_ids:
                self.assertEqual(plan.group_of(sample_id), group)

    def test_reproducible(self):
        records = counted_records((13, 7, 6, 9))
        self.assertEqual(make_folds(records, 'SBP', k=5, seed=8), make_folds(records, 'SBP', k=5, seed=8))

    def test_k_too_small(self):
        with self.assertRaises(SamplerError):
            make_folds(counted_records((5, 5, 5, 5)), 'SBP', k=1)

    def test_group_smaller_than_k(self):
        with self.assertRaises(SamplerError) as context:
            make_folds(counted_records((10, 10, 3, 10)), 'SBP', k=5)
        self.assertIn('G3', str(context.exception))


class FoldPlanDumpTests(TempDirTestCase):

    def test_dump(self):
        plan = make_folds(counted_records((2, 2, 2, 2)), 'SBP', k=2, seed=0)
        plan.dump(self.temp_path('folds.tsv'))
        lines = self.read_bytes('folds.tsv').decode('UTF-8').splitlines()
        self.assertEqual(lines[0], '# target=SBP k=2')
        self.assertEqual(len(lines), 10)
        sample_id, group, small_group = lines[2].split('\t')
        self.assertEqual((sample_id, group), ('G1-00', 'G1'))
        self.assertIn(small_group, ('0', '1'))

    def test_dump_with_run_config(self):
        plan = make_folds(counted_records((2, 2, 2, 2)), 'SBP', k=2, seed=0)
        plan.dump(self.temp_path('folds.tsv'), [('seed', 7), ('train.folds', 2)])
        lines = self.read_bytes('folds.tsv').decode('UTF-8').splitlines()
        self.assertEqual(lines[:4], ['# target=SBP k=2', '# seed=7', '# train.folds=2', '# sample_id\tgroup\tsmall_group'])
        self.assertEqual(len(lines), 12)

#----------------------------------------------------------------------------------------------------------------------------------
