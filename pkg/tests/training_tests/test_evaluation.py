#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import csv
from math import sqrt
from unittest import TestCase

# 3rd parties
import numpy as np

# stmbp
from stmbp.evaluation import (
    AGGREGATE,
    aggregate_folds,
    bland_altman,
    compute_metrics,
    group_metrics,
    write_bland_altman_csv,
    write_metrics_csv,
)
from stmbp.exceptions import DataError

# tests
from ..io_tests.plumbing import TempDirTestCase

#----------------------------------------------------------------------------------------------------------------------------------

class MetricsTests(TestCase):

    def test_small_example(self):
        report = compute_metrics([2.0, 2.0, 5.0], [1.0, 2.0, 3.0], 'SBP', 0)
        self.assertEqual(report.n, 3)
        self.assertAlmostEqual(report.mae, 1.0)
        self.assertAlmostEqual(report.rmse, sqrt(5.0 / 3.0))
        self.assertAlmostEqual(report.sd, sqrt(2.0 / 3.0))
        self.assertEqual(report.fold, 0)

    def test_perfect(self):
        report = compute_metrics([120.0, 80.0], [120.0, 80.0])
        self.assertEqual((report.sd, report.rmse, report.mae), (0.0, 0.0, 0.0))
        self.assertEqual(report.fold, AGGREGATE)

    def test_constant_offset(self):
        report = compute_metrics(np.arange(10.0) + 4.0, np.arange(10.0))
        self.assertAlmostEqual(report.sd, 0.0)
        self.assertAlmostEqual(report.mae, 4.0)
        self.assertAlmostEqual(report.rmse, 4.0)

    def test_rmse_bounds(self):
        rng = np.random.RandomState(1)
        truths = rng.uniform(90, 150, size=50)
        report = compute_metrics(truths + rng.normal(2.0, 6.0, size=50), truths)
        self.assertLessEqual(report.mae, report.rmse + 1e-12)
        self.assertLessEqual(report.sd, report.rmse + 1e-12)

    def test_errors(self):
        with self.assertRaises(DataError):
            compute_metrics([], [])
        with self.assertRaises(DataError):
            compute_metrics([1.0, 2.0], [1.0])

    def test_pooling_is_exact(self):
        rng = np.random.RandomState(4)
        truths = rng.uniform(60, 100, size=23)
        preds = truths + rng.normal(0.0, 5.0, size=23)
        splits = np.array_split(np.arange(23), 5)
        reports = [compute_metrics(preds[indices], truths[indices], 'DBP', fold) for fold, indices in enumerate(splits)]
        pooled = aggregate_folds(reports, k=5)
        whole = compute_metrics(preds, truths, 'DBP')
        self.assertEqual(pooled.n, 23)
        self.assertAlmostEqual(pooled.mae, whole.mae, places=12)
        self.assertAlmostEqual(pooled.rmse, whole.rmse, places=12)
        self.assertAlmostEqual(pooled.sd, whole.sd, places=12)
        self.assertNotAlmostEqual(pooled.sd, np.mean([report.sd for report in reports]), places=6)

    def test_missing_fold(self):
        reports = [compute_metrics([1.0], [0.0], 'SBP', fold) for fold in range(4)]
        with self.assertRaises(DataError) as context:
            aggregate_folds(reports, k=5)
        self.assertIn('missing', str(context.exception))

    def test_mixed_targets(self):
        reports = [compute_metrics([1.0], [0.0], 'SBP', 0), compute_metrics([1.0], [0.0], 'DBP', 1)]
        with self.assertRaises(DataError):
            aggregate_folds(reports, k=2)

    def test_group_metrics(self):
        reports = group_metrics([100.0, 104.0, 150.0], [101.0, 101.0, 147.0], [1, 1, 4])
        self.assertEqual(list(reports), [1, 4])
        self.assertAlmostEqual(reports[1].mae, 2.0)
        self.assertEqual(reports[4].fold, 'G4')
        self.assertEqual(reports[4].n, 1)


class BlandAltmanTests(TestCase):

    def test_small_example(self):
        analysis = bland_altman([2.0, 2.0, 5.0], [1.0, 2.0, 3.0], ['a', 'b', 'c'])
        self.assertAlmostEqual(analysis.bias, 1.0)
        self.assertAlmostEqual(analysis.sd, sqrt(2.0 / 3.0))
        self.assertAlmostEqual(analysis.lower, -0.600, places=3)
        self.assertAlmostEqual(analysis.upper, 2.600, places=3)
        self.assertEqual([record.mean for record in analysis.records], [1.5, 2.0, 4.0])
        self.assertEqual([record.diff for record in analysis.records], [1.0, 0.0, 2.0])
        self.assertEqual(analysis.records[2].sample_id, 'c')

    def test_default_ids(self):
        analysis = bland_altman([1.0, 2.0], [1.0, 1.0])
        self.assertEqual([record.sample_id for record in analysis.records], ['0', '1'])

    def test_needs_two_samples(self):
        with self.assertRaises(DataError):
            bland_altman([1.0], [1.0])

#----------------------------------------------------------------------------------------------------------------------------------

def data_rows(file_path):
    with open(file_path) as file_in:
        return list(csv.reader(line for line in file_in if not line.startswith('# ')))


class CsvExportTests(TempDirTestCase):

    def test_metrics_csv(self):
        reports = [compute_metrics([2.0, 2.0, 5.0], [1.0, 2.0, 3.0], 'SBP', 0)]
        file_path = self.temp_path('metrics.csv')
        write_metrics_csv(file_path, reports, [('seed', 7)])
        text = self.read_bytes('metrics.csv').decode('UTF-8')
        self.assertIn('# seed=7\n', text)
        self.assertIn('population', text)
        rows = data_rows(file_path)
        self.assertEqual(rows[0], ['target', 'fold', 'n', 'sd', 'rmse', 'mae'])
        self.assertEqual(rows[1][:3], ['SBP', '0', '3'])
        self.assertEqual(float(rows[1][5]), 1.0)
        self.assertAlmostEqual(float(rows[1][4]), sqrt(5.0 / 3.0), places=12)

    def test_bland_altman_csv(self):
        file_path = self.temp_path('bland_altman.csv')
        write_bland_altman_csv(file_path, bland_altman([2.0, 2.0, 5.0], [1.0, 2.0, 3.0], ['a', 'b', 'c']))
        rows = data_rows(file_path)
        self.assertEqual(rows[0], ['sample_id', 'mean', 'diff'])
        self.assertEqual(rows[1], ['a', '1.5', '1.0'])
        summary = dict((row[0], float(row[1])) for row in rows if row[0].startswith('#'))
        self.assertEqual(summary['#bias'], 1.0)
        self.assertAlmostEqual(summary['#lower_limit'], 1.0 - 1.96 * sqrt(2.0 / 3.0), places=12)

#----------------------------------------------------------------------------------------------------------------------------------
