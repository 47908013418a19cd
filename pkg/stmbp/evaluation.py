#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict, namedtuple
import csv
import io

# 3rd parties
import numpy as np

# stmbp
from .exceptions import DataError

#----------------------------------------------------------------------------------------------------------------------------------
# constants

AGGREGATE = 'aggregate'

LIMITS_OF_AGREEMENT_Z = 1.96

METRICS_NOTES = (
    'error = prediction - truth, in mmHg',
    'sd is the population (1/N) standard deviation of the error',
    'aggregate rows pool the per-sample errors of all folds, they are not averages of fold metrics',
)

#----------------------------------------------------------------------------------------------------------------------------------
# error metrics

class MetricReport(namedtuple('MetricReport', (
        'target',
        'fold', # fold index, or 'aggregate'
        'n',
        'sd',
        'rmse',
        'mae',
        'errors', # per-sample signed errors, kept so that folds can be pooled exactly
        ))):
    __slots__ = ()

    @classmethod
    def from_errors(cls, errors, target, fold):
        errors = np.asarray(errors, dtype=np.float64)
        if errors.ndim != 1 or not len(errors):
            raise DataError("Cannot compute metrics over an empty set")
        return cls(
            target=target,
            fold=fold,
            n=len(errors),
            sd=float(np.std(errors)),
            rmse=float(np.sqrt(np.mean(errors ** 2))),
            mae=float(np.mean(np.abs(errors))),
            errors=errors,
        )

    def __repr__(self):
        return 'MetricReport(%s, fold=%s, n=%d, sd=%.3f, rmse=%.3f, mae=%.3f)' % (
            self.target,
            self.fold,
            self.n,
            self.sd,
            self.rmse,
            self.mae,
        )


def _errors(preds, truths):
    preds = np.asarray(preds, dtype=np.float64).ravel()
    truths = np.asarray(truths, dtype=np.float64).ravel()
    if len(preds) != len(truths):
        raise DataError("Length mismatch: %d predictions for %d truths" % (len(preds), len(truths)))
    if not len(preds):
        raise DataError("Cannot compute metrics over an empty set")
    return preds - truths


def compute_metrics(preds, truths, target='SBP', fold=AGGREGATE):
    return MetricReport.from_errors(_errors(preds, truths), target, fold)


def aggregate_folds(reports, k=5):
    reports = list(reports)
    if len(reports) != k:
        raise DataError("Expected %d fold reports, got %d (missing folds)" % (k, len(reports)))
    targets = set(report.target for report in reports)
    if len(targets) != 1:
        raise DataError("Cannot pool reports of different targets: %s" % ', '.join(sorted(targets)))
    return MetricReport.from_errors(
        np.concatenate([report.errors for report in reports]),
        reports[0].target,
        AGGREGATE,
    )


def group_metrics(preds, truths, groups, target='SBP'):
    """ One report per BP group present, in group order """
    errors = _errors(preds, truths)
    groups = np.asarray(groups)
    return OrderedDict(
        (int(group), MetricReport.from_errors(errors[groups == group], target, 'G%d' % group))
        for group in np.unique(groups)
    )

#----------------------------------------------------------------------------------------------------------------------------------
# Bland-Altman agreement

BlandAltmanRecord = namedtuple('BlandAltmanRecord', (
    'sample_id',
    'mean',
    'diff',
))


class BlandAltman(object):

    def __init__(self, records):
        self.records = tuple(records)
        if len(self.records) < 2:
            raise DataError("Limits of agreement need at least 2 samples, got %d" % len(self.records))
        diffs = np.array([record.diff for record in self.records], dtype=np.float64)
        self.bias = float(np.mean(diffs))
        self.sd = float(np.std(diffs))
        self.lower = self.bias - LIMITS_OF_AGREEMENT_Z * self.sd
        self.upper = self.bias + LIMITS_OF_AGREEMENT_Z * self.sd

    @property
    def limits(self):
        return self.lower, self.upper

    def __repr__(self):
        return 'BlandAltman(n=%d, bias=%.3f, limits=(%.3f, %.3f))' % (len(self.records), self.bias, self.lower, self.upper)


def bland_altman(preds, truths, sample_ids=None):
    preds = np.asarray(preds, dtype=np.float64).ravel()
    truths = np.asarray(truths, dtype=np.float64).ravel()
    diffs = _errors(preds, truths)
    if sample_ids is None:
        sample_ids = ['%d' % i for i in range(len(diffs))]
    return BlandAltman(
        BlandAltmanRecord(sample_id, float(mean), float(diff))
        for sample_id, mean, diff in zip(sample_ids, (preds + truths) / 2.0, diffs)
    )

#----------------------------------------------------------------------------------------------------------------------------------
# CSV export

def _header_lines(notes, header_items):
    for note in notes:
        yield '# %s' % note
    for key, value in header_items:
        yield '# %s=%s' % (key, value)


def write_metrics_csv(file_path, reports, header_items=()):
    with io.open(file_path, 'w', encoding='UTF-8', newline='') as file_out:
        for line in _header_lines(METRICS_NOTES, header_items):
            file_out.write(line + '\n')
        writer = csv.writer(file_out, lineterminator='\n')
        writer.writerow(('target', 'fold', 'n', 'sd', 'rmse', 'mae'))
        for report in reports:
            writer.writerow((report.target, report.fold, report.n, repr(report.sd), repr(report.rmse), repr(report.mae)))


def write_bland_altman_csv(file_path, analysis, header_items=()):
    notes = ('mean = (prediction + truth) / 2, diff = prediction - truth, limits = bias -/+ 1.96 * population sd',)
    with io.open(file_path, 'w', encoding='UTF-8', newline='') as file_out:
        for line in _header_lines(notes, header_items):
            file_out.write(line + '\n')
        writer = csv.writer(file_out, lineterminator='\n')
        writer.writerow(('sample_id', 'mean', 'diff'))
        for record in analysis.records:
            writer.writerow((record.sample_id, repr(record.mean), repr(record.diff)))
        writer.writerow(('#bias', repr(analysis.bias), ''))
        writer.writerow(('#sd', repr(analysis.sd), ''))
        writer.writerow(('#lower_limit', repr(analysis.lower), ''))
        writer.writerow(('#upper_limit', repr(analysis.upper), ''))

#----------------------------------------------------------------------------------------------------------------------------------
