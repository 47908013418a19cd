#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import namedtuple
import csv
import io
import logging
from os import path

# 3rd parties
import numpy as np

# stmbp
from .estimator import FULL_FIT, Trainer, dump_checkpoint, load_checkpoint, predict, restore_estimator
from .evaluation import aggregate_folds, bland_altman, compute_metrics, write_bland_altman_csv, write_metrics_csv
from .sampler import make_folds
from .utils.files import ensure_dir
from .utils.seeding import derive_seed

#----------------------------------------------------------------------------------------------------------------------------------

TargetResult = namedtuple('TargetResult', (
    'target',
    'plan', # FoldPlan, or None for a full fit or an evaluation
    'reports', # per-fold MetricReports
    'pooled', # MetricReport over all folds
    'analysis', # BlandAltman over all validation predictions
    'checkpoint_paths',
))


def checkpoint_file_name(target, fold):
    return 'checkpoint.%s.%s.ckpt' % (target, 'fold%d' % fold if isinstance(fold, int) else fold)


def _values(store, sample_ids, target):
    return np.array([store.records[sample_id].value(target) for sample_id in sample_ids], dtype=np.float64)

#----------------------------------------------------------------------------------------------------------------------------------
# k-fold cross-validation

def cross_validate_target(store, config, target, output_dir, **kwargs):
    """
    Trains and validates one model per fold, checkpointing each, and pools the validation errors of all folds.
    """
    k = config.train.folds
    plan = make_folds(store.records.values(), target, k=k, seed=derive_seed(config.seed, 'folds', target))
    plan.dump(path.join(output_dir, 'folds.%s.tsv' % target), config.iter_items())
    reports, checkpoint_paths, loss_rows = [], [], []
    all_ids, all_preds = [], []
    for fold in range(k):
        logging.info('%s fold %d/%d: %d training, %d validation samples', target, fold + 1, k,
                     len(plan.training(fold)), len(plan.validation(fold)))
        trainer = Trainer(config, target, fold, **kwargs)
        history = trainer.fit(store, plan.training(fold), plan.training_groups(fold))
        loss_rows.extend((fold,) + tuple(record) for record in history)
        checkpoint_path = path.join(output_dir, checkpoint_file_name(target, fold))
        dump_checkpoint(trainer.model, checkpoint_path, config, target, fold)
        checkpoint_paths.append(checkpoint_path)
        validation_ids = plan.validation(fold)
        output = trainer.predict(store, validation_ids)
        report = compute_metrics(output.fused, _values(store, validation_ids, target), target, fold)
        logging.info('%r', report)
        reports.append(report)
        all_ids.extend(validation_ids)
        all_preds.extend(output.fused.tolist())
    pooled = aggregate_folds(reports, k)
    analysis = bland_altman(all_preds, _values(store, all_ids, target), all_ids)
    logging.info('%r', pooled)
    logging.info('%s %r', target, analysis)
    header_items = list(config.iter_items())
    write_loss_csv(path.join(output_dir, 'loss.%s.csv' % target), loss_rows, header_items)
    write_bland_altman_csv(path.join(output_dir, 'bland_altman.%s.csv' % target), analysis, header_items)
    return TargetResult(target, plan, reports, pooled, analysis, checkpoint_paths)


def cross_validate(store, config, output_dir, **kwargs):
    ensure_dir(output_dir)
    results = [
        cross_validate_target(store, config, target, output_dir, **kwargs)
        for target in config.targets
    ]
    write_metrics_csv(
        path.join(output_dir, 'metrics.csv'),
        [report for result in results for report in result.reports + [result.pooled]],
        config.iter_items(),
    )
    return results

#----------------------------------------------------------------------------------------------------------------------------------
# whole-dataset training, and scoring checkpoints on another dataset

def full_fit(store, config, output_dir, **kwargs):
    """ One model per target trained on every sample, e.g. for testing on another dataset """
    ensure_dir(output_dir)
    checkpoint_paths = []
    for target in config.targets:
        trainer = Trainer(config, target, FULL_FIT, **kwargs)
        history = trainer.fit(store, store.sample_ids)
        write_loss_csv(
            path.join(output_dir, 'loss.%s.csv' % target),
            [(FULL_FIT,) + tuple(record) for record in history],
            config.iter_items(),
        )
        checkpoint_path = path.join(output_dir, checkpoint_file_name(target, FULL_FIT))
        dump_checkpoint(trainer.model, checkpoint_path, config, target, FULL_FIT)
        checkpoint_paths.append(checkpoint_path)
    return checkpoint_paths


def evaluate_checkpoints(store, checkpoint_paths, output_dir, header_items=()):
    """
    Scores each checkpoint on every sample of the store. Each checkpoint is run with the config it was trained with.
    """
    ensure_dir(output_dir)
    reports = []
    for checkpoint_path in checkpoint_paths:
        checkpoint = load_checkpoint(checkpoint_path)
        model = restore_estimator(checkpoint)
        sample_ids = store.sample_ids
        output = predict(model, store, sample_ids, checkpoint.config, checkpoint.target)
        truths = _values(store, sample_ids, checkpoint.target)
        report = compute_metrics(output.fused, truths, checkpoint.target, checkpoint.fold)
        logging.info('%s: %r', path.basename(checkpoint_path), report)
        reports.append(report)
        items = [('checkpoint', path.basename(checkpoint_path))] + list(header_items)
        items.extend(('checkpoint.%s' % key, value) for key, value in checkpoint.config.iter_items())
        write_bland_altman_csv(
            path.join(output_dir, 'bland_altman.%s.%s.csv' % (checkpoint.target, checkpoint.fold)),
            bland_altman(output.fused, truths, sample_ids),
            items,
        )
    write_metrics_csv(path.join(output_dir, 'metrics.csv'), reports, header_items)
    return reports

#----------------------------------------------------------------------------------------------------------------------------------

def write_loss_csv(file_path, rows, header_items=()):
    with io.open(file_path, 'w', encoding='UTF-8', newline='') as file_out:
        for key, value in header_items:
            file_out.write('# %s=%s\n' % (key, value))
        writer = csv.writer(file_out, lineterminator='\n')
        writer.writerow(('fold', 'epoch', 'steps', 'total', 'classification', 'regression'))
        for fold, epoch, steps, total, classification, regression in rows:
            writer.writerow((fold, epoch, steps, repr(total), repr(classification), repr(regression)))

#----------------------------------------------------------------------------------------------------------------------------------
