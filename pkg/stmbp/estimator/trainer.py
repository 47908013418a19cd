#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import namedtuple
import logging
from time import time

# 3rd parties
import numpy as np
import torch

# stmbp
from ..datastructures import EstimatorOutput
from ..exceptions import NumericalFailure, SamplerError
from ..progress import LogEntry, pick_logger
from ..sampler import oversample_batches, standard_batches
from ..utils.seeding import derive_seed
from .network import BpEstimator
from .objective import class_probabilities, fuse, joint_loss

#----------------------------------------------------------------------------------------------------------------------------------

EpochLoss = namedtuple('EpochLoss', (
    'epoch',
    'steps', # total optimizer steps at the end of the epoch
    'total',
    'classification',
    'regression',
))

FULL_FIT = 'full'

#----------------------------------------------------------------------------------------------------------------------------------

class Trainer(object):
    """
    Trains one BpEstimator for one target. Everything random (initial weights, batch order, augmentation masks) is seeded from
    the run seed, the target and the fold, so that a rerun with the same config retraces the same loss trajectory.
    """

    def __init__(self, config, target, fold=FULL_FIT, **kwargs):
        self.config = config
        self.target = target
        self.fold = fold
        self.logger = pick_logger(kwargs)
        if kwargs:
            raise TypeError("Unknown kwargs: %s" % ', '.join(sorted(kwargs)))
        torch.manual_seed(derive_seed(config.seed, 'init', target, fold))
        self.model = BpEstimator(config.model, target)
        self.optimizer = torch.optim.SGD(
            self.model.parameters(),
            lr=config.train.learning_rate,
            momentum=config.train.momentum,
        )
        self.steps = 0
        self.history = []

    def train_step(self, clips, values, groups):
        self.model.train()
        self.optimizer.zero_grad()
        class_logits, reg_value = self.model(clips)
        terms = joint_loss(class_logits, reg_value, values, groups)
        if not torch.isfinite(terms.total):
            raise NumericalFailure(
                "Non-finite loss while training the %s model" % self.target,
                diagnostics={
                    'fold': self.fold,
                    'step': self.steps,
                    'classification': float(terms.classification.detach()),
                    'regression': float(terms.regression.detach()),
                    'learning_rate': self.config.train.learning_rate,
                },
            )
        terms.total.backward()
        self.optimizer.step()
        self.steps += 1
        return terms

    def epoch_batches(self, train_ids, train_groups, epoch):
        train = self.config.train
        seed = derive_seed(self.config.seed, 'batches', self.target, self.fold, epoch)
        if train.sampling == 'oversample':
            return oversample_batches(train_groups, train.batch_size, seed)
        return standard_batches(train_ids, train.batch_size, seed)

    def sampled_mean(self, store, train_ids, train_groups):
        """
        The mean target value of the batches the sampler draws: the plain training mean under standard sampling, the mean of
        the group means under oversampling, where every group weighs the same.
        """
        def mean_of(sample_ids):
            return float(np.mean([store.records[i].value(self.target) for i in sample_ids]))
        if self.config.train.sampling == 'oversample':
            return float(np.mean([mean_of(members) for members in train_groups.values() if members]))
        return mean_of(train_ids)

    def fit(self, store, train_ids, train_groups=None, validation_ids=()):
        """
        Runs `train.epochs` epochs (or stops early after `train.max_steps` steps) over the given training samples. When the
        groups aren't given they're read from the store's labels.
        """
        train_ids = tuple(train_ids)
        if not train_ids:
            raise SamplerError("No training samples for the %s model" % self.target)
        if train_groups is None:
            train_groups = _groups_of(store, train_ids, self.target)
        if self.config.model.regression_mode == 'absolute':
            self.model.set_regression_bias(self.sampled_mean(store, train_ids, train_groups))
        max_steps = self.config.train.max_steps
        for epoch in range(self.config.train.epochs):
            time_before = time()
            epoch_terms = []
            for batch_ids in self.epoch_batches(train_ids, train_groups, epoch):
                batch = store.batch(batch_ids, self.config, self.target, epoch=epoch)
                epoch_terms.append(self.train_step(batch.clips, batch.values, batch.groups).values())
                if max_steps and self.steps >= max_steps:
                    break
            record = EpochLoss(epoch, self.steps, *np.mean(epoch_terms, axis=0).tolist())
            self.history.append(record)
            self._log_epoch(record, store, validation_ids, time() - time_before)
            if max_steps and self.steps >= max_steps:
                logging.debug('%s fold %s: reached %d steps', self.target, self.fold, max_steps)
                break
        return self.history

    def _log_epoch(self, record, store, validation_ids, elapsed):
        entry = LogEntry(
            target=self.target,
            fold=self.fold,
            epoch=record.epoch,
            step=record.steps,
            loss=(record.total, record.classification, record.regression),
            elapsed=elapsed,
        )
        if validation_ids:
            output = self.predict(store, validation_ids)
            truths = np.array([store.records[i].value(self.target) for i in validation_ids])
            entry['val_mae'] = float(np.mean(np.abs(output.fused - truths)))
        self.logger.flush(entry)

    def predict(self, store, sample_ids):
        return predict(self.model, store, sample_ids, self.config, self.target)

#----------------------------------------------------------------------------------------------------------------------------------

def predict(model, store, sample_ids, config, target):
    """
    Runs the model in inference mode (no augmentation, batch-norm running statistics) and returns an EstimatorOutput of numpy
    arrays, one row per sample.
    """
    sample_ids = tuple(sample_ids)
    if not sample_ids:
        raise SamplerError("Nothing to predict")
    model.eval()
    logits, regs = [], []
    with torch.no_grad():
        for start in range(0, len(sample_ids), config.train.batch_size):
            batch = store.batch(sample_ids[start:start + config.train.batch_size], config, target)
            class_logits, reg_value = model(batch.clips)
            logits.append(class_logits)
            regs.append(reg_value)
        class_logits = torch.cat(logits)
        reg_value = torch.cat(regs)
        class_probs = class_probabilities(class_logits)
        fused = fuse(class_probs, reg_value, config.model, target)
    return EstimatorOutput(
        class_logits=class_logits.numpy().astype(np.float64),
        class_probs=class_probs.numpy().astype(np.float64),
        reg_value=reg_value.numpy().astype(np.float64),
        fused=fused.numpy().astype(np.float64),
    )


def _groups_of(store, sample_ids, target):
    groups = {}
    for sample_id in sample_ids:
        groups.setdefault(store.records[sample_id].group(target), []).append(sample_id)
    return groups

#----------------------------------------------------------------------------------------------------------------------------------
