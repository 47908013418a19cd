#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Blood-pressure groups, cross-validation folds and balanced batches.

Each target (SBP, DBP) is split into four big groups G1..G4 by three thresholds. For k-fold cross-validation every big group
is divided into k near-equal small groups; fold c validates on small group c of every big group and trains on the rest. Training
batches then draw the same number of samples from each big group, walking through each group in order and starting over
(reshuffled) when a small group runs out, so that the rare BP ranges are seen as often as the common ones.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict
from math import ceil

# 3rd parties
import numpy as np
from sklearn.model_selection import StratifiedKFold

# stmbp
from .exceptions import SamplerError

#----------------------------------------------------------------------------------------------------------------------------------
# constants

GROUPS = (1, 2, 3, 4)

#----------------------------------------------------------------------------------------------------------------------------------
# grouping

def assign_group(bp, bounds):
    """
    Half-open intervals: (-inf, b1) -> 1, [b1, b2) -> 2, [b2, b3) -> 3, [b3, inf) -> 4
    """
    return int(np.searchsorted(np.asarray(bounds, dtype=np.float64), bp, side='right')) + 1


def group_members(records, target):
    members = OrderedDict((group, []) for group in GROUPS)
    for record in records:
        members[record.group(target)].append(record.sample_id)
    return members

#----------------------------------------------------------------------------------------------------------------------------------
# folds

class FoldPlan(object):

    def __init__(self, target, k, assignments):
        self.target = target
        self.k = k
        # sample_id -> (big group, small group / fold index)
        self.assignments = OrderedDict(assignments)

    def validation(self, fold):
        return tuple(sample_id for sample_id, (_, c) in self.assignments.items() if c == fold)

    def training(self, fold):
        return tuple(sample_id for sample_id, (_, c) in self.assignments.items() if c != fold)

    def training_groups(self, fold):
        members = OrderedDict((group, []) for group in GROUPS)
        for sample_id, (group, c) in self.assignments.items():
            if c != fold:
                members[group].append(sample_id)
        return members

    def group_of(self, sample_id):
        return self.assignments[sample_id][0]

    def sizes(self):
        """ Returns {(group, fold): count} """
        counts = OrderedDict(((group, c), 0) for group in GROUPS for c in range(self.k))
        for group, c in self.assignments.values():
            counts[group, c] += 1
        return counts

    def dump_lines(self, header_items=()):
        yield '# target=%s k=%d' % (self.target, self.k)
        for key, value in header_items:
            yield '# %s=%s' % (key, value)
        yield '# sample_id\tgroup\tsmall_group'
        for sample_id, (group, c) in self.assignments.items():
            yield '%s\tG%d\t%d' % (sample_id, group, c)

    def dump(self, file_path, header_items=()):
        with open(file_path, 'wb') as file_out:
            file_out.write(''.join(line + '\n' for line in self.dump_lines(header_items)).encode('UTF-8'))

    def __eq__(self, other):
        return (
            isinstance(other, FoldPlan)
            and (self.target, self.k) == (other.target, other.k)
            and list(self.assignments.items()) == list(other.assignments.items())
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'FoldPlan(%s, k=%d, %d samples)' % (self.target, self.k, len(self.assignments))


def make_folds(records, target, k=5, seed=0):
    if k < 2:
        raise SamplerError("k must be >=2, got %r (a single fold leaves nothing to train on)" % (k,))
    records = list(records)
    for group, sample_ids in group_members(records, target).items():
        if len(sample_ids) < k:
            raise SamplerError("%s group G%d has %d members, fewer than the %d folds" % (target, group, len(sample_ids), k))
    groups = np.array([record.group(target) for record in records])
    small_groups = np.empty(len(records), dtype=int)
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    for fold, (_, validation_indices) in enumerate(splitter.split(np.zeros(len(records)), groups)):
        small_groups[validation_indices] = fold
    return FoldPlan(
        target,
        k,
        (
            (record.sample_id, (int(group), int(c)))
            for record, group, c in zip(records, groups, small_groups)
        ),
    )

#----------------------------------------------------------------------------------------------------------------------------------
# batches

class OversamplingIterator(object):
    """
    Iterates over one epoch of batches, each holding exactly batch_size/4 samples from every group (G1's first, then G2's...).
    Groups are consumed in order through their own cursor; a group that runs out starts over from a reshuffled copy of itself.
    The epoch ends once the largest group has been consumed once.

    If the largest group's size isn't a multiple of batch_size/4, its last batch tops up from its own reshuffled start too.
    """

    def __init__(self, train_groups, batch_size, seed=0):
        if batch_size < 4 or batch_size % 4:
            raise SamplerError("Batch size must be a positive multiple of 4, got %r" % (batch_size,))
        self.groups = OrderedDict((group, tuple(train_groups.get(group, ()))) for group in GROUPS)
        empty = [group for group, members in self.groups.items() if not members]
        if empty:
            raise SamplerError("Cannot oversample: group(s) %s empty" % ', '.join('G%d' % group for group in empty))
        self.batch_size = batch_size
        self.quota = batch_size // 4
        self.seed = seed
        self.n_batches = int(ceil(max(len(members) for members in self.groups.values()) / self.quota))
        self.wrap_counts = OrderedDict((group, 0) for group in GROUPS)

    def __len__(self):
        return self.n_batches

    def __iter__(self):
        rng = np.random.RandomState(self.seed)
        orders = OrderedDict((group, list(members)) for group, members in self.groups.items())
        cursors = OrderedDict((group, 0) for group in GROUPS)
        self.wrap_counts = OrderedDict((group, 0) for group in GROUPS)
        for _ in range(self.n_batches):
            batch = []
            for group, members in self.groups.items():
                for _ in range(self.quota):
                    if cursors[group] == len(orders[group]):
                        orders[group] = [members[i] for i in rng.permutation(len(members))]
                        cursors[group] = 0
                        self.wrap_counts[group] += 1
                    batch.append(orders[group][cursors[group]])
                    cursors[group] += 1
            yield tuple(batch)


def oversample_batches(train_groups, batch_size, seed=0):
    return OversamplingIterator(train_groups, batch_size, seed)


def standard_batches(sample_ids, batch_size, seed=0):
    """
    Plain sampling, for comparison with the oversampler: one shuffled pass over the training set, the last batch possibly short.
    """
    if batch_size < 1:
        raise SamplerError("Batch size must be positive, got %r" % (batch_size,))
    sample_ids = tuple(sample_ids)
    if not sample_ids:
        raise SamplerError("No training samples")
    order = np.random.RandomState(seed).permutation(len(sample_ids))
    return [
        tuple(sample_ids[i] for i in order[start:start + batch_size])
        for start in range(0, len(order), batch_size)
    ]

#----------------------------------------------------------------------------------------------------------------------------------
