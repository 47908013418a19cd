#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Glue between the on-disk dataset and the estimator: turns manifest entries into ISTMs, and ISTMs into batches of clip tensors.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict, namedtuple
import logging

# 3rd parties
import numpy as np
import torch

# stmbp
from .config import GroupConfig
from .dataset_io import DEFAULT_FPS, NO_LANDMARKS, load_frames, load_landmarks
from .datastructures import BpRecord
from .exceptions import ManifestError, SliceError
from .slicer import make_slices
from .stm import RoiSet, build_stm, compute_istm, load_istm
from .utils.seeding import derive_seed

#----------------------------------------------------------------------------------------------------------------------------------
# single samples

def prepare_sample(entry, fps=DEFAULT_FPS):
    """
    Frames + landmarks -> ISTM. Entries that point at an already prepared .stm file are just loaded.
    """
    if entry.landmarks_path == NO_LANDMARKS:
        return load_istm(entry.frames_path)
    frames = load_frames(entry.frames_path, fps=fps)
    track = load_landmarks(entry.landmarks_path, frames.T)
    track.check_bounds(frames.H, frames.W)
    return compute_istm(frames, RoiSet.from_track(track))

#----------------------------------------------------------------------------------------------------------------------------------
# the in-memory dataset

Batch = namedtuple('Batch', (
    'sample_ids',
    'clips', # float32 tensor (B, M, L, 12)
    'values', # float64 ndarray (B,), mmHg
    'groups', # int ndarray (B,), 1..4
))


class SampleStore(object):

    def __init__(self, istms, records=()):
        """ With no records at all the store is unlabeled, which is only good for predictions """
        self.istms = OrderedDict(istms)
        self.records = OrderedDict((record.sample_id, record) for record in records)
        if not self.records:
            return
        missing = [sample_id for sample_id in self.istms if sample_id not in self.records]
        if missing or len(self.records) != len(self.istms):
            raise ManifestError("ISTMs and labels don't match up (e.g. %r)" % (
                (missing or sorted(set(self.records) - set(self.istms)))[0],
            ))

    @classmethod
    def from_manifest(cls, manifest, groups=GroupConfig.DEFAULT, fps=DEFAULT_FPS):
        istms = OrderedDict()
        for entry in manifest:
            logging.debug('Loading %s', entry.sample_id)
            istms[entry.sample_id] = prepare_sample(entry, fps=fps)
        return cls(
            istms,
            (BpRecord.build(entry.sample_id, entry.sbp, entry.dbp, groups) for entry in manifest),
        )

    @property
    def sample_ids(self):
        return tuple(self.istms)

    def __len__(self):
        return len(self.istms)

    def slices(self, sample_id, config, seed=None):
        """
        The clips of one sample, as the model sees them. `seed` drives the random masking; None means no masking.
        """
        stm = build_stm(self.istms[sample_id], config.augment, seed)
        batch = make_slices(stm, config.model.clip_length, sample_id=sample_id, max_clips=config.model.n_clips)
        if batch.n_clips < config.model.n_clips:
            raise SliceError("%s: %d frames make %d clips of %d, the model needs %d" % (
                sample_id,
                stm.T,
                batch.n_clips,
                config.model.clip_length,
                config.model.n_clips,
            ))
        return batch

    def batch(self, sample_ids, config, target, epoch=None):
        """
        Stacks the clips of the given samples. When `epoch` is given the samples are augmented, each with its own seed derived
        from the run seed, the sample id and the epoch, so a sample gets the same mask whatever batch it lands in.
        """
        clips = [
            self.slices(
                sample_id,
                config,
                seed=None if epoch is None else derive_seed(config.seed, sample_id, epoch),
            ).clips
            for sample_id in sample_ids
        ]
        clips = torch.from_numpy(np.stack(clips).astype(np.float32))
        if not self.records:
            return Batch(tuple(sample_ids), clips, None, None)
        records = [self.records[sample_id] for sample_id in sample_ids]
        return Batch(
            sample_ids=tuple(sample_ids),
            clips=clips,
            values=np.array([record.value(target) for record in records], dtype=np.float64),
            groups=np.array([record.group(target) for record in records], dtype=int),
        )

#----------------------------------------------------------------------------------------------------------------------------------
