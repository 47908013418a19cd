#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# stmbp
from .config import (
    AugmentConfig, GroupConfig, ModelConfig, PRESETS, RunConfig, SynthSpec, TARGETS, TrainConfig,
)
from .crossval import cross_validate, evaluate_checkpoints, full_fit
from .dataset_io import dump_manifest, load_frames, load_landmarks, load_manifest
from .datastructures import (
    BpRecord, EstimatorOutput, FrameSequence, IstmTensor, LandmarkTrack, Manifest, ManifestEntry, SliceBatch, StmTensor,
)
from .estimator import BpEstimator, Trainer, fuse, joint_loss, load_checkpoint, restore_estimator
from .evaluation import MetricReport, aggregate_folds, bland_altman, compute_metrics
from .exceptions import (
    CheckpointError, ConfigError, DataError, DegenerateRoi, FrameError, LandmarkError, ManifestError, NumericalFailure, RoiError,
    SamplerError, SliceError, StmError, StmbpException,
)
from .pipeline import SampleStore, prepare_sample
from .sampler import FoldPlan, assign_group, make_folds, oversample_batches, standard_batches
from .slicer import flatten_frame, make_slices
from .stm import build_stm, compute_istm, define_rois, normalize, random_mask, rgb_to_yuv
from .synthetic import dominant_frequency, generate
from .tally import Tally
from .version import STMBP_VERSION

#----------------------------------------------------------------------------------------------------------------------------------
