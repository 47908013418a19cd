#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# stmbp
from .checkpoint import Checkpoint, decode_checkpoint, dump_checkpoint, encode_checkpoint, load_checkpoint, restore_estimator
from .network import BpEstimator, ClipBackbone, ResidualBlock
from .objective import LossTerms, class_probabilities, fuse, joint_loss
from .trainer import FULL_FIT, EpochLoss, Trainer, predict

#----------------------------------------------------------------------------------------------------------------------------------
