#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The BP estimator network. Each of the M clips of a sample (an L x 12 matrix: L frames, 4 ROIs x 3 channels) is read as a
one-channel image by a residual CNN whose weights are shared by all clips. The clip embeddings then go through a recurrent
layer that runs across the clips, and the per-clip outputs are concatenated into the feature vector F.

From F a linear head produces 4 BP-interval logits, and a second linear head reads F concatenated with those logits to produce
a BP value in mmHg.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# 3rd parties
import torch
from torch import nn

# stmbp
from ..config import ModelConfig
from ..datastructures import N_CHANNELS, N_ROI
from ..exceptions import SliceError

#----------------------------------------------------------------------------------------------------------------------------------
# backbone

class ResidualBlock(nn.Module):

    def __init__(self, in_channels, out_channels):
        super(ResidualBlock, self).__init__()
        self.conv1 = nn.Conv2d(in_channels, out_channels, kernel_size=3, stride=1, padding=1, bias=False)
        self.bn1 = nn.BatchNorm2d(out_channels)
        self.conv2 = nn.Conv2d(out_channels, out_channels, kernel_size=3, stride=1, padding=1, bias=False)
        self.bn2 = nn.BatchNorm2d(out_channels)
        if in_channels == out_channels:
            self.shortcut = nn.Identity()
        else:
            self.shortcut = nn.Sequential(
                nn.Conv2d(in_channels, out_channels, kernel_size=1, bias=False),
                nn.BatchNorm2d(out_channels),
            )
        self.relu = nn.ReLU()

    def forward(self, x): # pylint: disable=arguments-differ
        out = self.relu(self.bn1(self.conv1(x)))
        out = self.bn2(self.conv2(out))
        return self.relu(out + self.shortcut(x))


class ClipBackbone(nn.Module):
    """
    Stem convolution, then one stage of residual blocks per entry in `stage_channels`. Between stages a (2, 1) max-pool halves
    the time axis, for as long as there are at least 2 time steps left; the ROI/channel axis is never pooled.
    """

    def __init__(self, stage_channels, blocks_per_stage, clip_length):
        super(ClipBackbone, self).__init__()
        self.stem = nn.Sequential(
            nn.Conv2d(1, stage_channels[0], kernel_size=3, stride=1, padding=1, bias=False),
            nn.BatchNorm2d(stage_channels[0]),
            nn.ReLU(),
        )
        layers = []
        in_channels = stage_channels[0]
        length = clip_length
        for stage, out_channels in enumerate(stage_channels):
            if stage > 0 and length >= 2:
                layers.append(nn.MaxPool2d(kernel_size=(2, 1)))
                length //= 2
            for _ in range(blocks_per_stage):
                layers.append(ResidualBlock(in_channels, out_channels))
                in_channels = out_channels
        self.stages = nn.Sequential(*layers)
        self.pool = nn.AdaptiveAvgPool2d(1)
        self.out_channels = in_channels

    def forward(self, x): # pylint: disable=arguments-differ
        return torch.flatten(self.pool(self.stages(self.stem(x))), 1)

#----------------------------------------------------------------------------------------------------------------------------------
# the estimator

class BpEstimator(nn.Module):

    def __init__(self, config=ModelConfig.DEFAULT, target='SBP'):
        super(BpEstimator, self).__init__()
        self.config = config
        self.target = target
        self.backbone = ClipBackbone(config.stage_channels, config.blocks_per_stage, config.clip_length)
        if config.recurrent:
            self.recurrent = nn.LSTM(
                input_size=self.backbone.out_channels,
                hidden_size=config.hidden_size,
                batch_first=True,
                bidirectional=config.bidirectional,
            )
        else:
            self.recurrent = None
        self.classifier = nn.Linear(config.feature_size, config.n_classes)
        self.regressor = nn.Linear(config.feature_size + config.n_classes, 1)
        self.register_buffer('class_refs', torch.tensor(config.class_refs(target), dtype=torch.float32))

    @property
    def input_shape(self):
        return (self.config.n_clips, self.config.clip_length, N_ROI * N_CHANNELS)

    def check_input(self, clips):
        if clips.dim() != 4 or tuple(clips.shape[1:]) != self.input_shape:
            raise SliceError("Expected clips of shape (batch, %d, %d, %d), got %r" % (
                self.input_shape + (tuple(clips.shape),)
            ))

    def embed_clips(self, clips):
        """ (B, M, L, 12) -> (B, M, E), the same backbone weights applied to every clip """
        self.check_input(clips)
        batch_size, n_clips, clip_length, width = clips.shape
        if self.config.center_clips:
            clips = clips - clips.mean(dim=2, keepdim=True)
        embeddings = self.backbone(clips.reshape(batch_size * n_clips, 1, clip_length, width))
        return embeddings.reshape(batch_size, n_clips, -1)

    def feature_extract(self, clips):
        """ (B, M, L, 12) -> F, (B, M * hidden_out) """
        embeddings = self.embed_clips(clips)
        if self.recurrent is not None:
            embeddings, _ = self.recurrent(embeddings)
        return embeddings.reshape(embeddings.shape[0], -1)

    def classify(self, features):
        return self.classifier(features)

    def regress(self, features, class_logits):
        value = self.regressor(torch.cat((features, class_logits), dim=1)).squeeze(1)
        if self.config.regression_mode == 'residual':
            value = value + self.class_refs.to(value.dtype)[class_logits.argmax(dim=1)]
        return value

    def forward(self, clips): # pylint: disable=arguments-differ
        features = self.feature_extract(clips)
        class_logits = self.classify(features)
        return class_logits, self.regress(features, class_logits)

    def set_regression_bias(self, value):
        with torch.no_grad():
            self.regressor.bias.fill_(value)

#----------------------------------------------------------------------------------------------------------------------------------
