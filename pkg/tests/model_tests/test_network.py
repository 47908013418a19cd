#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from unittest import TestCase

# 3rd parties
import torch

# stmbp
from stmbp.config import ModelConfig
from stmbp.estimator import BpEstimator, class_probabilities
from stmbp.exceptions import SliceError

# tests
from .plumbing import random_clips, tiny_model_config

#----------------------------------------------------------------------------------------------------------------------------------

class FeatureExtractTests(TestCase):

    def setUp(self):
        torch.manual_seed(0)

    def test_feature_length(self):
        config = tiny_model_config(hidden_size=32)
        model = BpEstimator(config)
        self.assertEqual(config.hidden_out, 64)
        self.assertEqual(tuple(model.feature_extract(random_clips(2, config)).shape), (2, 192))

    def test_default_config_feature_length(self):
        model = BpEstimator(ModelConfig.DEFAULT)
        self.assertEqual(model.classifier.in_features, 3 * 64)

    def test_without_recurrence(self):
        config = tiny_model_config(recurrent=False)
        model = BpEstimator(config)
        self.assertIsNone(model.recurrent)
        self.assertEqual(tuple(model.feature_extract(random_clips(2, config)).shape), (2, 3 * 6))

    def test_unidirectional(self):
        config = tiny_model_config(bidirectional=False)
        self.assertEqual(tuple(BpEstimator(config).feature_extract(random_clips(1, config)).shape), (1, 3 * 5))

    def test_swapping_clips_swaps_embeddings(self):
        config = tiny_model_config()
        model = BpEstimator(config).eval()
        clips = random_clips(2, config)
        swapped = clips[:, [1, 0, 2]]
        with torch.no_grad():
            embeddings = model.embed_clips(clips)
            swapped_embeddings = model.embed_clips(swapped)
        self.assertFalse(torch.allclose(embeddings[:, 0], embeddings[:, 1]))
        self.assertTrue(torch.allclose(swapped_embeddings, embeddings[:, [1, 0, 2]], atol=1e-6))

    def test_zero_input_is_deterministic(self):
        config = tiny_model_config()
        model = BpEstimator(config).eval()
        for module in model.modules():
            if isinstance(module, torch.nn.Linear):
                torch.nn.init.zeros_(module.bias)
        clips = torch.zeros((1,) + model.input_shape)
        with torch.no_grad():
            first = model(clips)
            second = model(clips)
        self.assertTrue(torch.equal(first[0], second[0]))
        self.assertTrue(torch.equal(first[1], second[1]))

    def test_shape_mismatch(self):
        model = BpEstimator(tiny_model_config())
        with self.assertRaises(SliceError):
            model.feature_extract(torch.zeros((1, 3, 15, 12)))
        with self.assertRaises(SliceError):
            model.feature_extract(torch.zeros((1, 2, 16, 12)))

    def test_centering_ignores_constant_offsets(self):
        config = tiny_model_config()
        model = BpEstimator(config).eval()
        clips = random_clips(1, config)
        with torch.no_grad():
            self.assertTrue(torch.allclose(model.embed_clips(clips), model.embed_clips(clips + 0.3), atol=1e-5))


class HeadTests(TestCase):

    def setUp(self):
        torch.manual_seed(0)
        self.config = tiny_model_config()
        self.model = BpEstimator(self.config)

    def test_classify_is_pure(self):
        features = torch.randn(3, self.config.feature_size)
        self.assertTrue(torch.equal(self.model.classify(features), self.model.classify(features)))
        self.assertEqual(tuple(self.model.classify(features).shape), (3, 4))

    def test_uniform_logits(self):
        probs = class_probabilities(torch.zeros(1, 4))
        self.assertTrue(torch.allclose(probs, torch.full((1, 4), 0.25)))

    def test_argmax(self):
        self.assertEqual(int(class_probabilities(torch.tensor([[10.0, 0.0, 0.0, 0.0]])).argmax()), 0)

    def test_regressor_reads_features_and_logits(self):
        self.assertEqual(self.model.regressor.in_features, self.config.feature_size + 4)

    def test_zero_weights_give_bias(self):
        torch.nn.init.zeros_(self.model.regressor.weight)
        self.model.set_regression_bias(117.5)
        value = self.model.regress(torch.randn(2, self.config.feature_size), torch.randn(2, 4))
        self.assertTrue(torch.equal(value, torch.full((2,), 117.5)))

    def test_logits_reach_the_regressor(self):
        features = torch.randn(1, self.config.feature_size)
        logits = torch.randn(1, 4, requires_grad=True)
        self.model.regress(features, logits).sum().backward()
        self.assertGreater(float(logits.grad.abs().sum()), 0.0)

    def test_residual_mode_adds_class_reference(self):
        model = BpEstimator(tiny_model_config(regression_mode='residual'), 'DBP')
        torch.nn.init.zeros_(model.regressor.weight)
        model.set_regression_bias(0.0)
        logits = torch.tensor([[0.0, 0.0, 5.0, 0.0], [9.0, 0.0, 0.0, 0.0]])
        value = model.regress(torch.zeros(2, model.config.feature_size), logits)
        self.assertTrue(torch.equal(value, torch.tensor([85.0, 65.0])))

    def test_forward(self):
        logits, value = self.model(random_clips(4, self.config))
        self.assertEqual(tuple(logits.shape), (4, 4))
        self.assertEqual(tuple(value.shape), (4,))

#----------------------------------------------------------------------------------------------------------------------------------
