#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from math import log
from unittest import TestCase

# 3rd parties
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays
import numpy as np
import torch

# stmbp
from stmbp.config import ModelConfig
from stmbp.estimator import class_probabilities, fuse, joint_loss

#----------------------------------------------------------------------------------------------------------------------------------

def one_hot_probs(index):
    probs = torch.zeros(1, 4)
    probs[0, index] = 1.0
    return probs


class FuseTests(TestCase):

    def test_classifier_only(self):
        config = ModelConfig.DEFAULT._replace(alpha=1.0, beta=0.0)
        self.assertEqual(float(fuse(one_hot_probs(2), torch.tensor([99.0]), config, 'SBP')), 130.0)

    def test_regressor_only(self):
        config = ModelConfig.DEFAULT._replace(alpha=0.0, beta=1.0)
        self.assertAlmostEqual(float(fuse(one_hot_probs(0), torch.tensor([118.2], dtype=torch.float64), config, 'SBP')), 118.2)

    def test_even_mix(self):
        self.assertEqual(float(fuse(one_hot_probs(2), torch.tensor([120.0]), ModelConfig.DEFAULT, 'SBP')), 125.0)

    def test_dbp_references(self):
        self.assertEqual(float(fuse(one_hot_probs(3), torch.tensor([90.0]), ModelConfig.DEFAULT, 'DBP')), 92.5)

    @given(st.floats(40, 250), st.floats(0.1, 50))
    def test_monotone_in_regression_value(self, value, delta):
        probs = class_probabilities(torch.tensor([[0.3, 1.2, -0.4, 0.0]], dtype=torch.float64))
        low = fuse(probs, torch.tensor([value], dtype=torch.float64), ModelConfig.DEFAULT, 'SBP')
        high = fuse(probs, torch.tensor([value + delta], dtype=torch.float64), ModelConfig.DEFAULT, 'SBP')
        self.assertGreater(float(high), float(low))


class SoftmaxTests(TestCase):

    @given(arrays(np.float64, 4, elements=st.floats(-30, 30)), st.floats(-100, 100))
    def test_probabilities(self, logits, shift):
        probs = class_probabilities(torch.from_numpy(logits))
        shifted = class_probabilities(torch.from_numpy(logits + shift))
        self.assertAlmostEqual(float(probs.sum()), 1.0, delta=1e-6)
        self.assertTrue(bool(((probs >= 0) & (probs <= 1)).all()))
        self.assertTrue(torch.allclose(probs, shifted, atol=1e-6, rtol=0))


class JointLossTests(TestCase):

    def test_uniform_logits(self):
        terms = joint_loss(torch.zeros(1, 4), torch.tensor([120.0]), [120.0], [2])
        self.assertAlmostEqual(float(terms.classification), log(4), places=6)
        self.assertAlmostEqual(float(terms.regression), 0.0)

    def test_perfect_prediction(self):
        terms = joint_loss(torch.tensor([[0.0, 0.0, 40.0, 0.0]]), torch.tensor([131.0]), [131.0], [3])
        self.assertLess(float(terms.total), 1e-6)

    def test_regression_off_by_five(self):
        terms = joint_loss(torch.tensor([[0.0, 0.0, 40.0, 0.0]]), torch.tensor([136.0]), [131.0], [3])
        self.assertAlmostEqual(float(terms.total), 5.0, places=5)

    def test_terms_add_up(self):
        generator = torch.Generator().manual_seed(3)
        logits = torch.randn((8, 4), generator=generator)
        values = torch.randn(8, generator=generator) * 10 + 120
        truths = np.linspace(100, 150, 8)
        groups = [1, 1, 2, 2, 3, 3, 4, 4]
        terms = joint_loss(logits, values, truths, groups)
        self.assertEqual(float(terms.total), float(terms.classification + terms.regression))
        expected_ce = float(torch.nn.functional.cross_entropy(logits, torch.tensor(groups) - 1))
        expected_mae = float(torch.mean(torch.abs(values - torch.tensor(truths, dtype=torch.float32))))
        self.assertAlmostEqual(float(terms.classification), expected_ce, places=6)
        self.assertAlmostEqual(float(terms.regression), expected_mae, places=4)

    def test_batch_mean(self):
        terms = joint_loss(torch.zeros(2, 4), torch.tensor([110.0, 100.0]), [100.0, 100.0], [1, 1])
        self.assertAlmostEqual(float(terms.regression), 5.0)

#----------------------------------------------------------------------------------------------------------------------------------
