#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import namedtuple

# 3rd parties
import torch
from torch.nn import functional

#----------------------------------------------------------------------------------------------------------------------------------
# fusion

def class_probabilities(class_logits):
    return torch.softmax(class_logits, dim=-1)


def fuse(class_probs, reg_value, config, target):
    """
    R = alpha * STA[argmax(class_probs)] + beta * reg_value, where STA are the per-class reference BP values of `target`
    """
    refs = torch.as_tensor(config.class_refs(target), dtype=reg_value.dtype, device=reg_value.device)
    return config.alpha * refs[class_probs.argmax(dim=-1)] + config.beta * reg_value

#----------------------------------------------------------------------------------------------------------------------------------
# joint loss

class LossTerms(namedtuple('LossTerms', (
        'total',
        'classification',
        'regression',
        ))):
    __slots__ = ()

    def values(self):
        return tuple(float(term.detach()) for term in self)


def group_indices(groups):
    """ 1-based BP groups to 0-based class indices """
    return torch.as_tensor(groups, dtype=torch.long) - 1


def joint_loss(class_logits, reg_value, truth_values, truth_groups):
    """
    Cross-entropy of the interval classifier plus absolute error of the value regressor, unweighted, each averaged over the
    batch.
    """
    truth_values = torch.as_tensor(truth_values, dtype=reg_value.dtype, device=reg_value.device)
    classification = functional.cross_entropy(class_logits, group_indices(truth_groups).to(class_logits.device))
    regression = torch.mean(torch.abs(reg_value - truth_values))
    return LossTerms(classification + regression, classification, regression)

#----------------------------------------------------------------------------------------------------------------------------------
