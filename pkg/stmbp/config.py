#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import namedtuple
from math import log

# stmbp
from .exceptions import ConfigError

#----------------------------------------------------------------------------------------------------------------------------------
# default values, one dict per section

TARGETS = ('SBP', 'DBP')

# Generous physiological envelope, in mmHg. Labels outside it are taken to be corrupt.
BP_MIN = 40.0
BP_MAX = 250.0

_AUGMENT_DEFAULTS = {
    'color_space': 'yuv',
    'enabled': True,
    'mask_probability': 0.5,
    'mask_value': 0.0,
    'max_roi_masked': 1,
    'max_time_mask_fraction': 0.1,
}

_MODEL_DEFAULTS = {
    'alpha': 0.5,
    'beta': 0.5,
    'bidirectional': True,
    'blocks_per_stage': 1,
    'center_clips': True,
    'clip_length': 150,
    'dbp_class_refs': (65.0, 75.0, 85.0, 95.0),
    'hidden_size': 32,
    'n_classes': 4,
    'n_clips': 3,
    'recurrent': True,
    'regression_mode': 'absolute',
    'sbp_class_refs': (100.0, 115.0, 130.0, 150.0),
    'stage_channels': (16, 16, 32, 32),
}

_GROUP_DEFAULTS = {
    'dbp_bounds': (70.0, 80.0, 90.0),
    'sbp_bounds': (110.0, 120.0, 140.0),
}

_TRAIN_DEFAULTS = {
    'batch_size': 8,
    'epochs': 30,
    'folds': 5,
    'learning_rate': 1e-3,
    'max_steps': 0,
    'momentum': 0.9,
    'sampling': 'oversample',
    'workers': 1,
}

_SYNTH_DEFAULTS = {
    'amplitude_range': (1.0, 4.0),
    'dbp_law': (39.2, 26.0, 4.0, 25.0),
    'fps': 30.0,
    'frequency_range': (0.8, 2.0),
    'frequency_skew': 1.0,
    'lag_range': (0.0, 0.1),
    'n_frames': 450,
    'n_samples': 100,
    'noise_sd': 0.5,
    'sbp_law': (51.6, 48.0, 6.0, 40.0),
    'seed': 0,
}

PRESETS = {
    'desk': {},
    'tiny': {
        'model.stage_channels': (8, 8, 8, 8),
        'model.hidden_size': 16,
        'train.batch_size': 8,
    },
    'resnet18': {
        'model.stage_channels': (64, 128, 256, 512),
        'model.blocks_per_stage': 2,
        'model.hidden_size': 256,
    },
}

#----------------------------------------------------------------------------------------------------------------------------------
# section classes

def _from_kwargs(cls, kwargs, defaults=None, consume_all_kwargs_for=None):
    if defaults is None:
        defaults = cls.DEFAULT
    config = {
        key: kwargs.pop(key, getattr(defaults, key))
        for key in cls._fields
    }
    if consume_all_kwargs_for and kwargs:
        raise TypeError("Unknown kwargs for %r: %s" % (
            consume_all_kwargs_for,
            ', '.join(sorted(kwargs)),
        ))
    return cls(**config)


def _config_base(name, defaults):
    base = namedtuple(name, sorted(defaults.keys()))
    base.from_kwargs = classmethod(_from_kwargs)
    return base


class AugmentConfig(_config_base('AugmentConfig', _AUGMENT_DEFAULTS)):
    __slots__ = ()

    def validate(self):
        for key in ('mask_probability', 'max_time_mask_fraction'):
            value = getattr(self, key)
            if not 0.0 <= value <= 1.0:
                raise ConfigError("augment.%s must be in [0,1], got %r" % (key, value))
        if not 0 <= self.max_roi_masked <= 3:
            raise ConfigError("augment.max_roi_masked must be in [0,3], got %r" % (self.max_roi_masked,))
        if self.color_space not in ('yuv', 'rgb'):
            raise ConfigError("augment.color_space must be 'yuv' or 'rgb', got %r" % (self.color_space,))
        return self


class ModelConfig(_config_base('ModelConfig', _MODEL_DEFAULTS)):
    __slots__ = ()

    def class_refs(self, target):
        return self.sbp_class_refs if target == 'SBP' else self.dbp_class_refs

    @property
    def hidden_out(self):
        if not self.recurrent:
            return self.stage_channels[-1]
        return self.hidden_size * (2 if self.bidirectional else 1)

    @property
    def feature_size(self):
        return self.n_clips * self.hidden_out

    def validate(self):
        if self.alpha < 0 or self.beta < 0 or abs(self.alpha + self.beta - 1.0) > 1e-9:
            raise ConfigError("model.alpha and model.beta must be non-negative and sum to 1, got %r + %r" % (
                self.alpha,
                self.beta,
            ))
        if self.n_classes != 4:
            raise ConfigError("model.n_classes must be 4, got %r" % (self.n_classes,))
        for key in ('sbp_class_refs', 'dbp_class_refs'):
            refs = getattr(self, key)
            if len(refs) != self.n_classes or any(a >= b for a, b in zip(refs, refs[1:])):
                raise ConfigError("model.%s must be %d strictly increasing values, got %r" % (key, self.n_classes, refs))
        if self.clip_length < 1 or self.n_clips < 1:
            raise ConfigError("model.clip_length and model.n_clips must be positive")
        if not self.stage_channels or min(self.stage_channels) < 1 or self.blocks_per_stage < 1:
            raise ConfigError("model.stage_channels and model.blocks_per_stage must be positive")
        if self.hidden_size < 1:
            raise ConfigError("model.hidden_size must be positive")
        if self.regression_mode not in ('absolute', 'residual'):
            raise ConfigError("model.regression_mode must be 'absolute' or 'residual', got %r" % (self.regression_mode,))
        return self


class GroupConfig(_config_base('GroupConfig', _GROUP_DEFAULTS)):
    __slots__ = ()

    def bounds(self, target):
        return self.sbp_bounds if target == 'SBP' else self.dbp_bounds

    def validate(self):
        for key in ('sbp_bounds', 'dbp_bounds'):
            bounds = getattr(self, key)
            if len(bounds) != 3 or any(a >= b for a, b in zip(bounds, bounds[1:])):
                raise ConfigError("groups.%s must be 3 strictly ascending thresholds, got %r" % (key, bounds))
            if bounds[0] < BP_MIN or bounds[-1] > BP_MAX:
                raise ConfigError("groups.%s must lie within [%g, %g], got %r" % (key, BP_MIN, BP_MAX, bounds))
        return self


class TrainConfig(_config_base('TrainConfig', _TRAIN_DEFAULTS)):
    __slots__ = ()

    def validate(self):
        if self.sampling not in ('oversample', 'standard'):
            raise ConfigError("train.sampling must be 'oversample' or 'standard', got %r" % (self.sampling,))
        if self.batch_size < 1 or (self.sampling == 'oversample' and self.batch_size % 4):
            raise ConfigError("train.batch_size must be a positive multiple of 4, got %r" % (self.batch_size,))
        if self.folds < 2:
            raise ConfigError("train.folds must be >= 2, got %r" % (self.folds,))
        if self.epochs < 1 or self.max_steps < 0 or self.workers < 1:
            raise ConfigError("train.epochs and train.workers must be positive, train.max_steps non-negative")
        if self.learning_rate < 0 or not 0 <= self.momentum < 1:
            raise ConfigError("train.learning_rate must be >= 0 and train.momentum in [0,1)")
        return self


class SynthSpec(_config_base('SynthSpec', _SYNTH_DEFAULTS)):
    __slots__ = ()

    def law(self, target):
        return self.sbp_law if target == 'SBP' else self.dbp_law

    def law_extremes(self, target):
        coefs = self.law(target)
        corners = [
            coefs[0] + coefs[1] * f + coefs[2] * log(a) + coefs[3] * lag
            for f in self.frequency_range
            for a in self.amplitude_range
            for lag in self.lag_range
        ]
        return min(corners), max(corners)

    def validate(self):
        if self.n_samples < 1 or self.n_frames < 1 or self.fps <= 0:
            raise ConfigError("synth.n_samples, synth.n_frames and synth.fps must be positive")
        for key in ('frequency_range', 'amplitude_range', 'lag_range'):
            low, high = getattr(self, key)
            if low > high:
                raise ConfigError("synth.%s is inverted: %r" % (key, (low, high)))
        if self.frequency_range[0] <= 0 or self.amplitude_range[0] <= 0 or self.lag_range[0] < 0:
            raise ConfigError("synth frequency and amplitude ranges must be positive, lag non-negative")
        if self.frequency_range[1] >= self.fps / 2:
            raise ConfigError("synth.frequency_range exceeds the Nyquist frequency of %g fps" % self.fps)
        if self.noise_sd < 0 or self.frequency_skew <= 0:
            raise ConfigError("synth.noise_sd must be >= 0 and synth.frequency_skew > 0")
        for target in TARGETS:
            low, high = self.law_extremes(target)
            if low < BP_MIN or high > BP_MAX:
                raise ConfigError("synth %s law spans [%.1f, %.1f], outside [%g, %g]" % (target, low, high, BP_MIN, BP_MAX))
        return self


for _cls, _defaults in (
        (AugmentConfig, _AUGMENT_DEFAULTS),
        (ModelConfig, _MODEL_DEFAULTS),
        (GroupConfig, _GROUP_DEFAULTS),
        (TrainConfig, _TRAIN_DEFAULTS),
        (SynthSpec, _SYNTH_DEFAULTS)):
    _cls.DEFAULT = _cls(**_defaults)

#----------------------------------------------------------------------------------------------------------------------------------
# the whole thing

SECTIONS = (
    ('augment', AugmentConfig),
    ('groups', GroupConfig),
    ('model', ModelConfig),
    ('synth', SynthSpec),
    ('train', TrainConfig),
)

_RUN_DEFAULTS = {
    'output_dir': 'runs',
    'seed': 0,
    'target': 'both',
}


class RunConfig(namedtuple('RunConfig', tuple(name for name, _ in SECTIONS) + tuple(sorted(_RUN_DEFAULTS)))):
    __slots__ = ()

    @classmethod
    def default(cls):
        return cls(
            **dict(
                {name: section_cls.DEFAULT for name, section_cls in SECTIONS},
                **_RUN_DEFAULTS
            )
        )

    @property
    def targets(self):
        return TARGETS if self.target == 'both' else (self.target,)

    def validate(self):
        for name, _ in SECTIONS:
            getattr(self, name).validate()
        if self.target not in TARGETS + ('both',):
            raise ConfigError("target must be SBP, DBP or both, got %r" % (self.target,))
        return self

    def replace_key(self, key, value):
        section, _, field = key.partition('.')
        if not field:
            if section not in _RUN_DEFAULTS:
                raise ConfigError("Unknown config key %r" % key)
            return self._replace(**{section: value})
        if section not in self._fields or section in _RUN_DEFAULTS:
            raise ConfigError("Unknown config section in %r" % key)
        current = getattr(self, section)
        if field not in current._fields:
            raise ConfigError("Unknown config key %r" % key)
        return self._replace(**{section: current._replace(**{field: value})})

    def get_key(self, key):
        section, _, field = key.partition('.')
        value = getattr(self, section)
        return getattr(value, field) if field else value

    def with_overrides(self, assignments):
        """
        Applies a sequence of 'key=value' strings (or (key, value) pairs where the value is already typed) and returns the new
        config. Values given as text are coerced to the type of the value they replace.
        """
        config = self
        for assignment in assignments:
            if isinstance(assignment, tuple):
                key, value = assignment
            else:
                key, sep, text = assignment.partition('=')
                if not sep:
                    raise ConfigError("Expected key=value, got %r" % (assignment,))
                key = key.strip()
                value = _coerce(key, text.strip(), _safe_get(config, key))
            config = config.replace_key(key, value)
        return config

    def with_preset(self, name):
        if name not in PRESETS:
            raise ConfigError("Unknown preset %r (choose from %s)" % (name, ', '.join(sorted(PRESETS))))
        return self.with_overrides(sorted(PRESETS[name].items()))

    def dump(self):
        return ''.join('%s=%s\n' % item for item in self.iter_items())

    def iter_items(self):
        for name, _ in SECTIONS:
            section = getattr(self, name)
            for field in section._fields:
                yield '%s.%s' % (name, field), format_value(getattr(section, field))
        for key in sorted(_RUN_DEFAULTS):
            yield key, format_value(getattr(self, key))

    @classmethod
    def parse(cls, text, base=None):
        config = base if base is not None else cls.default()
        assignments = []
        for line_no, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if '=' not in line:
                raise ConfigError("Config line %d is not key=value: %r" % (line_no, line))
            assignments.append(line)
        return config.with_overrides(assignments)

    @classmethod
    def load(cls, file_path, base=None):
        with open(file_path, 'rb') as file_in:
            return cls.parse(file_in.read().decode('UTF-8'), base)

#----------------------------------------------------------------------------------------------------------------------------------
# canonical text form of values

def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    elif isinstance(value, float):
        return repr(value)
    elif isinstance(value, (tuple, list)):
        return ','.join(format_value(v) for v in value)
    else:
        return '%s' % (value,)


def _safe_get(config, key):
    try:
        return config.get_key(key)
    except AttributeError:
        raise ConfigError("Unknown config key %r" % key)


def _coerce(key, text, current):
    try:
        if isinstance(current, bool):
            lowered = text.lower()
            if lowered not in ('true', 'false', '1', '0', 'yes', 'no'):
                raise ValueError(text)
            return lowered in ('true', '1', 'yes')
        elif isinstance(current, int):
            return int(text)
        elif isinstance(current, float):
            return float(text)
        elif isinstance(current, tuple):
            element = current[0] if current else 0.0
            return tuple(_coerce(key, part.strip(), element) for part in text.split(',') if part.strip())
        else:
            return text
    except ValueError as error:
        raise ConfigError("Bad value for %s: %r" % (key, text), reason=error)

#----------------------------------------------------------------------------------------------------------------------------------
