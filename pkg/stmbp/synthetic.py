#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Synthetic datasets with a known signal -> BP law, generated directly at the ISTM level.

Every sample has a latent pulse frequency f, amplitude a and transit lag. Each ROI carries the same sinusoid-plus-harmonic
pulse on top of a skin tone, scaled per ROI and delayed by a per-ROI multiple of the lag, plus white noise. The labels are an
affine function of (1, f, ln a, lag). `measure_latents` reads f, a and the lag back off a map, so that a least-squares fit on
those measurements recovers the law.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict, namedtuple
import logging
from math import log
from os import path

# 3rd parties
import numpy as np

# stmbp
from .config import GroupConfig, SynthSpec
from .dataset_io import NO_LANDMARKS, check_bp_pair, dump_manifest
from .datastructures import BpRecord, IstmTensor, Manifest, ManifestEntry
from .exceptions import ConfigError, ManifestError
from .stm import dump_stm
from .utils.files import ensure_dir

#----------------------------------------------------------------------------------------------------------------------------------
# constants

# RGB skin tone of each ROI, before a per-sample offset
BASE_TONES = np.array([
    [182.0, 134.0, 112.0], # forehead
    [176.0, 126.0, 104.0], # left cheek
    [176.0, 126.0, 104.0], # right cheek
    [166.0, 119.0, 99.0], # chin band
])

TONE_JITTER = 8.0

# the pulse is strongest on the forehead and in the green channel
ROI_GAINS = np.array([1.0, 0.8, 0.8, 0.6])
ROI_LAG_FACTORS = np.array([0.0, 1.0, 1.0, 1.5])
CHANNEL_GAINS = np.array([0.4, 1.0, 0.25])

HARMONIC_RATIO = 0.25

STM_DIR_NAME = 'istm'
INDEX_FILE_NAME = 'index.tsv'

#----------------------------------------------------------------------------------------------------------------------------------

SynthLatent = namedtuple('SynthLatent', (
    'sample_id',
    'frequency', # Hz
    'amplitude', # intensity units
    'lag', # seconds
    'phase', # radians
))

SynthDataset = namedtuple('SynthDataset', (
    'istms', # OrderedDict sample_id -> IstmTensor
    'records',
    'manifest',
    'latents',
))


def sample_id_for(index):
    return 'synth%04d' % index


def pulse_waveform(times, frequency, phase):
    """ A fundamental plus a weaker second harmonic; it crosses zero exactly twice per period """
    angle = 2.0 * np.pi * frequency * times + phase
    return np.sin(angle) + HARMONIC_RATIO * np.sin(2.0 * angle)


def apply_law(coefs, frequency, amplitude, lag):
    return coefs[0] + coefs[1] * frequency + coefs[2] * log(amplitude) + coefs[3] * lag


def synth_istm(latent, spec, tone_offset, noise):
    times = np.arange(spec.n_frames) / spec.fps
    pulses = np.stack([
        pulse_waveform(times - factor * latent.lag, latent.frequency, latent.phase)
        for factor in ROI_LAG_FACTORS
    ])
    values = (
        (BASE_TONES + tone_offset)[:, None, :]
        + latent.amplitude * ROI_GAINS[:, None, None] * CHANNEL_GAINS[None, None, :] * pulses[:, :, None]
        + spec.noise_sd * noise
    )
    return IstmTensor(np.clip(values, 0.0, 255.0))


def generate(spec=SynthSpec.DEFAULT, groups=GroupConfig.DEFAULT, stm_dir=STM_DIR_NAME):
    """
    Draws `spec.n_samples` samples from a single random stream seeded with `spec.seed`, so the same spec always gives the same
    dataset. Frequencies are drawn as lo + (hi - lo) * u ** frequency_skew, u uniform on [0, 1): a skew above 1 piles samples up
    at low frequencies, hence low BP, which is how imbalanced datasets are made.
    """
    spec.validate()
    rng = np.random.RandomState(spec.seed)
    low_f, high_f = spec.frequency_range
    istms = OrderedDict()
    records, entries, latents = [], [], []
    for index in range(spec.n_samples):
        sample_id = sample_id_for(index)
        latent = SynthLatent(
            sample_id=sample_id,
            frequency=low_f + (high_f - low_f) * rng.random_sample() ** spec.frequency_skew,
            amplitude=rng.uniform(*spec.amplitude_range),
            lag=rng.uniform(*spec.lag_range),
            phase=rng.uniform(0.0, 2.0 * np.pi),
        )
        tone_offset = rng.uniform(-TONE_JITTER, TONE_JITTER, size=3)
        noise = rng.standard_normal(size=(len(BASE_TONES), spec.n_frames, 3))
        sbp, dbp = (
            apply_law(spec.law(target), latent.frequency, latent.amplitude, latent.lag)
            for target in ('SBP', 'DBP')
        )
        try:
            check_bp_pair(sbp, dbp, sample_id)
        except ManifestError as error:
            raise ConfigError("synth laws give an invalid label pair: %s" % (error,), reason=error)
        istms[sample_id] = synth_istm(latent, spec, tone_offset, noise)
        records.append(BpRecord.build(sample_id, sbp, dbp, groups))
        entries.append(ManifestEntry(sample_id, path.join(stm_dir, sample_id + '.stm'), NO_LANDMARKS, sbp, dbp))
        latents.append(latent)
    return SynthDataset(istms, records, Manifest(entries), latents)


def write_dataset(dataset, output_dir, header_items=()):
    """
    Writes every ISTM and an index manifest pointing at them, relative to `output_dir`. Returns the manifest's path.
    """
    for entry in dataset.manifest:
        ensure_dir(path.dirname(path.join(output_dir, entry.frames_path)))
        dump_stm(dataset.istms[entry.sample_id], path.join(output_dir, entry.frames_path))
    index_path = path.join(output_dir, INDEX_FILE_NAME)
    dump_manifest(dataset.manifest, index_path, header_items=header_items)
    logging.info('Wrote %d synthetic samples to %s', len(dataset.manifest), output_dir)
    return index_path

#----------------------------------------------------------------------------------------------------------------------------------
# checks

def dominant_frequency(signal, fps):
    """
    Estimates a periodic signal's frequency, in Hz, from the number of zero crossings of its mean-removed version.
    """
    signal = np.asarray(signal, dtype=np.float64)
    negative = np.signbit(signal - signal.mean())
    crossings = np.count_nonzero(negative[1:] != negative[:-1])
    return crossings / (2.0 * len(signal) / fps)


def fit_pulse(signal, fps, frequency):
    """
    Least-squares fit of a + s1 sin(wt) + c1 cos(wt) + s2 sin(2wt) + c2 cos(2wt) at the given frequency. Returns the
    coefficients (a, s1, c1, s2, c2) and the residual sum of squares.
    """
    signal = np.asarray(signal, dtype=np.float64)
    angle = 2.0 * np.pi * frequency * np.arange(len(signal)) / fps
    design = np.column_stack([np.ones_like(angle), np.sin(angle), np.cos(angle), np.sin(2 * angle), np.cos(2 * angle)])
    coefs, _, _, _ = np.linalg.lstsq(design, signal, rcond=None)
    residual = signal - design.dot(coefs)
    return coefs, float(residual.dot(residual))


def measure_frequency(signal, fps, grid_size=41, rounds=8):
    """
    Pulse frequency of a two-harmonic signal: the zero-crossing estimate, refined by repeatedly searching a shrinking grid
    around the best fit of `fit_pulse`.
    """
    duration = len(signal) / fps
    center, span = dominant_frequency(signal, fps), 2.0 / duration
    for _ in range(rounds):
        grid = np.linspace(max(center - span, span / grid_size), center + span, grid_size)
        center = grid[int(np.argmin([fit_pulse(signal, fps, frequency)[1] for frequency in grid]))]
        span /= 10.0
    return float(center)


def measure_latents(istm, fps, sample_id=None):
    """
    Reads the pulse frequency, amplitude and ROI lag back off an ISTM's green channel, using nothing but the map itself and
    the fixed ROI gains and lag factors. On noise-free maps this gives back the generator's latents.
    """
    green = istm.values[:, :, 1]
    frequency = measure_frequency(green[0], fps)
    fits = [fit_pulse(trace, fps, frequency)[0] for trace in green]
    amplitude = np.hypot(fits[0][1], fits[0][2]) / (ROI_GAINS[0] * CHANNEL_GAINS[1])
    phases = np.array([np.arctan2(coefs[2], coefs[1]) for coefs in fits])
    delays = np.angle(np.exp(1j * (phases[0] - phases))) / (2.0 * np.pi * frequency)
    lag = ROI_LAG_FACTORS.dot(delays) / ROI_LAG_FACTORS.dot(ROI_LAG_FACTORS)
    return SynthLatent(
        sample_id=sample_id,
        frequency=frequency,
        amplitude=float(amplitude),
        lag=float(lag),
        phase=float(phases[0]),
    )


def fit_law(latents, values):
    """ Least-squares (c0, c1, c2, c3) of values ~ c0 + c1 * f + c2 * ln a + c3 * lag """
    design = np.array([
        [1.0, latent.frequency, log(latent.amplitude), latent.lag]
        for latent in latents
    ])
    coefs, _, _, _ = np.linalg.lstsq(design, np.asarray(values, dtype=np.float64), rcond=None)
    return coefs

#----------------------------------------------------------------------------------------------------------------------------------
