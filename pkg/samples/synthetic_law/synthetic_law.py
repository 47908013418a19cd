#!/usr/bin/env python
# -*- coding: utf-8 -*-

import stmbp
from stmbp.synthetic import fit_law, measure_latents


def main():
    spec = stmbp.SynthSpec.DEFAULT._replace(n_samples=20, noise_sd=0.0, seed=7)
    dataset = stmbp.generate(spec)
    measured = [
        measure_latents(dataset.istms[latent.sample_id], spec.fps, latent.sample_id)
        for latent in dataset.latents
    ]
    for target in stmbp.TARGETS:
        coefs = fit_law(measured, [record.value(target) for record in dataset.records])
        print('%s law: %.2f + %.2f f + %.2f ln(a) + %.2f lag' % ((target,) + tuple(coefs)))
    duration = spec.n_frames / spec.fps
    close = sum(
        abs(stmbp.dominant_frequency(dataset.istms[latent.sample_id].values[0, :, 1], spec.fps) - latent.frequency) < 1 / duration
        for latent in dataset.latents
    )
    print('zero-crossing frequency within %.3f Hz on %d of %d samples' % (1 / duration, close, len(dataset.latents)))
    exact = sum(
        abs(estimate.frequency - latent.frequency) < 1e-6
        for estimate, latent in zip(measured, dataset.latents)
    )
    print('fitted frequency within 1e-6 Hz on %d of %d samples' % (exact, len(dataset.latents)))


if __name__ == '__main__':
    main()
