#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
usage: stmbp <command> [options]

    synth     OPTIONS                          generate a synthetic dataset (ISTM files + index.tsv)
    prepare   MANIFEST OPTIONS                 frames + landmarks -> ISTM files + index.tsv
    train     MANIFEST OPTIONS [--full-fit]    k-fold cross-validation (or one model per target on all samples)
    evaluate  MANIFEST --checkpoint FILE...    score trained models on a dataset
    predict   INPUT... --checkpoint FILE...    fused SBP/DBP estimates for unlabeled samples

Exit codes: 0 success, 1 bad data, 2 bad config or usage, 3 numerical failure.

predict needs at least model.n_clips * model.clip_length frames per input (450 with the defaults); a shorter input fails with
exit code 1, even when it holds one whole clip.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import argparse
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
import logging
from os import path
from sys import argv, exit, stderr, stdout # pylint: disable=redefined-builtin

# stmbp
from .config import RunConfig
from .crossval import cross_validate, evaluate_checkpoints, full_fit
from .dataset_io import DEFAULT_FPS, NO_LANDMARKS, dump_manifest, load_manifest
from .datastructures import Manifest, ManifestEntry
from .estimator import load_checkpoint, predict, restore_estimator
from .exceptions import ConfigError, DataError, StmbpException
from .pipeline import SampleStore, prepare_sample
from .stm import dump_stm, load_istm
from .synthetic import INDEX_FILE_NAME, STM_DIR_NAME, generate, write_dataset
from .tally import PREPARED, Tally
from .utils.files import ensure_dir, write_atomically
from .version import STMBP_VERSION

#----------------------------------------------------------------------------------------------------------------------------------

RUN_CONFIG_FILE_NAME = 'run.cfg'


class UsageError(ConfigError):
    pass


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError("%s: %s" % (self.prog, message))

#----------------------------------------------------------------------------------------------------------------------------------

class StmbpCli(object):

    def __init__(self, out=None):
        self.out = out or stdout

    def synth(self, *args):
        options = self._parse(args, 'synth')
        config = self._run_config(options)
        if options.seed is not None:
            # for this command --seed picks the dataset
            config = config.replace_key('synth.seed', options.seed)
        dataset = generate(config.synth, config.groups)
        ensure_dir(config.output_dir)
        self._save_run_config(config)
        return write_dataset(dataset, config.output_dir, config.iter_items())

    def prepare(self, *args):
        options = self._parse(args, 'prepare', manifest=True, workers=True)
        config = self._run_config(options)
        manifest = load_manifest(options.manifest, check_paths=False)
        stm_dir = ensure_dir(path.join(config.output_dir, STM_DIR_NAME))
        self._save_run_config(config)
        jobs = [
            (entry, path.join(stm_dir, entry.sample_id + '.stm'), options.fps)
            for entry in manifest
        ]
        if config.train.workers > 1:
            with ProcessPoolExecutor(max_workers=config.train.workers) as executor:
                outcomes = list(executor.map(prepare_one, jobs))
        else:
            outcomes = [prepare_one(job) for job in jobs]
        tally = Tally('prepare %s' % options.manifest)
        tally.set_expected(len(manifest))
        prepared = []
        for entry, (sample_id, fate, message) in zip(manifest, outcomes):
            tally.record_fate(sample_id, fate)
            if fate == PREPARED:
                prepared.append(entry._replace(
                    frames_path=path.join(STM_DIR_NAME, sample_id + '.stm'),
                    landmarks_path=NO_LANDMARKS,
                ))
            else:
                logging.error('%s: %s', sample_id, message)
        index_path = path.join(config.output_dir, INDEX_FILE_NAME)
        dump_manifest(Manifest(prepared), index_path, header_items=config.iter_items())
        tally.check()
        return index_path

    def train(self, *args):
        options = self._parse(args, 'train', manifest=True, full_fit=True)
        config = self._run_config(options)
        store = self._load_store(options.manifest, config, options.fps)
        ensure_dir(config.output_dir)
        self._save_run_config(config)
        if options.full_fit:
            return full_fit(store, config, config.output_dir)
        return cross_validate(store, config, config.output_dir)

    def evaluate(self, *args):
        options = self._parse(args, 'evaluate', manifest=True, checkpoints=True)
        config = self._run_config(options)
        store = self._load_store(options.manifest, config, options.fps)
        return evaluate_checkpoints(
            store,
            options.checkpoints,
            config.output_dir,
            [('manifest', path.abspath(options.manifest))] + list(config.iter_items()),
        )

    def predict(self, *args):
        options = self._parse(args, 'predict', inputs=True, checkpoints=True)
        store = SampleStore(self._load_inputs(options.inputs, options.landmarks, options.fps))
        records = OrderedDict((sample_id, []) for sample_id in store.sample_ids)
        for checkpoint_path in options.checkpoints:
            checkpoint = load_checkpoint(checkpoint_path)
            model = restore_estimator(checkpoint)
            output = predict(model, store, store.sample_ids, checkpoint.config, checkpoint.target)
            for i, sample_id in enumerate(store.sample_ids):
                records[sample_id].append(format_prediction(sample_id, checkpoint.target, output, i))
        for lines in records.values():
            for line in lines:
                print(line, file=self.out)
        return records

    #------------------------------------------------------------------------------------------------------------------------------
    # helpers

    @staticmethod
    def _parse(args, command, manifest=False, inputs=False, workers=False, full_fit=False, checkpoints=False):
        parser = _ArgumentParser(prog='stmbp %s' % command)
        if manifest:
            parser.add_argument('manifest')
        if inputs:
            parser.add_argument('inputs', nargs='+', help='manifest (.tsv), prepared .stm file, or frames path')
            parser.add_argument('--landmarks', help='landmarks CSV, when a single frames path is given')
        parser.add_argument('--config', help='key=value config file')
        parser.add_argument('--preset', help='desk, tiny or resnet18')
        parser.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--output-dir')
        parser.add_argument('--target', choices=('SBP', 'DBP', 'both'))
        parser.add_argument('--fps', type=float, default=DEFAULT_FPS)
        if workers:
            parser.add_argument('--workers', type=int)
        if full_fit:
            parser.add_argument('--folds', type=int)
            parser.add_argument('--full-fit', action='store_true')
        if checkpoints:
            parser.add_argument('--checkpoint', dest='checkpoints', action='append', required=True)
        return parser.parse_args(list(args))

    @staticmethod
    def _run_config(options):
        config = RunConfig.default()
        if options.config:
            try:
                config = RunConfig.load(options.config)
            except IOError as error:
                raise ConfigError("%s: unreadable config file" % options.config, reason=error)
        if options.preset:
            config = config.with_preset(options.preset)
        config = config.with_overrides(options.overrides)
        for key, option in (
                ('seed', 'seed'),
                ('output_dir', 'output_dir'),
                ('target', 'target'),
                ('train.folds', 'folds'),
                ('train.workers', 'workers')):
            value = getattr(options, option, None)
            if value is not None:
                config = config.replace_key(key, value)
        return config.validate()

    @staticmethod
    def _save_run_config(config):
        write_atomically(path.join(config.output_dir, RUN_CONFIG_FILE_NAME), config.dump())

    @staticmethod
    def _load_store(manifest_path, config, fps):
        manifest = load_manifest(manifest_path)
        logging.info('Loading %d samples from %s', len(manifest), manifest_path)
        return SampleStore.from_manifest(manifest, config.groups, fps=fps)

    @staticmethod
    def _load_inputs(inputs, landmarks_path, fps):
        istms = OrderedDict()
        if landmarks_path is not None:
            if len(inputs) != 1:
                raise UsageError("--landmarks goes with exactly one frames path")
            sample_id = path.splitext(path.basename(path.normpath(inputs[0])))[0]
            istms[sample_id] = prepare_sample(ManifestEntry(sample_id, inputs[0], landmarks_path, None, None), fps=fps)
            return istms
        for input_path in inputs:
            if input_path.endswith('.stm'):
                istms[path.splitext(path.basename(input_path))[0]] = load_istm(input_path)
            elif input_path.endswith('.tsv'):
                for entry in load_manifest(input_path):
                    istms[entry.sample_id] = prepare_sample(entry, fps=fps)
            else:
                raise UsageError("%s: expected a .stm file or a .tsv manifest (frames need --landmarks)" % input_path)
        return istms

#----------------------------------------------------------------------------------------------------------------------------------

def prepare_one(job):
    """ Runs in worker processes, so it returns the outcome of a sample rather than raising """
    entry, output_path, fps = job
    try:
        dump_stm(prepare_sample(entry, fps=fps), output_path)
    except DataError as error:
        return entry.sample_id, type(error).__name__, '%s' % (error,)
    return entry.sample_id, PREPARED, None


def format_prediction(sample_id, target, output, i):
    return '%s\t%s\tR=%.2f\tR_reg=%.2f\tgroup=G%d\tprobs=%s' % (
        sample_id,
        target,
        output.fused[i],
        output.reg_value[i],
        output.class_probs[i].argmax() + 1,
        ','.join('%.4f' % p for p in output.class_probs[i]),
    )

#----------------------------------------------------------------------------------------------------------------------------------

def main(args=None):
    logging.basicConfig(level='INFO', format='%(levelname)s %(message)s')
    args = argv[1:] if args is None else list(args)
    cli = StmbpCli()
    command_name = args[0] if args else None
    method = getattr(cli, command_name, None) if command_name and not command_name.startswith('_') else None
    if not callable(method):
        if command_name in ('--version', 'version'):
            print('stmbp %s' % STMBP_VERSION)
            exit(0)
        print(__doc__.strip(), file=stderr)
        exit(2)
    try:
        method(*args[1:])
    except StmbpException as error:
        logging.error('%s', error)
        exit(error.exit_code)

if __name__ == '__main__':
    main()

#----------------------------------------------------------------------------------------------------------------------------------
