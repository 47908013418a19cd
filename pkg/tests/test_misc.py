#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import io
import logging
import unittest

# stmbp
import stmbp
import stmbp.cli
from stmbp.cli import main
from stmbp.progress import DefaultLogger, LogEntry, NullLogger, RecordingLogger, pick_logger
from stmbp.tally import SamplesFailed, Tally
from stmbp.utils.seeding import derive_seed

#----------------------------------------------------------------------------------------------------------------------------------

class ExceptionTests(unittest.TestCase):

    def test_exit_codes(self):
        self.assertEqual(stmbp.LandmarkError('x').exit_code, 1)
        self.assertEqual(stmbp.CheckpointError('x').exit_code, 1)
        self.assertEqual(stmbp.ConfigError('x').exit_code, 2)
        self.assertEqual(stmbp.NumericalFailure('x').exit_code, 3)

    def test_reason_is_kept(self):
        reason = ValueError('bad')
        error = stmbp.ManifestError('line 3', reason=reason)
        self.assertIs(error.reason, reason)
        self.assertIsInstance(error, stmbp.DataError)

    def test_checkpoint_offset(self):
        self.assertEqual(str(stmbp.CheckpointError('Checksum mismatch', offset=42)), 'Checksum mismatch (at byte offset 42)')


class TallyTests(unittest.TestCase):

    def quiet_tally(self):
        return Tally('test', log=logging.getLogger('stmbp.tests.tally'))

    def test_all_prepared(self):
        tally = self.quiet_tally()
        tally.set_expected(2)
        tally.record_fate('a')
        tally.record_fate('b')
        tally.check()
        self.assertEqual(tally.total, 2)

    def test_failures(self):
        tally = self.quiet_tally()
        tally.record_fate('a')
        tally.record_fate('b', 'LandmarkError')
        self.assertEqual(tally.failed_samples, ('b',))
        with self.assertRaises(SamplesFailed):
            tally.check()

    def test_count_mismatch(self):
        tally = self.quiet_tally()
        tally.set_expected(3)
        tally.record_fate('a')
        with self.assertRaises(SamplesFailed):
            tally.check()


class LoggerTests(unittest.TestCase):

    def test_pick_logger(self):
        self.assertIsInstance(pick_logger({}), DefaultLogger)
        self.assertIsInstance(pick_logger({'logger': None}), NullLogger)
        recorder = RecordingLogger()
        kwargs = {'logger': recorder}
        self.assertIs(pick_logger(kwargs), recorder)
        self.assertEqual(kwargs, {})

    def test_default_logger_line(self):
        out = io.StringIO()
        DefaultLogger(out).flush(LogEntry(target='SBP', fold=2, epoch=3, step=40, loss=(1.5, 1.25, 0.25)))
        self.assertEqual(out.getvalue(), '[SBP][fold 2] epoch   3 step     40 loss 1.5000 (ce 1.2500 + mae 0.2500)\n')

    def test_unknown_section(self):
        with self.assertRaises(KeyError):
            LogEntry()['colour'] = 'red'


class SeedingTests(unittest.TestCase):

    def test_derived_seeds(self):
        self.assertEqual(derive_seed(0, 'synth0001', 3), derive_seed(0, 'synth0001', 3))
        self.assertNotEqual(derive_seed(0, 'synth0001', 3), derive_seed(0, 'synth0001', 4))
        self.assertNotEqual(derive_seed(0, 'synth0001', 3), derive_seed(1, 'synth0001', 3))
        self.assertLess(derive_seed(2 ** 40, 'x'), 2 ** 32)


class MainTests(unittest.TestCase):

    def exit_code(self, *args):
        with self.assertRaises(SystemExit) as context:
            main(args)
        return context.exception.code

    def test_unknown_command(self):
        self.assertEqual(self.exit_code('fly'), 2)
        self.assertEqual(self.exit_code(), 2)
        self.assertEqual(self.exit_code('out'), 2)

    def test_version(self):
        self.assertEqual(self.exit_code('--version'), 0)

    def test_usage_error(self):
        self.assertEqual(self.exit_code('train'), 2)

    def test_usage_states_the_predict_input_length(self):
        usage = stmbp.cli.__doc__
        self.assertIn('model.n_clips * model.clip_length frames', usage)
        self.assertIn('450 with the defaults', usage)

    def test_bad_config_key(self):
        self.assertEqual(self.exit_code('synth', '--set', 'model.depth=3'), 2)

    def test_missing_manifest(self):
        self.assertEqual(self.exit_code('train', '/nonexistent/index.tsv'), 1)

#----------------------------------------------------------------------------------------------------------------------------------
