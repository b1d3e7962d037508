#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import contextlib
import csv
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import diagasym
from diagasym.helpers import cache
from diagasym.lib.diagonal.errors import CacheFormatError
from diagasym.modules.commands import analyze, oracle, ratio, series, verify


class CommandTestCase(unittest.TestCase):

    def setUp(self):
        self.maxDiff = None
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dirname = self.tmp.name
        patcher = mock.patch.object(cache, 'cache_dir', self.dirname)
        patcher.start()
        self.addCleanup(patcher.stop)

    def query(self, module, handler, **config):
        config.setdefault('cache_dir', self.dirname)
        return handler.handler(q=json.dumps({'module': module, 'config': config}))

    @staticmethod
    def get_results(response):
        if 'results' not in response:
            print(json.dumps(response, indent=2))
        return response['results']

    @staticmethod
    def get_errors(response):
        return response['error']


class TestSeriesCache(CommandTestCase):

    def test_round_trip_file(self):
        buffer = io.StringIO()
        cache.dump([0, 1, 6, 222], 3, buffer)
        buffer.seek(0)
        self.assertEqual(buffer.readline(), 'diagasym-series v1 d=3 n_max=3\n')
        buffer.seek(0)
        self.assertEqual(cache.load(buffer, 3), [0, 1, 6, 222])

    def test_header(self):
        self.assertEqual(cache.parse_header('diagasym-series v1 d=4 n_max=100\n'), (4, 100))
        for line in ('diagasym-series v2 d=4 n_max=100', 'C4 100', 'diagasym-series v1 d=4', ''):
            with self.assertRaises(CacheFormatError):
                cache.parse_header(line)

    def test_wrong_dimension(self):
        buffer = io.StringIO('diagasym-series v1 d=3 n_max=1\n0\n1\n')
        with self.assertRaises(CacheFormatError):
            cache.load(buffer, 4)

    def test_wrong_length(self):
        buffer = io.StringIO('diagasym-series v1 d=3 n_max=5\n0\n1\n6\n')
        with self.assertRaises(CacheFormatError):
            cache.load(buffer, 3)

    def test_not_a_number(self):
        buffer = io.StringIO('diagasym-series v1 d=3 n_max=2\n0\n1\n-6\n')
        with self.assertRaises(CacheFormatError):
            cache.load(buffer, 3)

    def test_get_put(self):
        self.assertIsNone(cache.get(2, 5, self.dirname))
        path = cache.put(list(range(11)), 2, self.dirname)
        self.assertEqual(path, cache.series_path(2, self.dirname))
        self.assertEqual(cache.get(2, 5, self.dirname), list(range(6)))
        self.assertEqual(cache.get(2, 10, self.dirname), list(range(11)))
        self.assertIsNone(cache.get(2, 11, self.dirname))
        # shorter series never replace a longer cached one
        cache.put(list(range(4)), 2, self.dirname)
        self.assertEqual(cache.get(2, 10, self.dirname), list(range(11)))

    def test_corrupt_file_ignored(self):
        with open(cache.series_path(3, self.dirname), 'w') as fp:
            fp.write('not a series\n')
        self.assertIsNone(cache.get(3, 2, self.dirname))

    def test_flush(self):
        cache.put(list(range(4)), 2, self.dirname)
        self.assertEqual(cache.flush(self.dirname), 1)
        self.assertIsNone(cache.get(2, 1, self.dirname))

    def test_selftest(self):
        self.assertIsNone(cache.selftest())
        self.assertFalse(cache.selftest(enable=False))


class TestHandlers(CommandTestCase):

    def test_no_query(self):
        for module in (series, oracle, verify, analyze, ratio):
            self.assertFalse(module.handler())

    def test_missing_d(self):
        response = series.handler(q=json.dumps({'module': 'series', 'config': {}}))
        self.assertIn('d', self.get_errors(response))

    def test_invalid_settings(self):
        self.assertIn('d must be', self.get_errors(self.query('series', series, d=1)))
        self.assertIn('Invalid', self.get_errors(self.query('series', series, d='three')))
        self.assertIn('precision_bits', self.get_errors(self.query('ratio', ratio, d=3, precision_bits=16)))

    def test_series(self):
        results = self.get_results(self.query('series', series, d=3, n_max=12))
        self.assertEqual(results['terms'], 13)
        self.assertFalse(results['reused_cache'])
        self.assertTrue(os.path.exists(results['cache_file']))
        again = self.get_results(self.query('series', series, d=3, n_max=10))
        self.assertTrue(again['reused_cache'])
        self.assertEqual(again['terms'], 11)

    def test_oracle(self):
        response = self.query('oracle', oracle, d=3, n_max=5)
        self.assertTrue(response['passed'])
        results = self.get_results(response)
        self.assertEqual(results['mismatch_count'], 0)
        # sorted indices in {0..5}^3
        self.assertEqual(results['indices_checked'], 56)
        self.assertTrue(all(results['closed_sequences'].values()))

    def test_oracle_d2(self):
        results = self.get_results(self.query('oracle', oracle, d=2))
        self.assertEqual(results['n_max'], 6)
        self.assertTrue(results['closed_sequences']['C(n) = n'])

    def test_verify(self):
        response = self.query('verify', verify, d=3)
        self.assertTrue(response['passed'])
        results = self.get_results(response)
        self.assertEqual(results['c'], '1/2')
        self.assertEqual(results['q'], '1/3')
        self.assertEqual(results['det_g'], '1/3')
        self.assertEqual(results['growth'], 8)
        self.assertEqual(results['poly_exponent'], '-1/1')
        self.assertEqual(results['failures'], [])
        self.assertTrue(results['constant']['value'].startswith('0.36755259'))
        self.assertGreaterEqual(results['constant']['agreement_bits'], 150)

    def test_verify_d2_is_an_error(self):
        self.assertIn('error', self.query('verify', verify, d=2))

    def test_ratio(self):
        response = self.query('ratio', ratio, d=3, n_max=100)
        self.assertTrue(response['passed'])
        results = self.get_results(response)
        self.assertEqual(len(results['rows']), 100)
        self.assertEqual(results['rows'][-1]['n'], 100)
        self.assertIsNone(results['rows'][0]['richardson'])
        self.assertIsNone(results['rows'][1]['richardson2'])
        self.assertLessEqual(abs(float(results['final_richardson2']) - 1), 1e-3)

    def test_ratio_short_series(self):
        self.assertIn('10 terms', self.get_errors(self.query('ratio', ratio, d=3, n_max=5)))

    def test_analyze_short_series(self):
        response = self.query('analyze', analyze, d=2, n_max=30, max_order=2, max_degree=2)
        self.assertTrue(response['passed'])
        section = self.get_results(response)['recurrence']
        self.assertIsNotNone(section['recurrence'])
        self.assertTrue(section['verified'])

    def test_analyze_degree_cap(self):
        self.assertEqual(analyze.fitting_degree(101, 6, 8), 8)
        self.assertEqual(analyze.fitting_degree(75, 6, 8), 7)
        self.assertEqual(analyze.fitting_degree(20, 6, 8), -1)

    def test_deterministic(self):
        first = self.query('verify', verify, d=4, seed=3)
        second = self.query('verify', verify, d=4, seed=3)
        first.pop('metadata')
        second.pop('metadata')
        self.assertEqual(first, second)

    def test_introspection(self):
        for module in (series, oracle, verify, analyze, ratio):
            self.assertIn('input', module.introspection())
            self.assertIn('config', module.version())


class TestMain(CommandTestCase):

    def run_main(self, *argv):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            code = diagasym.main(list(argv))
        return code, stdout.getvalue()

    def test_series_writes_cache(self):
        code, output = self.run_main('series', '--d', '2', '--n-max', '10', '--cache-dir', self.dirname)
        self.assertEqual(code, diagasym.EXIT_OK)
        self.assertEqual(json.loads(output)['results']['terms'], 11)
        with open(cache.series_path(2, self.dirname)) as fp:
            lines = fp.read().splitlines()
        self.assertEqual(lines[0], 'diagasym-series v1 d=2 n_max=10')
        self.assertEqual(lines[1:], [str(n) for n in range(11)])

    def test_verify_d2_exit_code(self):
        code, output = self.run_main('verify', '--d', '2')
        self.assertEqual(code, diagasym.EXIT_ERROR)
        self.assertIn('error', json.loads(output))

    def test_missing_d(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                self.run_main('series')
        self.assertEqual(context.exception.code, 2)

    def test_modules(self):
        code, output = self.run_main('modules')
        self.assertEqual(code, diagasym.EXIT_OK)
        names = [module['name'] for module in json.loads(output)]
        self.assertEqual(names, sorted(['analyze', 'oracle', 'ratio', 'series', 'verify']))

    def test_ratio_csv(self):
        out = os.path.join(self.dirname, 'ratio.csv')
        code, _ = self.run_main('ratio', '--d', '3', '--n-max', '100', '--cache-dir', self.dirname, '--out', out)
        self.assertEqual(code, diagasym.EXIT_OK)
        with open(out, newline='') as fp:
            rows = list(csv.DictReader(fp))
        self.assertEqual(len(rows), 100)
        self.assertEqual(list(rows[0].keys()), ['n', 'ratio', 'richardson', 'richardson2', 'estimate'])

    def test_json_out(self):
        out = os.path.join(self.dirname, 'oracle.json')
        code, output = self.run_main('oracle', '--d', '2', '--out', out)
        self.assertEqual(code, diagasym.EXIT_OK)
        self.assertEqual(output, '')
        with open(out) as fp:
            self.assertTrue(json.load(fp)['passed'])

    def test_check_failure_exit_code(self):
        with mock.patch.object(oracle, 'compare_box', return_value=(1, [{'index': [1, 1], 'values': {}}],
                                                                     oracle.gf_coefficients(2, 2))):
            code, _ = self.run_main('oracle', '--d', '2', '--n-max', '2')
        self.assertEqual(code, diagasym.EXIT_CHECK_FAILED)


if __name__ == '__main__':
    unittest.main()
