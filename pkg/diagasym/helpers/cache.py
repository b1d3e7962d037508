#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# diagasym helper - series cache
#
# One text file per dimension d holds C_d(0), ..., C_d(n_max), one decimal
# integer per line, after the header
#
#     diagasym-series v1 d=<d> n_max=<n_max>

import logging
import os
import tempfile

from pyparsing import Literal, ParseException, StringEnd, Suppress, Word, nums

from diagasym.lib.diagonal.errors import CacheFormatError

log = logging.getLogger('diagasym')

cache_dir = os.getenv('DIAGASYM_CACHE_DIR') or os.path.join(os.path.expanduser('~'), '.cache', 'diagasym')

MAGIC = 'diagasym-series'
VERSION = 'v1'

header = (Suppress(Literal(MAGIC)) + Suppress(Literal(VERSION))
          + Suppress(Literal('d=')) + Word(nums)('d')
          + Suppress(Literal('n_max=')) + Word(nums)('n_max') + StringEnd())


def selftest(enable=True):
    if not enable:
        return False
    try:
        os.makedirs(cache_dir, exist_ok=True)
    except OSError as e:
        return 'Cache directory {} is not usable ({}). Series will not be cached.'.format(cache_dir, e)
    if not os.access(cache_dir, os.W_OK):
        return 'Cache directory {} is not writable. Series will not be cached.'.format(cache_dir)


def series_path(d, directory=None):
    return os.path.join(directory or cache_dir, 'C{}.series'.format(d))


def parse_header(line):
    try:
        parsed = header.parseString(line.strip(), parseAll=True)
    except ParseException as e:
        raise CacheFormatError('Bad series header {!r}: {}'.format(line.strip(), e))
    return int(parsed['d']), int(parsed['n_max'])


def format_header(d, n_max):
    return '{} {} d={} n_max={}'.format(MAGIC, VERSION, d, n_max)


def load(fp, d=None):
    """Read a series file; the header must agree with d and with the number of terms."""
    file_d, n_max = parse_header(fp.readline())
    if d is not None and file_d != d:
        raise CacheFormatError('Series file holds d={}, expected d={}'.format(file_d, d))
    series = []
    for number, line in enumerate(fp, start=2):
        line = line.strip()
        if not line:
            continue
        if not line.isdigit():
            raise CacheFormatError('Line {} is not a nonnegative integer: {!r}'.format(number, line[:40]))
        series.append(int(line))
    if len(series) != n_max + 1:
        raise CacheFormatError('Header announces n_max={} but the file holds {} terms'.format(n_max, len(series)))
    return series


def dump(series, d, fp):
    fp.write(format_header(d, len(series) - 1) + '\n')
    for term in series:
        fp.write('{}\n'.format(term))


def get(d, n_max, directory=None):
    """Cached C_d(0..n_max), or None when the cache cannot serve it."""
    path = series_path(d, directory)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fp:
            series = load(fp, d)
    except CacheFormatError as e:
        log.warning('Ignoring cache file {}: {}'.format(path, e))
        return None
    if len(series) < n_max + 1:
        log.debug('Cache for d={} stops at n={}, {} requested'.format(d, len(series) - 1, n_max))
        return None
    log.debug('Cache hit for d={} n_max={} in {}'.format(d, n_max, path))
    return series[:n_max + 1]


def put(series, d, directory=None):
    """Store a series unless the cache already holds at least as many terms."""
    directory = directory or cache_dir
    path = series_path(d, directory)
    if get(d, len(series) - 1, directory) is not None:
        return path
    os.makedirs(directory, exist_ok=True)
    handle, tmp = tempfile.mkstemp(dir=directory, prefix='.C{}.'.format(d))
    with os.fdopen(handle, 'w') as fp:
        dump(series, d, fp)
    os.replace(tmp, path)
    log.info('Cached {} terms of C_{} in {}'.format(len(series), d, path))
    return path


def flush(directory=None):
    directory = directory or cache_dir
    removed = 0
    if not os.path.isdir(directory):
        return removed
    for filename in os.listdir(directory):
        if filename.endswith('.series'):
            os.remove(os.path.join(directory, filename))
            removed += 1
    return removed


if __name__ == "__main__":
    import sys
    import io
    if selftest() is not None:
        sys.exit()
    else:
        print("Selftest ok")
    buffer = io.StringIO()
    dump([0, 1, 2, 3], 2, buffer)
    buffer.seek(0)
    if load(buffer, 2) == [0, 1, 2, 3]:
        print("Cache format ok")
