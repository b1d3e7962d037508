import itertools
import json
import logging
import time
from math import factorial

from . import metadata
from diagasym.lib.diagonal.config import RunConfig
from diagasym.lib.diagonal.errors import ConfigError, DiagonalError
from diagasym.lib.diagonal.series import gf_coefficients, tuple_count_product

log = logging.getLogger('diagasym')

cmderrors = {'error': 'Error'}
cmdattributes = {'input': ['d', 'n_max'], 'output': ['oracle-report']}
moduleinfo = {'version': '1', 'author': 'diagasym developers',
              'description': 'Compare the kernel recurrence with the product formula on every index of a small box',
              'module-type': ['command']}
moduleconfig = ['d', 'n_max']

# Mismatches listed in the report, the count is always complete.
MAX_LISTED = 20


def compare_box(d, n_max):
    """Indices (sorted keys) on which the three evaluators disagree."""
    reduced = gf_coefficients(d, n_max, mode='reduced')
    direct = gf_coefficients(d, n_max, mode='direct')
    checked = 0
    mismatches = []
    for rest in itertools.combinations_with_replacement(range(n_max + 1), d):
        index = rest[::-1]
        checked += 1
        values = {'reduced': reduced[index], 'direct': direct[index], 'product': tuple_count_product(index)}
        if len(set(values.values())) != 1:
            mismatches.append({'index': list(index), 'values': {k: str(v) for k, v in values.items()}})
    return checked, mismatches, reduced


def closed_sequences(d, table):
    checks = {}
    if table.n_max >= 1:
        checks['C(1) = 1'] = table[(1,) * d] == 1
    if table.n_max >= 2:
        checks['C(2) = d!'] = table[(2,) * d] == factorial(d)
    if d == 2:
        checks['C(n) = n'] = table.diagonal() == list(range(table.n_max + 1))
    return checks


def handler(q=False):
    if q is False:
        return False
    request = json.loads(q)
    try:
        config = RunConfig.from_request(request, 'oracle')
    except ConfigError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    started = time.monotonic()
    try:
        checked, mismatches, table = compare_box(config.d, config.n_max)
    except DiagonalError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    closed = closed_sequences(config.d, table)
    if mismatches:
        log.error('{} of {} indices disagree for d={}'.format(len(mismatches), checked, config.d))
    return {'results': {'d': config.d,
                        'n_max': config.n_max,
                        'indices_checked': checked,
                        'mismatch_count': len(mismatches),
                        'mismatches': mismatches[:MAX_LISTED],
                        'closed_sequences': closed},
            'passed': not mismatches and all(closed.values()),
            'metadata': metadata(started)}


def introspection():
    return cmdattributes


def version():
    moduleinfo['config'] = moduleconfig
    return moduleinfo
