import json
import logging
import time

import mpmath

from . import load_series, metadata
from diagasym.lib.diagonal.config import RunConfig
from diagasym.lib.diagonal.errors import ConfigError, DiagonalError
from diagasym.lib.diagonal.smooth_point import ratio_diagnostics

log = logging.getLogger('diagasym')

cmderrors = {'error': 'Error'}
cmdattributes = {'input': ['d', 'n_max', 'precision_bits', 'cache_dir'], 'output': ['ratio-table']}
moduleinfo = {'version': '1', 'author': 'diagasym developers',
              'description': 'Ratio of C_d(n) to its leading asymptotic term, with Richardson extrapolation',
              'module-type': ['command']}
moduleconfig = ['d', 'n_max', 'precision_bits', 'cache_dir']

DIGITS = 20


def _nstr(value):
    return None if value is None else mpmath.nstr(value, DIGITS)


def handler(q=False):
    if q is False:
        return False
    request = json.loads(q)
    try:
        config = RunConfig.from_request(request, 'ratio')
    except ConfigError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    started = time.monotonic()
    try:
        series, _, _ = load_series(config)
        diagnostics = ratio_diagnostics(series, config.d, precision_bits=config.precision_bits)
    except DiagonalError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    rows = [{'n': row.n, 'ratio': _nstr(row.ratio), 'richardson': _nstr(row.richardson),
             'richardson2': _nstr(row.richardson2), 'estimate': _nstr(row.estimate)}
            for row in diagnostics.rows]
    return {'results': {'d': config.d,
                        'n_max': config.n_max,
                        'constant': _nstr(diagnostics.constant),
                        'constant_estimate': _nstr(diagnostics.constant_estimate),
                        'final_ratio': _nstr(diagnostics.final_ratio),
                        'final_richardson': _nstr(diagnostics.final_richardson),
                        'final_richardson2': _nstr(diagnostics.final_richardson2),
                        'tolerance': diagnostics.tolerance,
                        'converging': diagnostics.converging,
                        'rows': rows},
            'passed': diagnostics.converging,
            'metadata': metadata(started)}


def introspection():
    return cmdattributes


def version():
    moduleinfo['config'] = moduleconfig
    return moduleinfo
