import json
import logging
import time

from . import load_series, metadata
from diagasym.lib.diagonal.config import RunConfig
from diagasym.lib.diagonal.errors import ConfigError, DiagonalError

log = logging.getLogger('diagasym')

cmderrors = {'error': 'Error'}
cmdattributes = {'input': ['d', 'n_max', 'cache_dir'], 'output': ['series-cache']}
moduleinfo = {'version': '1', 'author': 'diagasym developers',
              'description': 'Compute C_d(0..n_max) with the kernel recurrence and store it in the series cache',
              'module-type': ['command']}
moduleconfig = ['d', 'n_max', 'cache_dir']


def handler(q=False):
    if q is False:
        return False
    request = json.loads(q)
    try:
        config = RunConfig.from_request(request, 'series')
    except ConfigError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    started = time.monotonic()
    try:
        series, path, reused = load_series(config)
    except DiagonalError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    log.info('C_{} up to n={} ready in {:.3f}s'.format(config.d, config.n_max, time.monotonic() - started))
    return {'results': {'d': config.d,
                        'n_max': config.n_max,
                        'terms': len(series),
                        'last_term_digits': len(str(series[-1])),
                        'cache_file': path,
                        'reused_cache': reused},
            'passed': True,
            'metadata': metadata(started)}


def introspection():
    return cmdattributes


def version():
    moduleinfo['config'] = moduleconfig
    return moduleinfo
