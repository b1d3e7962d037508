import json
import logging
import time

from . import metadata
from diagasym.lib.diagonal import report
from diagasym.lib.diagonal.config import RunConfig
from diagasym.lib.diagonal.errors import ConfigError, ConsistencyError, DiagonalError
from diagasym.lib.diagonal.smooth_point import isolation_identities, smooth_point_report

log = logging.getLogger('diagasym')

cmderrors = {'error': 'Error'}
cmdattributes = {'input': ['d', 'precision_bits', 'seed'], 'output': ['smooth-point-report']}
moduleinfo = {'version': '1', 'author': 'diagasym developers',
              'description': 'Verify the smooth critical point of H_d exactly and assemble the leading asymptotic constant',
              'module-type': ['command']}
moduleconfig = ['d', 'precision_bits', 'seed']

MINIMALITY_SAMPLES = 1000


def render(smooth):
    form = smooth.form
    bits = form.precision_bits
    return {
        'd': smooth.d,
        'c': report.rational(smooth.c),
        'S(c)': report.rational(smooth.s_at_c),
        'dH': report.rational(smooth.partials.dH),
        'ddH': report.rational(smooth.partials.ddH),
        'd1dH': report.rational(smooth.partials.d1dH),
        'q': report.rational(smooth.hessian.q),
        'det_g': report.rational(smooth.hessian.det_g),
        'L0': report.rational(smooth.L0),
        'growth': form.growth,
        'poly_exponent': report.rational(form.poly_exponent),
        'constant': {'exact': str(form.constant_exact),
                     'value': report.decimal(form.constant, bits),
                     'agreement_bits': form.agreement_bits,
                     'precision_bits': bits},
        'aperiodic': smooth.aperiodic,
        'critical': smooth.critical,
        'isolation': isolation_identities(smooth.d),
        'minimality': {'samples': smooth.minimality.n_samples,
                       'seed': smooth.minimality.seed,
                       'below_one': smooth.minimality.passed,
                       'max_value': float(smooth.minimality.max_value),
                       'value_at_c': report.rational(smooth.minimality.value_at_c)},
        'checks': {name: {'kind': kind, 'passed': name not in smooth.failures}
                   for name, kind in smooth.checks.items()},
        'failures': smooth.failures,
    }


def handler(q=False):
    if q is False:
        return False
    request = json.loads(q)
    try:
        config = RunConfig.from_request(request, 'verify')
    except ConfigError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    started = time.monotonic()
    try:
        smooth = smooth_point_report(config.d, n_samples=MINIMALITY_SAMPLES, seed=config.seed,
                                     precision_bits=config.precision_bits)
    except ConsistencyError as e:
        log.error('Exact check failed: {}'.format(e))
        return {'results': {'d': config.d, 'failed': str(e)}, 'passed': False, 'metadata': metadata(started)}
    except DiagonalError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    if smooth.failures:
        log.error('Failed checks for d={}: {}'.format(config.d, ', '.join(smooth.failures)))
    return {'results': render(smooth), 'passed': smooth.passed, 'metadata': metadata(started)}


def introspection():
    return cmdattributes


def version():
    moduleinfo['config'] = moduleconfig
    return moduleinfo
