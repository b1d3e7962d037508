import json
import logging
import time

from . import load_series, metadata
from diagasym.lib.diagonal import report
from diagasym.lib.diagonal.approximants import analyze_series
from diagasym.lib.diagonal.config import RunConfig
from diagasym.lib.diagonal.errors import ConfigError, DiagonalError, DomainError
from diagasym.lib.diagonal.recurrence import (MARGIN, growth_candidates, guess_p_recurrence, recurrence_to_json,
                                              verify_recurrence)

log = logging.getLogger('diagasym')

cmderrors = {'error': 'Error'}
cmdattributes = {'input': ['d', 'n_max', 'precision_bits', 'workers', 'max_order', 'max_degree', 'cache_dir'],
                 'output': ['analysis-report']}
moduleinfo = {'version': '1', 'author': 'diagasym developers',
              'description': 'Guess a P-recurrence for C_d(n) and locate its singularities with differential approximants',
              'module-type': ['command']}
moduleconfig = ['d', 'n_max', 'precision_bits', 'workers', 'max_order', 'max_degree', 'cache_dir']


def fitting_degree(n_terms, max_order, max_degree):
    """Largest degree <= max_degree whose order max_order ansatz fits in n_terms."""
    degree = (n_terms - MARGIN - max_order) // (max_order + 1) - 1
    return min(max_degree, degree)


def recurrence_section(series, config):
    degree = fitting_degree(len(series), config.max_order, config.max_degree)
    section = {'max_order': config.max_order, 'max_degree': degree, 'recurrence': None, 'growth_candidates': None}
    if degree < 0:
        section['reason'] = 'not enough terms for an order {} ansatz'.format(config.max_order)
        return section
    if degree < config.max_degree:
        log.info('Reducing the recurrence degree cap to {} for {} terms'.format(degree, len(series)))
    try:
        recurrence = guess_p_recurrence(series, config.max_order, degree)
    except DomainError as e:
        section['reason'] = str(e)
        return section
    if recurrence is None:
        section['reason'] = 'no recurrence within the ansatz'
        return section
    section['recurrence'] = recurrence_to_json(recurrence)
    section['verified'] = verify_recurrence(recurrence, series)
    section['growth_candidates'] = [report.estimate(candidate, config.precision_bits)
                                    for candidate in growth_candidates(recurrence)]
    return section


def handler(q=False):
    if q is False:
        return False
    request = json.loads(q)
    try:
        config = RunConfig.from_request(request, 'analyze')
    except ConfigError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    started = time.monotonic()
    try:
        series, _, _ = load_series(config)
        results = {'d': config.d, 'n_max': config.n_max}
        results['recurrence'] = recurrence_section(series, config)
        results['approximants'] = analyze_series(series, d=config.d if config.d >= 3 else None,
                                                 precision_bits=config.precision_bits, workers=config.workers)
    except DiagonalError as e:
        cmderrors['error'] = str(e)
        return cmderrors
    log.info('Analysis of C_{} with {} terms done in {:.3f}s'.format(config.d, len(series), time.monotonic() - started))
    return {'results': results, 'passed': True, 'metadata': metadata(started)}


def introspection():
    return cmdattributes


def version():
    moduleinfo['config'] = moduleconfig
    return moduleinfo
