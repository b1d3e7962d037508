#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# diagasym command line front end: loads the command modules and helpers,
# dispatches one command and writes its report.

import argparse
import csv
import json
import logging
import re
import sys

try:
    from .modules import *  # noqa
    HAS_PACKAGE_MODULES = True
except Exception as e:
    logging.exception(e)
    HAS_PACKAGE_MODULES = False

try:
    from .helpers import *  # noqa
    HAS_PACKAGE_HELPERS = True
except Exception as e:
    logging.exception(e)
    HAS_PACKAGE_HELPERS = False

log = logging.getLogger('diagasym')

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def init_logger(level=False):
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    handler = logging.StreamHandler(stream=sys.stderr)
    handler.setFormatter(formatter)
    handler.setLevel(logging.INFO)
    if level:
        handler.setLevel(logging.DEBUG)
    log.handlers = [handler]
    log.setLevel(logging.INFO)
    if level:
        log.setLevel(logging.DEBUG)
    return log


def load_package_helpers():
    if not HAS_PACKAGE_HELPERS:
        log.info('Unable to load diagasym helpers from package.')
        sys.exit(EXIT_ERROR)
    hhandlers = {}
    helpers = []
    for path, helper in list(sys.modules.items()):
        if not path.startswith('diagasym.helpers.'):
            continue
        helpername = path.replace('diagasym.helpers.', '')
        hhandlers[helpername] = helper
        selftest = hhandlers[helpername].selftest()
        if selftest is None:
            helpers.append(helpername)
            log.debug('Helper loaded {}'.format(helpername))
        else:
            log.warning('Helper failed {} due to {}'.format(helpername, selftest))
    return hhandlers, helpers


def load_package_modules():
    if not HAS_PACKAGE_MODULES:
        log.info('Unable to load diagasym commands from package.')
        sys.exit(EXIT_ERROR)
    mhandlers = {}
    modules = []
    for path, module in list(sys.modules.items()):
        r = re.findall(r"diagasym[.]modules[.](\w+)[.]([^_]\w+)", path)
        if r and len(r[0]) == 2:
            moduletype, modulename = r[0]
            mhandlers[modulename] = module
            modules.append(modulename)
            log.debug('diagasym command {0} imported'.format(modulename))
            mhandlers['type:' + modulename] = moduletype
    return mhandlers, sorted(modules)


def list_modules(mhandlers, loaded_modules):
    ret = []
    for module in loaded_modules:
        x = {}
        x['name'] = module
        x['type'] = mhandlers['type:' + module]
        x['attributes'] = mhandlers[module].introspection()
        x['meta'] = mhandlers[module].version()
        ret.append(x)
    return ret


def build_query(args):
    config = {'d': args.d, 'n_max': args.n_max, 'precision_bits': args.precision_bits, 'seed': args.seed,
              'output_path': args.out, 'cache_dir': args.cache_dir, 'workers': args.workers,
              'max_order': args.max_order, 'max_degree': args.max_degree}
    return {'module': args.command, 'config': {key: value for key, value in config.items() if value is not None}}


def write_csv(rows, fp):
    writer = csv.DictWriter(fp, fieldnames=list(rows[0].keys()), lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)


def emit(response, out=None):
    """Write a command response and return the exit status it maps to."""
    if 'error' in response:
        log.error(response['error'])
        print(json.dumps({'error': response['error']}, sort_keys=True, indent=2))
        return EXIT_ERROR
    rows = response.get('results', {}).get('rows')
    if out and out.endswith('.csv') and rows:
        with open(out, 'w', newline='') as fp:
            write_csv(rows, fp)
    elif out:
        with open(out, 'w') as fp:
            fp.write(json.dumps(response, sort_keys=True, indent=2) + '\n')
    else:
        print(json.dumps(response, sort_keys=True, indent=2))
    return EXIT_OK if response.get('passed', True) else EXIT_CHECK_FAILED


def main(argv=None):
    argParser = argparse.ArgumentParser(description='diagasym - counts of simple singular vector tuples of cubical tensors and their asymptotics',
                                        formatter_class=argparse.RawTextHelpFormatter)
    argParser.add_argument('command', choices=['series', 'oracle', 'verify', 'analyze', 'ratio', 'modules'],
                           help='series: compute and cache C_d(0..n_max)\n'
                                'oracle: compare the recurrence with the product formula on a small box\n'
                                'verify: exact smooth point checks and the leading constant\n'
                                'analyze: recurrence guessing and differential approximants\n'
                                'ratio: ratio of C_d(n) to its leading term\n'
                                'modules: list the command modules')
    argParser.add_argument('--d', type=int, help='Tensor dimension d')
    argParser.add_argument('--n-max', dest='n_max', type=int, help='Last series index (default depends on d)')
    argParser.add_argument('--precision-bits', dest='precision_bits', type=int, help='mpmath working precision (default 256)')
    argParser.add_argument('--seed', type=int, help='Seed of the minimality sampler (default 0)')
    argParser.add_argument('--out', help='Write the report to this file; ratio tables ending in .csv are written as CSV')
    argParser.add_argument('--cache-dir', dest='cache_dir', help='Series cache directory (default ~/.cache/diagasym)')
    argParser.add_argument('--workers', type=int, help='Processes for the approximant family, 0 for one per CPU')
    argParser.add_argument('--max-order', dest='max_order', type=int, help='Largest recurrence order to try')
    argParser.add_argument('--max-degree', dest='max_degree', type=int, help='Largest recurrence coefficient degree to try')
    argParser.add_argument('--debug', default=False, action='store_true', help='Enable debugging')
    args = argParser.parse_args(argv)
    log = init_logger(level=args.debug)
    load_package_helpers()
    mhandlers, loaded_modules = load_package_modules()
    if args.command == 'modules':
        print(json.dumps(list_modules(mhandlers, loaded_modules), sort_keys=True, indent=2))
        return EXIT_OK
    if args.d is None:
        argParser.error('--d is required for {}'.format(args.command))
    query = build_query(args)
    log.debug('diagasym query {0}'.format(query))
    try:
        response = mhandlers[args.command].handler(q=json.dumps(query))
    except Exception:
        log.exception('Something went wrong:')
        return EXIT_ERROR
    return emit(response, args.out)


if __name__ == '__main__':
    sys.exit(main())
