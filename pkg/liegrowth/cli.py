#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Command line driver for the liegrowth experiments.

Exit codes are 0 on success, 2 on configuration errors and 3 when a
verification fails.
"""

import argparse
import json
import logging
import sys

import sympy

from liegrowth.core import (LieGrowthError, PipelineStall, SignConflict,
                            VerificationError, add_log_parameters,
                            exit_error, setup_logging)
from liegrowth.experiments import (EXPERIMENTS, run_experiment, write_csv,
                                   write_h5, write_json)
from liegrowth.version import __version__

LOG = logging.getLogger('cli')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3


def _int_list(s):
    return [int(x) for x in s.split(',') if x]


def _str_list(s):
    return [x for x in s.split(',') if x]


def p_range(s):
    """Primes in a:b, both ends included."""
    try:
        a, b = (int(x) for x in s.split(':'))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a:b, got {s}')
    return [int(q) for q in sympy.primerange(a, b + 1)]


def add_experiment_arguments(parser, info):
    """One option per parameter with flag 1, named after the key."""
    for key, (typ, rng, desc, flag) in info.items():
        if not flag:
            continue
        opt = '--' + key.replace('_', '-')
        if typ is list:
            conv = _int_list if rng is int else _str_list
            parser.add_argument(opt, dest=key, type=conv, default=None,
                                help=desc + ' (comma separated)')
        elif typ is str:
            parser.add_argument(opt, dest=key, type=str, default=None,
                                choices=rng, help=desc)
        else:
            parser.add_argument(opt, dest=key, type=typ, default=None,
                                help=desc)


def add_common_arguments(parser):
    parser.add_argument('--p-range', type=p_range, default=None,
                        metavar='A:B', help='All primes in [A, B]')
    parser.add_argument('--twist', type=int, default=None, choices=[1, 2, 3],
                        help='Twist order d; combined with --type as dType')
    parser.add_argument('--out', type=str, default=None,
                        help='Output file (default stdout)')
    parser.add_argument('--format', choices=['csv', 'json', 'h5'],
                        default='csv')
    parser.add_argument('--params', type=argparse.FileType('rb'),
                        default=None, metavar='JSON',
                        help='Load a configuration file')
    parser.add_argument('--dump-params', action='store_true',
                        help='Print the merged configuration and exit')
    if '--timing' not in parser._option_string_actions:
        parser.add_argument('--timing', action='store_true')
    add_log_parameters(parser)


def make_parser():
    parser = argparse.ArgumentParser(
        prog='liegrowth',
        description='Diameter and growth experiments for finite simple Lie '
        'algebras',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='experiment', required=True)
    for name, cls in EXPERIMENTS.items():
        p = sub.add_parser(
            name, help=(cls.__doc__ or name).strip().split('\n')[0],
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        add_experiment_arguments(p, cls.get_parameters_info())
        add_common_arguments(p)
    return parser


def merge_parameters(args):
    """Defaults, then the --params file, then explicit flags."""
    cls = EXPERIMENTS[args.experiment]
    info = cls.get_parameters_info()
    pars = {}
    if args.params is not None:
        try:
            pars = json.load(args.params)
        except ValueError as e:
            exit_error(f'cannot load {args.params.name}: {e}', ValueError)
        finally:
            args.params.close()
        if not isinstance(pars, dict):
            exit_error(f'{args.params.name} is not a JSON object',
                       ValueError)
    for key in info:
        v = getattr(args, key, None)
        if v is not None:
            pars[key] = v
    if args.p_range is not None:
        if 'p' not in info:
            exit_error(f'{args.experiment} takes no primes', ValueError)
        if info['p'][0] is list:
            pars['p'] = args.p_range
        else:
            pars['p'] = args.p_range[0]
    if args.twist is not None and args.twist > 1:
        if 'type' not in info:
            exit_error(f'{args.experiment} takes no type', ValueError)
        kind = pars.get('type', cls.get_default_parameters()['type'])
        if not kind[0].isdigit():
            pars['type'] = f'{args.twist}{kind}'
    if args.timing and 'timing' in info:
        pars['timing'] = 1
    return pars


def write_output(args, config, out):
    if args.format == 'h5':
        if args.out is None:
            exit_error('--format h5 needs --out', ValueError)
        write_h5(out, args.out, config)
        return
    writer = write_csv if args.format == 'csv' else write_json
    kwargs = {} if args.format == 'csv' else {'config': config}
    if args.out is None:
        writer(out, sys.stdout, **kwargs)
    else:
        with open(args.out, 'w', newline='') as f:
            writer(out, f, **kwargs)
        print(json.dumps(out.summary, sort_keys=True, default=str))


def run(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CONFIG
    setup_logging(args)

    try:
        pars = merge_parameters(args)
        if args.dump_params:
            exp = EXPERIMENTS[args.experiment](pars)
            print(json.dumps(exp.pars, sort_keys=True, indent=2))
            return EXIT_OK
        config, out = run_experiment(args.experiment, pars)
        write_output(args, config, out)
    except (VerificationError, PipelineStall, SignConflict) as e:
        LOG.error(f'{args.experiment}: {e}')
        print(f'verification failed: {e}', file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, LieGrowthError) as e:
        LOG.error(f'{args.experiment}: {e}')
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK if out.ok else EXIT_VERIFY


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
