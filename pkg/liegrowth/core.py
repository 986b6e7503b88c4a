#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import os
from datetime import datetime

import h5py
import numpy as np

from liegrowth.version import __commit__, __date__, __version__

LOG = logging.getLogger('core')

HDF5_options = {
    'chunks': True,
    'shuffle': True,
    'fletcher32': True,
    'compression': 'gzip',
    'compression_opts': 6
}


class LieGrowthError(Exception):
    """Base class of all errors raised by liegrowth."""


class NotPrime(LieGrowthError, ValueError):
    pass


class NotIrreducible(LieGrowthError, ValueError):
    pass


class NotInert(LieGrowthError, ValueError):
    pass


class InvalidType(LieGrowthError, ValueError):
    pass


class NotASymmetry(LieGrowthError, ValueError):
    pass


class OrderMismatch(LieGrowthError, ValueError):
    pass


class PrimeTooSmall(LieGrowthError, ValueError):
    pass


class DegreeNotDividing(LieGrowthError, ValueError):
    pass


class ZeroElement(LieGrowthError, ValueError):
    pass


class NotGenerating(LieGrowthError, ValueError):
    pass


class NotFullRank(LieGrowthError, ValueError):
    pass


class LineNotFull(LieGrowthError, ValueError):
    pass


class NotDecomposable(LieGrowthError, ValueError):
    pass


class NotNilpotent(LieGrowthError, ArithmeticError):
    pass


class CharTooSmall(LieGrowthError, ArithmeticError):
    pass


class SignConflict(LieGrowthError, RuntimeError):
    pass


class SearchExhausted(LieGrowthError, RuntimeError):
    pass


class CutoffExceeded(LieGrowthError, RuntimeError):
    pass


class PipelineStall(LieGrowthError, RuntimeError):

    def __init__(self, msg, span=None):
        super().__init__(msg)
        self.span = span


class InsufficientPrimes(LieGrowthError, RuntimeError):
    pass


class VerificationError(LieGrowthError, RuntimeError):
    pass


def exit_error(text, exc):
    LOG.error(text)
    raise exc(text)


def h5_store_str(f, a, s):
    f.create_dataset(a,
                     data=np.array(s.encode('utf-8'),
                                   dtype=h5py.string_dtype('utf-8', len(s))))


def h5_read_str(f, a):
    tmp = f[a][()]
    if isinstance(tmp, bytes):
        tmp = tmp.decode('utf-8')
    return tmp


def write_h5_header(h5f, now=None):
    if now is None:
        now = datetime.now()
    h5_store_str(h5f, 'datetime', now.isoformat())

    h5_store_str(h5f, 'h5py/libver', str(h5f.libver))
    h5_store_str(h5f, 'h5py/version', h5py.version.version)
    h5_store_str(h5f, 'h5py/hdf5_version', h5py.version.hdf5_version)

    h5_store_str(h5f, 'liegrowth/__date__', __date__)
    h5_store_str(h5f, 'liegrowth/__version__', __version__)
    h5_store_str(h5f, 'liegrowth/__commit__', __commit__)


def h5_store_table(f, prefix, columns, rows, params=HDF5_options):
    """Store a list of record rows column by column under `prefix`."""
    for i, name in enumerate(columns):
        col = [r[i] for r in rows]
        if all(isinstance(c, (int, np.integer)) for c in col) and col and \
                max(abs(int(c)) for c in col) < 2**62:
            data = np.array(col, dtype=np.int64)
        elif all(isinstance(c, (float, int, np.number)) for c in col) and col:
            data = np.array(col, dtype=float)
        else:
            h5_store_str(f, prefix + name, '\n'.join(str(c) for c in col))
            continue
        f.create_dataset(prefix + name, data=data, **params)


def add_log_parameters(parser):
    parser.add_argument('--file-log', dest='file_log', action='store_true')
    parser.add_argument('--no-file-log', dest='file_log', action='store_false')
    parser.set_defaults(file_log=False)
    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        default='ERROR')


def setup_logging(args):
    if args.log_level == 'DEBUG':
        level = logging.DEBUG
    elif args.log_level == 'INFO':
        level = logging.INFO
    elif args.log_level == 'WARNING':
        level = logging.WARNING
    elif args.log_level == 'ERROR':
        level = logging.ERROR
    elif args.log_level == 'CRITICAL':
        level = logging.CRITICAL
    else:
        raise NotImplementedError(f'Unknown logging level {args.log_level}')

    if args.file_log:
        fn = datetime.now().strftime('%Y%m%d-%H%M%S-' + str(os.getpid()) +
                                     '.log')
        logging.basicConfig(filename=fn, level=level)
    else:
        logging.basicConfig(level=level)


def get_workers():
    """Worker processes for parallel trials, from LIEGROWTH_WORKERS."""
    try:
        n = int(os.environ.get('LIEGROWTH_WORKERS', '1'))
    except ValueError:
        LOG.warning('ignoring invalid LIEGROWTH_WORKERS')
        n = 1
    return max(1, n)
