#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from liegrowth import version

__author__ = 'The liegrowth Project Contributors'
__copyright__ = 'Copyright 2024-2026, The liegrowth Project Contributors'
__license__ = 'GPLv3+'
__email__ = 'liegrowth@users.noreply.github.com'
__status__ = 'Beta'
__all__ = [
    'algebra', 'cli', 'core', 'experiments', 'extremal', 'forms', 'growth',
    'linalg', 'numfields', 'rings', 'roots', 'version'
]
__version__ = version.__version__
__date__ = version.__date__
__commit__ = version.__commit__
__doc__ = f"""
Exact growth and diameter computations in finite simple Lie algebras.

Split Chevalley algebras, twisted forms, Witt algebras, growth balls,
line statistics, extremal bases and prime density scans over exact
arithmetic.

author:  {__author__}
date:    {__date__}
version: {__version__}
commit:  {__commit__}
"""
