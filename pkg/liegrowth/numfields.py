#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Cyclic number fields from Gaussian periods and their inert primes."""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, prod
from multiprocessing import Pool
from time import time

import numpy as np
import sympy

from liegrowth.core import (DegreeNotDividing, InsufficientPrimes,
                            get_workers)
from liegrowth.linalg import rational_solve
from liegrowth.rings import (NumberField, check_prime, has_root_mod_p,
                             poly_discriminant)

LOG = logging.getLogger('numfields')

FAMILY_BOUND = 1000


def prime_sieve(B):
    """All primes <= B as an int64 array."""
    return np.fromiter(sympy.primerange(2, B + 1), dtype=np.int64)


def _cyclic_mul(a, b, q):
    c = np.convolve(a, b)
    out = c[:q].copy()
    out[:len(c) - q] += c[q:]
    return out


def _cyclotomic_integer(a):
    """Value of sum a_k zeta^k if it is a rational integer, else None."""
    if np.any(a[1:] != a[1]):
        return None
    return int(a[0] - a[1])


def _cyclotomic_reduce(a, q):
    """Coordinates in the basis 1, zeta, ..., zeta^(q-2)."""
    return [int(x - a[q - 1]) for x in a[:q - 1]]


@dataclass
class CyclotomicSubfield:
    q: int
    d: int
    f: list
    disc: int
    generator: int
    sigma_image: list = field(default_factory=list)

    def number_field(self):
        return NumberField(self.f, self.sigma_image,
                           name=f'K({self.q},{self.d})')

    def to_json(self):
        return {
            'q': self.q,
            'd': self.d,
            'f': list(self.f),
            'disc': self.disc,
            'generator': self.generator,
            'sigma_image': [str(c) for c in self.sigma_image],
        }


def _primitive_root(q):
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in sympy.primefactors(q -
                                                                       1)):
            return g
    return 1


def gaussian_period_polynomial(q, d):
    """Minimal polynomial of the Gaussian periods of degree d for Q(zeta_q).

    Periods sum zeta^(g^k h) over the index-d subgroup H of (Z/q)^*. The
    elementary symmetric functions are expanded exactly in Z[zeta_q].
    """
    q = check_prime(q)
    if d not in (2, 3) or (q - 1) % d:
        raise DegreeNotDividing(f'{d} does not divide {q} - 1')
    g = _primitive_root(q)
    H = [pow(g, d * j, q) for j in range((q - 1) // d)]
    periods = []
    for k in range(d):
        a = np.zeros(q, dtype=np.int64)
        gk = pow(g, k, q)
        for h in H:
            a[gk * h % q] += 1
        periods.append(a)
    one = np.zeros(q, dtype=np.int64)
    one[0] = 1

    def esym(r):
        acc = np.zeros(q, dtype=np.int64)
        for idx in combinations(range(d), r):
            t = one
            for i in idx:
                t = _cyclic_mul(t, periods[i], q)
            acc = acc + t
        v = _cyclotomic_integer(acc)
        assert v is not None, 'symmetric function is not an integer'
        return v

    e = [esym(r) for r in range(1, d + 1)]
    if d == 2:
        f = [e[1], -e[0], 1]
    else:
        f = [-e[2], e[1], -e[0], 1]
    disc = poly_discriminant(f)
    rest = abs(disc)
    while rest % q == 0:
        rest //= q
    assert rest == 1 and abs(disc) > 1, f'discriminant {disc} not a power of q'

    # sigma(w) with w the first period: the next period as a polynomial in w
    powers = [one]
    for s in range(1, d):
        powers.append(_cyclic_mul(powers[-1], periods[0], q))
    M = [list(row) for row in zip(*[_cyclotomic_reduce(P, q)
                                    for P in powers])]
    image = rational_solve(M, _cyclotomic_reduce(periods[1], q))
    assert image is not None, 'conjugate period not in Q(w)'
    LOG.info(f'period polynomial ({q}, {d}): {f}')
    return CyclotomicSubfield(q, d, f, disc, g, image)


@dataclass
class PrimeClassification:
    p: int
    status: str


def classify_prime(f, p, disc=None):
    if disc is None:
        disc = poly_discriminant(f)
    if disc % p == 0:
        return PrimeClassification(p, 'ramified')
    if len(f) - 1 > 3:
        raise ValueError('only degrees 2 and 3 are supported')
    if has_root_mod_p(f, p):
        return PrimeClassification(p, 'split')
    return PrimeClassification(p, 'inert')


class _ClassifyBlock:

    def __init__(self, polys):
        self.polys = polys
        self.discs = [poly_discriminant(f) for f in polys]

    def __call__(self, primes):
        out = np.zeros((len(self.polys), len(primes)), dtype=np.int8)
        for i, (f, disc) in enumerate(zip(self.polys, self.discs)):
            for j, p in enumerate(primes):
                s = classify_prime(f, int(p), disc).status
                out[i, j] = {'inert': 0, 'split': 1, 'ramified': 2}[s]
        return out


def predicted_density(d):
    """Share of d-cycles in the cyclic Galois group of order d."""
    return (d - 1) / d


@dataclass
class DensityReport:
    polys: list
    bound: int
    count: int
    densities: list
    predicted: list
    union: float
    predicted_union: float
    independent: bool

    def to_json(self):
        return {
            'polys': [list(f) for f in self.polys],
            'bound': self.bound,
            'count': self.count,
            'densities': self.densities,
            'predicted': self.predicted,
            'union': self.union,
            'predicted_union': self.predicted_union,
            'independent': self.independent,
        }


def classify_primes(polys, primes, workers=None):
    """Status codes (0 inert, 1 split, 2 ramified), one row per polynomial."""
    if workers is None:
        workers = get_workers()
    worker = _ClassifyBlock(polys)
    if workers <= 1 or len(primes) < 1000:
        return worker(primes)
    blocks = np.array_split(primes, 4 * workers)
    with Pool(workers) as pool:
        parts = pool.map(worker, blocks)
    return np.hstack(parts)


def density_scan(polys, B=10**5, workers=None):
    t1 = time()
    polys = [[int(c) for c in f] for f in polys]
    primes = prime_sieve(B)
    status = classify_primes(polys, primes, workers)
    inert = status == 0
    n = len(primes)
    densities = [float(r.sum()) / n for r in inert]
    predicted = [predicted_density(len(f) - 1) for f in polys]
    discs = [poly_discriminant(f) for f in polys]
    independent = all(
        gcd(discs[i], discs[j]) == 1 for i in range(len(discs))
        for j in range(i + 1, len(discs)))
    if not independent:
        LOG.warning('discriminants are not pairwise coprime')
    union = float(inert.any(axis=0).sum()) / n
    predicted_union = 1 - prod(1 - x for x in predicted)
    LOG.info(f'density_scan(): {n} primes {time() - t1:.1f}')
    return DensityReport(polys, B, n, densities, predicted, union,
                         predicted_union, independent)


def independent_family(d, count, bound=FAMILY_BOUND):
    """Subfields from the smallest primes q = 1 (mod 2d), which are real
    cyclic fields with pairwise coprime discriminants."""
    out = []
    for q in prime_sieve(bound):
        q = int(q)
        if q % (2 * d) != 1:
            continue
        out.append(gaussian_period_polynomial(q, d))
        if len(out) == count:
            break
    if len(out) < count:
        raise InsufficientPrimes(
            f'only {len(out)} primes q = 1 mod {2 * d} below {bound}')
    return out
