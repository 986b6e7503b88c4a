#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Lie algebras given by structure constants over a coefficient ring.

Vectors are numpy arrays of length dim: int64 over a prime field, object
arrays over every other ring.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from liegrowth.core import CharTooSmall, NotNilpotent
from liegrowth.linalg import Echelon
from liegrowth.rings import (QQ, ZZ, ExtField, ExtFieldElement, IntegerRing,
                             NumberField, NumberFieldElement, PrimeField,
                             check_prime)
from liegrowth.roots import ChevalleyConstants, RootSystem

LOG = logging.getLogger('algebra')

DENSE_MAX = 140
JACOBI_DENSE_MAX = 60


def _is_int(c):
    return isinstance(c, (int, np.integer)) or (isinstance(c, Fraction)
                                               and c.denominator == 1)


class LieAlgebra:
    """Finite-dimensional Lie algebra with a basis b_0, ..., b_{d-1}.

    `constants` is either a dict {(i, j): {k: c}} or an iterable of
    [i, j, k, c] with [b_i, b_j] = sum_k c b_k. Only one of (i, j) and
    (j, i) needs to be given; if both are, they must be antisymmetric.
    """

    def __init__(self, ring, labels, constants, name=None, check=True,
                 rng=None):
        self.ring = ring
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name or f'lie({self.dim})'
        self.log = logging.getLogger(self.__class__.__name__)
        self.named = {}
        self._index = {s: i for i, s in enumerate(self.labels)}

        table = {}
        for i, j, k, c in self._iter_constants(constants):
            if i == j:
                assert c == 0, f'[b_{i}, b_{i}] must vanish'
                continue
            c = ring(c)
            prev = table.get((i, j), {}).get(k)
            if prev is not None:
                assert prev == c, f'conflicting constants at {i}, {j}'
                continue
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c if not isinstance(
                ring, PrimeField) else (-c) % ring.p
        self._rows = [[] for _ in range(self.dim)]
        for (i, j), entries in table.items():
            for k, c in entries.items():
                if c != 0:
                    self._rows[i].append((j, k, c))
        self.nnz = sum(len(r) for r in self._rows)

        self.T = None
        if isinstance(ring, PrimeField) and self.dim <= DENSE_MAX:
            d = self.dim
            T = np.zeros((d, d, d), dtype=np.int64)
            for i, row in enumerate(self._rows):
                for j, k, c in row:
                    T[i, j, k] = c
            self.T = T
        if isinstance(ring, PrimeField):
            arr = [(i, j, k, c) for i, row in enumerate(self._rows)
                   for j, k, c in row]
            self._I = np.array([a[0] for a in arr], dtype=np.int64)
            self._J = np.array([a[1] for a in arr], dtype=np.int64)
            self._K = np.array([a[2] for a in arr], dtype=np.int64)
            self._C = np.array([a[3] for a in arr], dtype=np.int64)

        if check:
            self.check_jacobi(rng=rng)

    @staticmethod
    def _iter_constants(constants):
        if isinstance(constants, dict):
            for (i, j), entries in constants.items():
                for k, c in entries.items():
                    yield int(i), int(j), int(k), c
        else:
            for i, j, k, c in constants:
                yield int(i), int(j), int(k), c

    # vectors

    def zero(self):
        if self.ring.dtype is object:
            v = np.empty(self.dim, dtype=object)
            v[:] = [self.ring.zero] * self.dim
            return v
        return np.zeros(self.dim, dtype=np.int64)

    def basis(self, i):
        if isinstance(i, str):
            i = self.index(i)
        v = self.zero()
        v[i] = self.ring.one
        return v

    def vector(self, coeffs):
        if isinstance(coeffs, dict):
            v = self.zero()
            for s, c in coeffs.items():
                v[self.index(s) if isinstance(s, str) else s] = self.ring(c)
            return v
        if self.ring.dtype is object:
            v = np.empty(self.dim, dtype=object)
            v[:] = [self.ring(c) for c in coeffs]
            return v
        return self.ring.normalize(np.asarray(coeffs, dtype=np.int64))

    def element(self, name):
        if name in self.named:
            return self.named[name].copy()
        return self.basis(name)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f'unknown basis label {label!r}')

    def is_zero(self, v):
        return not np.any(v != 0)

    def format(self, v):
        terms = []
        for i in np.flatnonzero(v != 0):
            terms.append(f'{v[i]}*{self.labels[i]}')
        return ' + '.join(terms) if terms else '0'

    # brackets

    def bracket(self, x, y):
        if self.T is not None:
            M = np.tensordot(x, self.T, axes=(0, 0)) % self.ring.p
            return (y @ M) % self.ring.p
        if isinstance(self.ring, PrimeField):
            p = self.ring.p
            nz = np.flatnonzero(x)
            out = np.zeros(self.dim, dtype=np.int64)
            if 4 * len(nz) < self.dim:
                for i in nz:
                    xi = int(x[i])
                    for j, k, c in self._rows[i]:
                        if y[j]:
                            out[k] = (out[k] + xi * int(y[j]) * c) % p
                return out
            prod = self._C * x[self._I] % p * y[self._J] % p
            np.add.at(out, self._K, prod)
            return out % p
        out = self.zero()
        for i in np.flatnonzero(x != 0):
            xi = x[i]
            for j, k, c in self._rows[i]:
                yj = y[j]
                if yj != 0:
                    out[k] = out[k] + xi * yj * c
        return out

    def ad(self, x):
        """Matrix of ad_x; column j is [x, b_j]."""
        d = self.dim
        if self.T is not None:
            M = np.tensordot(x, self.T, axes=(0, 0)) % self.ring.p
            return np.ascontiguousarray(M.T)
        if isinstance(self.ring, PrimeField):
            A = np.zeros((d, d), dtype=np.int64)
            for i in np.flatnonzero(x):
                for j, k, c in self._rows[i]:
                    A[k, j] = (A[k, j] + int(x[i]) * c) % self.ring.p
            return A
        A = np.empty((d, d), dtype=object)
        A[:] = self.ring.zero
        for i in np.flatnonzero(x != 0):
            for j, k, c in self._rows[i]:
                A[k, j] = A[k, j] + x[i] * c
        return A

    def bracket_many(self, X, Y):
        """All brackets [X_a, Y_b] as an array of shape (len(X), len(Y), d).
        Prime fields only."""
        p = self.ring.p
        X = np.atleast_2d(X)
        Y = np.atleast_2d(Y)
        if self.T is not None:
            M = np.tensordot(X, self.T, axes=(1, 0)) % p
        else:
            M = np.stack([self.ad(x).T for x in X])
        return np.matmul(Y[np.newaxis], M) % p

    def bracket_rows(self, X, Y):
        """Row-wise brackets [X_a, Y_a]. Prime fields only."""
        p = self.ring.p
        if self.T is not None:
            M = np.tensordot(X, self.T, axes=(1, 0)) % p
            return np.einsum('aj,ajk->ak', Y, M) % p
        return np.array([self.bracket(x, y) for x, y in zip(X, Y)],
                        dtype=np.int64).reshape(len(X), self.dim)

    def structure_triples(self):
        out = []
        for i, row in enumerate(self._rows):
            for j, k, c in row:
                if i < j:
                    out.append((i, j, k, c))
        return sorted(out, key=lambda t: t[:3])

    # checks

    def _int_tensor(self):
        if self.T is not None:
            return self.T, self.ring.p
        if not isinstance(self.ring, IntegerRing):
            return None, None
        vals = [c for row in self._rows for _, _, c in row]
        if not all(_is_int(c) and abs(int(c)) < 2**20 for c in vals):
            return None, None
        d = self.dim
        T = np.zeros((d, d, d), dtype=np.int64)
        for i, row in enumerate(self._rows):
            for j, k, c in row:
                T[i, j, k] = int(c)
        return T, None

    def check_jacobi(self, samples=10000, rng=None):
        """Verify the Jacobi identity on basis triples.

        Exhaustive for small integral algebras, sampled otherwise.
        """
        d = self.dim
        T, p = (None, None)
        if d <= DENSE_MAX:
            T, p = self._int_tensor()
        if rng is None:
            rng = np.random.default_rng(0)
        if T is not None and d > JACOBI_DENSE_MAX:
            for i, j, l in rng.integers(0, d, size=(samples, 3)):
                s = (T[i, j] @ T[:, l, :] + T[j, l] @ T[:, i, :] +
                     T[l, i] @ T[:, j, :])
                if p is not None:
                    s %= p
                if np.any(s):
                    raise AssertionError(
                        f'Jacobi fails on {self.labels[i]}, '
                        f'{self.labels[j]}, {self.labels[l]}')
            return True
        if T is not None:
            flat_in = T.reshape(d, d * d)
            flat_out = T.reshape(d * d, d)
            for i in range(d):
                # [[b_i, b_j], b_l], [[b_j, b_l], b_i], [[b_l, b_i], b_j]
                t1 = (T[i] @ flat_in).reshape(d, d, d)
                t2 = (flat_out @ T[:, i, :]).reshape(d, d, d)
                t3 = np.einsum('lm,mjk->jlk', T[:, i, :], T)
                s = t1 + t2 + t3
                if p is not None:
                    s %= p
                if np.any(s):
                    j, l, k = np.argwhere(s)[0]
                    raise AssertionError(
                        f'Jacobi fails on {self.labels[i]}, '
                        f'{self.labels[j]}, {self.labels[l]}')
            return True
        n = samples if self.ring.dtype is not object else min(samples, 500)
        triples = rng.integers(0, d, size=(n, 3))
        for i, j, l in triples:
            x, y, z = self.basis(i), self.basis(j), self.basis(l)
            s = (self.bracket(self.bracket(x, y), z) +
                 self.bracket(self.bracket(y, z), x) +
                 self.bracket(self.bracket(z, x), y))
            if isinstance(self.ring, PrimeField):
                s %= self.ring.p
            if not self.is_zero(s):
                raise AssertionError(
                    f'Jacobi fails on {self.labels[i]}, {self.labels[j]}, '
                    f'{self.labels[l]}')
        return True

    # serialisation

    def to_json(self):
        return {
            'ring': self.ring.descriptor(),
            'dim': self.dim,
            'labels': self.labels,
            'constants': [[i, j, k, _encode(c)]
                          for i, j, k, c in self.structure_triples()],
        }

    @classmethod
    def from_json(cls, d, check=True):
        ring = ring_from_descriptor(d['ring'])
        constants = [(i, j, k, _decode(c, ring))
                     for i, j, k, c in d['constants']]
        out = cls(ring, d['labels'], constants, check=check)
        assert out.dim == d['dim']
        return out

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def __repr__(self):
        return f'LieAlgebra({self.name}, dim={self.dim}, ring={self.ring})'


def _encode(c):
    if isinstance(c, (int, np.integer)):
        return int(c)
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else str(c)
    if isinstance(c, (ExtFieldElement, NumberFieldElement)):
        return [_encode(a) for a in c.coeffs]
    raise TypeError(f'cannot encode {c!r}')


def _decode(c, ring):
    if isinstance(c, list):
        return ring([_decode(a, QQ) for a in c])
    if isinstance(c, str):
        return Fraction(c)
    return c


def ring_from_descriptor(desc):
    p, d, f = desc['p'], desc['d'], desc['f']
    if p == 0:
        if d == 1:
            return QQ if desc.get('name') == 'QQ' else ZZ
        return NumberField(f)
    if d == 1:
        return PrimeField(p)
    return ExtField(p, f)


def chevalley_algebra(R, ring, constants=None, check=True):
    """g(ring) for the Chevalley basis of the root system R.

    The elements e, f and h of the highest root are available through
    `g.element('e')` and friends.
    """
    if not isinstance(R, RootSystem):
        R = RootSystem(R)
    C = constants if constants is not None else ChevalleyConstants(R)
    g = LieAlgebra(ring, C.labels(), C.table(), name=f'{R.type}({ring})',
                   check=check)
    g.root_system = R
    g.constants = C
    lam = R.highest
    g.named['e'] = g.basis(C.basis_index(lam))
    g.named['f'] = g.basis(C.basis_index(R.neg(lam)))
    g.named['h'] = g.bracket(g.named['e'], g.named['f'])
    return g


class MatrixLieAlgebra(LieAlgebra):
    """sl_n in the basis E_ij (i != j) and H_i = E_ii - E_{i+1,i+1}.

    The positive E_ij come in the same order as the positive roots of
    A_{n-1}, then the H_i, then the E_ji.
    """

    def __init__(self, n, ring, check=True):
        self.n = n
        pos = sorted(((i, j) for i in range(n) for j in range(i + 1, n)),
                     key=lambda ij: (ij[1] - ij[0], tuple(
                         int(ij[0] <= t < ij[1]) for t in range(n - 1))))
        self.units = pos + [('H', i) for i in range(n - 1)] + \
            [(j, i) for i, j in pos]
        labels = []
        for u in self.units:
            if u[0] == 'H':
                labels.append(f'H{u[1] + 1}')
            else:
                labels.append(f'E{u[0] + 1}{u[1] + 1}')
        self._unit_index = {u: k for k, u in enumerate(self.units)}
        mats = [self._unit_matrix(u) for u in self.units]
        constants = {}
        for a, A in enumerate(mats):
            for b, B in enumerate(mats):
                if a >= b:
                    continue
                coords = self._coords(A @ B - B @ A)
                entries = {k: c for k, c in enumerate(coords) if c}
                if entries:
                    constants[(a, b)] = entries
        super().__init__(ring, labels, constants, name=f'sl{n}({ring})',
                         check=check)

    def _unit_matrix(self, u):
        M = np.zeros((self.n, self.n), dtype=np.int64)
        if u[0] == 'H':
            M[u[1], u[1]] = 1
            M[u[1] + 1, u[1] + 1] = -1
        else:
            M[u] = 1
        return M

    def _coords(self, M):
        """Coordinates of a traceless matrix in the basis."""
        out = [0] * len(self.units)
        for i in range(self.n):
            for j in range(self.n):
                if i != j and M[i, j]:
                    out[self._unit_index[(i, j)]] = M[i, j]
        # diagonal: H coefficients are partial sums
        acc = 0
        for i in range(self.n - 1):
            acc += M[i, i]
            out[self._unit_index[('H', i)]] = acc
        assert acc + M[self.n - 1, self.n - 1] == 0, 'matrix not traceless'
        return [int(c) for c in out]

    def from_matrix(self, M):
        return self.vector(self._coords(np.asarray(M)))

    def to_matrix(self, v):
        M = np.zeros((self.n, self.n), dtype=object)
        for k, c in enumerate(v):
            if c != 0:
                M = M + c * self._unit_matrix(self.units[k]).astype(object)
        return M


def sl_matrix_algebra(n, ring, check=True):
    return MatrixLieAlgebra(n, ring, check=check)


def witt_algebra(p, check=True):
    """W(p): basis e_{-1}, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}."""
    p = check_prime(p)
    if p < 5:
        raise CharTooSmall(f'witt algebra needs p >= 5, got {p}')
    F = PrimeField(p)
    idx = list(range(-1, p - 1))
    constants = []
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            if a < b and -1 <= i + j <= p - 2 and (j - i) % p:
                constants.append((a, b, i + j + 1, (j - i) % p))
    g = LieAlgebra(F, [f'e_{i}' for i in idx], constants, name=f'W({p})',
                   check=check)
    g.witt_offset = 1
    return g


def witt_index(i):
    return i + 1


def _inverse_factorial(ring, i):
    f = factorial(i)
    if isinstance(ring, PrimeField):
        return pow(f, -1, ring.p)
    if isinstance(ring, ExtField):
        return ring(pow(f, -1, ring.p))
    return Fraction(1, f)


def nilpotency_order(g, z):
    """Smallest m with ad_z^m = 0, or None."""
    A = g.ad(z)
    P = A
    for m in range(1, g.dim + 2):
        if not np.any(P != 0):
            return m
        P = _matmul(g, A, P)
    return None


def _matmul(g, A, B):
    if isinstance(g.ring, PrimeField):
        return (A @ B) % g.ring.p
    return np.dot(A, B)


def exp_ad(g, z):
    """Matrix of exp(ad_z) = sum_{i<m} ad_z^i / i!."""
    A = g.ad(z)
    m = nilpotency_order(g, z)
    if m is None:
        raise NotNilpotent(f'ad of {g.format(z)} is not nilpotent')
    p = g.ring.characteristic
    if p and p <= m:
        raise CharTooSmall(
            f'nilpotency order {m} needs characteristic > {m}, got {p}')
    d = g.dim
    if isinstance(g.ring, PrimeField):
        E = np.eye(d, dtype=np.int64)
    else:
        E = np.empty((d, d), dtype=object)
        E[:] = g.ring.zero
        for i in range(d):
            E[i, i] = g.ring.one
    out = E.copy()
    P = E
    for i in range(1, m):
        P = _matmul(g, A, P)
        c = _inverse_factorial(g.ring, i)
        if isinstance(g.ring, PrimeField):
            out = (out + c * P) % g.ring.p
        else:
            out = out + P * c
    if g.ring == ZZ:
        out = np.vectorize(
            lambda a: int(a) if _is_int(a) else Fraction(a),
            otypes=[object])(out)
    return out


def exp_ad_apply(g, z, x):
    E = exp_ad(g, z)
    y = _matmul(g, E, x)
    return y


class Subspace:
    """Echelonised subspace with optional words for its spanning vectors."""

    def __init__(self, g, echelon, vectors, words=None):
        self.g = g
        self.echelon = echelon
        self.vectors = vectors
        self.words = words

    @property
    def dim(self):
        return len(self.echelon)

    def is_full(self):
        return self.dim == self.g.dim

    def basis(self):
        return self.echelon.rows

    def contains(self, v):
        return self.echelon.contains(v)


def _echelon_for(g):
    if isinstance(g.ring, PrimeField):
        return Echelon(g.dim, g.ring.p)
    if isinstance(g.ring, IntegerRing):
        return Echelon(g.dim)
    raise TypeError(f'closure over {g.ring} is not supported')


def _closure(g, seeds, gens, track_words=False, seed_words=None,
             gen_words=None):
    E = _echelon_for(g)
    vectors, words, todo = [], [], []
    for n, v in enumerate(seeds):
        if E.add(v):
            vectors.append(v)
            todo.append(len(vectors) - 1)
            if track_words:
                words.append(seed_words[n] if seed_words else ('gen', n))
    while todo and not E.full():
        w = todo.pop(0)
        for s_n, s in enumerate(gens):
            u = g.bracket(s, vectors[w])
            if E.add(u):
                vectors.append(u)
                todo.append(len(vectors) - 1)
                if track_words:
                    sw = gen_words[s_n] if gen_words else ('gen', s_n)
                    words.append(('bracket', sw, words[w]))
                if E.full():
                    break
    return Subspace(g, E, vectors, words if track_words else None)


def subalgebra_closure(g, S, track_words=False):
    """Subalgebra generated by S, spanned by right-normed brackets of S."""
    S = [np.asarray(s) for s in S]
    return _closure(g, S, S, track_words=track_words)


def ideal_closure(g, v):
    gens = [g.basis(i) for i in range(g.dim)]
    return _closure(g, [v], gens)


@dataclass
class SimplicityVerdict:
    probably_simple: bool
    trials: int
    witness: object = None
    ideal_dim: int = None

    def describe(self):
        if self.probably_simple:
            return f'probably simple ({self.trials} trials)'
        return f'proper ideal of dimension {self.ideal_dim}'


def simplicity_check(g, trials=20, rng=None):
    """Monte Carlo simplicity test through ideals of random vectors."""
    if not isinstance(g.ring, PrimeField):
        raise TypeError('simplicity_check needs a finite prime field')
    if rng is None:
        rng = np.random.default_rng(0)
    done = 0
    while done < trials:
        v = g.ring.random(rng, g.dim)
        if not np.any(v):
            continue
        done += 1
        I = ideal_closure(g, v)
        if not I.is_full():
            g.log.info(f'proper ideal of dimension {I.dim}')
            return SimplicityVerdict(False, done, v, I.dim)
    return SimplicityVerdict(True, trials, None, g.dim)


@dataclass
class Sl2Triple:
    e: np.ndarray
    h: np.ndarray
    f: np.ndarray

    def verify(self, g):
        def eq(a, b):
            return g.is_zero(a - b) if g.ring.dtype is object else \
                not np.any((a - b) % g.ring.p)

        return (eq(g.bracket(self.h, self.e), 2 * self.e)
                and eq(g.bracket(self.h, self.f), -2 * self.f)
                and eq(g.bracket(self.e, self.f), self.h))


def left_normed(g, x, ys):
    """[x, y_1, ..., y_k] = [[[x, y_1], y_2], ..., y_k]."""
    out = x
    for y in ys:
        out = g.bracket(out, y)
    return out
