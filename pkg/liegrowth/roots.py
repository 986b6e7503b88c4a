#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Root systems, Chevalley structure constants and signed diagram
automorphisms.

Roots are integer tuples in the basis of simple roots. Inner products come
from a symmetrised Gram matrix in which short roots have squared length 2.
Signs of the structure constants are fixed with extraspecial pairs, using
the total order on positive roots by height and then lexicographically.
"""

import logging
import re
from collections import deque
from fractions import Fraction

import numpy as np

from liegrowth.core import InvalidType, NotASymmetry, SignConflict

LOG = logging.getLogger('roots')

TYPES = ('A', 'B', 'C', 'D', 'E', 'F', 'G')


def parse_type(label, rank=None):
    """Split labels such as 'A2', 'A_2' or ('D', 4) into (letter, rank)."""
    if rank is None:
        m = re.fullmatch(r'\s*([A-Ga-g])_?(\d+)\s*', str(label))
        if m is None:
            raise InvalidType(f'cannot parse root system type {label!r}')
        letter, rank = m.group(1).upper(), int(m.group(2))
    else:
        letter = str(label).strip().upper().rstrip('_')
        rank = int(rank)
    if letter not in TYPES:
        raise InvalidType(f'unknown type {letter}')
    ok = {
        'A': rank >= 1,
        'B': rank >= 2,
        'C': rank >= 2,
        'D': rank >= 4,
        'E': rank in (6, 7, 8),
        'F': rank == 4,
        'G': rank == 2,
    }[letter]
    if not ok:
        raise InvalidType(f'unsupported type {letter}{rank}')
    return letter, rank


def gram_matrix(letter, n):
    G = np.zeros((n, n), dtype=np.int64)

    def edge(i, j, v):
        G[i, j] = G[j, i] = v

    if letter == 'A':
        np.fill_diagonal(G, 2)
        for i in range(n - 1):
            edge(i, i + 1, -1)
    elif letter == 'B':
        np.fill_diagonal(G, 4)
        G[n - 1, n - 1] = 2
        for i in range(n - 1):
            edge(i, i + 1, -2)
    elif letter == 'C':
        np.fill_diagonal(G, 2)
        G[n - 1, n - 1] = 4
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 2, n - 1, -2)
    elif letter == 'D':
        np.fill_diagonal(G, 2)
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 3, n - 1, -1)
    elif letter == 'E':
        np.fill_diagonal(G, 2)
        edge(0, 2, -1)
        for i in range(2, n - 1):
            edge(i, i + 1, -1)
        edge(1, 3, -1)
    elif letter == 'F':
        G[:] = np.diag([4, 4, 2, 2])
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3, -1)
    elif letter == 'G':
        G[:] = [[2, -3], [-3, 6]]
    return G


class RootSystem:
    """Reduced irreducible root system of a given Cartan type."""

    def __init__(self, label, rank=None):
        self.letter, self.rank = parse_type(label, rank)
        self.type = f'{self.letter}{self.rank}'
        self.log = logging.getLogger(self.__class__.__name__)
        n = self.rank
        self.gram = gram_matrix(self.letter, n)
        diag = np.diag(self.gram)
        self.cartan = 2 * self.gram // diag[np.newaxis, :]
        self.simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = self._closure()
        self.positive = sorted((r for r in roots if max(r) > 0),
                               key=lambda r: (sum(r), r))
        self.negative = [tuple(-a for a in r) for r in self.positive]
        self.roots = self.positive + self.negative
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.highest = self.positive[-1]
        self.log.debug(f'{self.type}: {len(self.roots)} roots')

    def _closure(self):
        seen = set(self.simple)
        todo = deque(self.simple)
        while todo:
            b = todo.popleft()
            for j in range(self.rank):
                c = self.reflect(b, j)
                if c not in seen:
                    seen.add(c)
                    todo.append(c)
        return seen

    def pairing(self, b, j):
        """<b, alpha_j^vee>."""
        return int(np.dot(b, self.cartan[:, j]))

    def reflect(self, b, j):
        k = self.pairing(b, j)
        return tuple(a - k * int(i == j) for i, a in enumerate(b))

    def inner(self, a, b):
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def norm2(self, a):
        return self.inner(a, a)

    def is_root(self, a):
        return tuple(a) in self.index

    def is_positive(self, a):
        return max(a) > 0

    @staticmethod
    def height(a):
        return sum(a)

    @staticmethod
    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def neg(a):
        return tuple(-x for x in a)

    def p_string(self, a, b):
        """Largest p with b - p a a root."""
        p = 0
        c = tuple(y - x for x, y in zip(a, b))
        while self.is_root(c):
            p += 1
            c = tuple(y - x for x, y in zip(a, c))
        return p

    def coroot_coefficients(self, a):
        """h_a = sum_i c_i h_i for the coroot of a."""
        na = self.norm2(a)
        diag = np.diag(self.gram)
        out = []
        for i, x in enumerate(a):
            c = Fraction(int(x) * int(diag[i]), na)
            assert c.denominator == 1
            out.append(int(c))
        return out

    def to_json(self):
        return {
            'type': self.letter,
            'rank': self.rank,
            'roots': [list(r) for r in self.positive],
        }

    @classmethod
    def from_json(cls, d):
        R = cls(d['type'], d['rank'])
        if 'roots' in d:
            assert [tuple(r) for r in d['roots']] == R.positive
        return R

    def __repr__(self):
        return f'RootSystem({self.type})'


def generate_root_system(label, rank=None):
    return RootSystem(label, rank)


class ChevalleyConstants:
    """Integer constants N_{a,b} of a Chevalley basis.

    The basis order is the positive roots, then h_1, ..., h_n, then the
    negative roots in the order of their positives.
    """

    def __init__(self, R):
        self.R = R
        self.log = logging.getLogger(self.__class__.__name__)
        self._pos = {}
        self.extraspecial = {}
        self._solve()

    def _solve(self):
        R = self.R
        pos = R.positive
        posset = set(pos)
        for xi in pos:
            if R.height(xi) == 1:
                continue
            pairs = []
            for a in pos:
                if R.height(a) >= R.height(xi):
                    break
                b = tuple(x - y for x, y in zip(xi, a))
                if b in posset and (R.height(a), a) < (R.height(b), b):
                    pairs.append((a, b))
            assert pairs
            g, d = pairs[0]
            self.extraspecial[xi] = (g, d)
            ngd = R.p_string(g, d) + 1
            self._set(g, d, ngd)
            for a, b in pairs[1:]:
                t = Fraction(0)
                bg = tuple(x - y for x, y in zip(b, g))
                if R.is_root(bg):
                    t += Fraction(
                        self.N(b, R.neg(g)) * self.N(a, R.neg(d)),
                        R.norm2(bg))
                ag = tuple(x - y for x, y in zip(a, g))
                if R.is_root(ag):
                    t += Fraction(
                        self.N(R.neg(g), a) * self.N(b, R.neg(d)),
                        R.norm2(ag))
                v = Fraction(R.norm2(xi), ngd) * t
                assert v.denominator == 1, f'non-integral N for {a}, {b}'
                v = int(v)
                assert abs(v) == R.p_string(a, b) + 1, \
                    f'bad magnitude for {a}, {b}'
                self._set(a, b, v)

    def _set(self, a, b, v):
        self._pos[(a, b)] = v
        self._pos[(b, a)] = -v

    def N(self, a, b):
        """N_{a,b}; zero when a + b is not a root."""
        R = self.R
        s = R.add(a, b)
        if not R.is_root(s):
            return 0
        pa, pb = R.is_positive(a), R.is_positive(b)
        if pa and pb:
            return self._pos[(a, b)]
        if not pa and not pb:
            return -self._pos[(R.neg(a), R.neg(b))]
        c = R.neg(s)
        if R.is_positive(c) == pb:
            v = Fraction(R.norm2(c), R.norm2(a)) * self.N(b, c)
        else:
            v = Fraction(R.norm2(c), R.norm2(b)) * self.N(c, a)
        assert v.denominator == 1
        return int(v)

    @property
    def dim(self):
        return len(self.R.roots) + self.R.rank

    def basis_index(self, root):
        R = self.R
        P = len(R.positive)
        i = R.index[tuple(root)]
        return i if i < P else i + R.rank

    def h_index(self, i):
        return len(self.R.positive) + i

    def labels(self):
        R = self.R
        pos = ['e_' + ''.join(str(x) for x in r) for r in R.positive]
        hs = [f'h_{i + 1}' for i in range(R.rank)]
        neg = ['f_' + ''.join(str(x) for x in r) for r in R.positive]
        return pos + hs + neg

    def table(self):
        """Sparse brackets {(i, j): {k: c}} over all ordered basis pairs."""
        R = self.R
        P = len(R.positive)
        n = R.rank
        out = {}

        def put(i, j, k, c):
            if c:
                out.setdefault((i, j), {})[k] = c
                out.setdefault((j, i), {})[k] = -c

        for a in R.roots:
            ia = self.basis_index(a)
            for b in R.roots:
                ib = self.basis_index(b)
                if ia >= ib:
                    continue
                s = R.add(a, b)
                if not any(s):
                    for i, c in enumerate(R.coroot_coefficients(a)):
                        put(ia, ib, P + i, c)
                elif R.is_root(s):
                    put(ia, ib, self.basis_index(s), self.N(a, b))
            for i in range(n):
                put(P + i, ia, ia, R.pairing(a, i))
        return out

    def to_json(self):
        R = self.R
        rows = []
        for a in R.roots:
            for b in R.roots:
                v = self.N(a, b)
                if v:
                    rows.append([list(a), list(b), v])
        return {'type': R.letter, 'rank': R.rank, 'constants': rows}


def chevalley_constants(R):
    return ChevalleyConstants(R)


def standard_permutation(R, order):
    """Node permutation of the usual twisted forms (0-based nodes)."""
    n = R.rank
    if order == 1:
        return list(range(n))
    if order == 2 and R.letter == 'A' and n >= 2:
        return [n - 1 - i for i in range(n)]
    if order == 2 and R.letter == 'D':
        perm = list(range(n))
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        return perm
    if order == 3 and R.type == 'D4':
        return [2, 1, 3, 0]
    if order == 2 and R.type == 'E6':
        return [5, 1, 4, 3, 2, 0]
    raise InvalidType(f'{R.type} has no diagram automorphism of order {order}')


class DiagramAutomorphism:
    """Graph automorphism of g(Z) with signs propagated from simple roots.

    Maps h_i to h_{perm(i)} and e_a to eps(a) e_{perm(a)}.
    """

    def __init__(self, R, perm, constants=None):
        self.R = R
        self.log = logging.getLogger(self.__class__.__name__)
        self.perm = [int(i) for i in perm]
        n = R.rank
        if sorted(self.perm) != list(range(n)):
            raise NotASymmetry(f'{perm} is not a permutation')
        G = R.gram
        for i in range(n):
            for j in range(n):
                if G[self.perm[i], self.perm[j]] != G[i, j]:
                    raise NotASymmetry(
                        f'{perm} does not preserve the Cartan matrix')
        self.order = 1
        q = list(self.perm)
        while q != list(range(n)):
            q = [self.perm[i] for i in q]
            self.order += 1
        self.C = constants if constants is not None else ChevalleyConstants(R)
        self.eps = self._propagate()

    def act(self, a):
        out = [0] * self.R.rank
        for i, x in enumerate(a):
            out[self.perm[i]] = x
        return tuple(out)

    def _propagate(self):
        R, C = self.R, self.C
        eps = {}
        posset = set(R.positive)
        for xi in R.positive:
            if R.height(xi) == 1:
                eps[xi] = 1
                continue
            a, b = C.extraspecial[xi]
            s = Fraction(eps[a] * eps[b] * C.N(self.act(a), self.act(b)),
                         C.N(a, b))
            if s not in (1, -1):
                raise SignConflict(f'sign {s} at {xi}')
            eps[xi] = int(s)
            # every other special pair must agree
            for a2 in R.positive:
                b2 = tuple(x - y for x, y in zip(xi, a2))
                if b2 in posset:
                    lhs = eps[xi] * C.N(a2, b2)
                    rhs = eps[a2] * eps[b2] * C.N(self.act(a2), self.act(b2))
                    if lhs != rhs:
                        raise SignConflict(
                            f'inconsistent signs at {a2} + {b2}')
        for a in R.positive:
            eps[R.neg(a)] = eps[a]
        return eps

    def signed_permutation(self):
        """(target index, sign) for every basis vector."""
        R, C = self.R, self.C
        P = len(R.positive)
        d = C.dim
        target = np.zeros(d, dtype=np.int64)
        sign = np.ones(d, dtype=np.int64)
        for a in R.roots:
            i = C.basis_index(a)
            target[i] = C.basis_index(self.act(a))
            sign[i] = self.eps[a]
        for i in range(R.rank):
            target[P + i] = P + self.perm[i]
        return target, sign

    def matrix(self):
        target, sign = self.signed_permutation()
        d = len(target)
        M = np.zeros((d, d), dtype=np.int64)
        M[target, np.arange(d)] = sign
        return M

    def verify(self, table=None):
        """Check bracket preservation on all basis pairs and the order."""
        if table is None:
            table = self.C.table()
        target, sign = self.signed_permutation()
        d = len(target)
        for i in range(d):
            for j in range(d):
                lhs = {int(target[k]): int(sign[k]) * c
                       for k, c in table.get((i, j), {}).items()}
                rhs = {k: int(sign[i] * sign[j]) * c for k, c in table.get(
                    (int(target[i]), int(target[j])), {}).items()}
                if lhs != rhs:
                    raise SignConflict(
                        f'bracket of basis {i}, {j} not preserved')
        M = self.matrix()
        P = np.eye(d, dtype=np.int64)
        for _ in range(self.order):
            P = M @ P
        if not np.array_equal(P, np.eye(d, dtype=np.int64)):
            raise SignConflict('signed map does not have the diagram order')
        return True

    def to_json(self):
        return {
            'type': self.R.letter,
            'rank': self.R.rank,
            'theta': self.perm,
            'epsilon': [[list(a), e] for a, e in self.eps.items()
                        if self.R.is_positive(a)],
        }


def diagram_automorphism(R, perm, constants=None, verify=True):
    theta = DiagramAutomorphism(R, perm, constants)
    if verify:
        theta.verify()
    return theta
