#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Growth of generating sets under sums and brackets.

A^1 = {0} u A and A^k is the union over 0 < j < k of A^j + A^(k-j) and
[A^j, A^(k-j)]. Layers are computed from the new elements of each level
only, since older elements were already combined at a lower level.
"""

import logging
from dataclasses import dataclass
from math import log
from time import time

import numpy as np

from liegrowth.algebra import subalgebra_closure
from liegrowth.core import (CutoffExceeded, LineNotFull, NotGenerating,
                            VerificationError)
from liegrowth.linalg import Echelon, solve_mod_p
from liegrowth.rings import PrimeField

LOG = logging.getLogger('growth')

BITSET_MAX = 2**24
CHUNK = 1 << 21


@dataclass(frozen=True, eq=False)
class Expression:
    """Binary tree of sums and brackets over tagged atoms."""

    op: str
    left: 'Expression' = None
    right: 'Expression' = None
    tag: str = None
    weight: int = 1

    @staticmethod
    def atom(tag):
        return Expression('atom', tag=tag)

    @staticmethod
    def add(a, b):
        return Expression('add', a, b, weight=a.weight + b.weight)

    @staticmethod
    def bracket(a, b):
        return Expression('bracket', a, b, weight=a.weight + b.weight)

    @staticmethod
    def total(exprs):
        exprs = list(exprs)
        out = exprs[0]
        for e in exprs[1:]:
            out = Expression.add(out, e)
        return out

    def substitute(self, tag, expr):
        if self.op == 'atom':
            return expr if self.tag == tag else self
        left = self.left.substitute(tag, expr)
        right = self.right.substitute(tag, expr)
        return Expression(self.op, left, right,
                          weight=left.weight + right.weight)

    def atoms(self):
        if self.op == 'atom':
            return [self.tag]
        return self.left.atoms() + self.right.atoms()

    def evaluate(self, g, env):
        """Value in g; atoms are looked up in env, '0' is the zero vector.

        Iterative, since deep sums and brackets exceed the recursion limit.
        """
        cache = {}
        stack = [self]
        while stack:
            node = stack[-1]
            if id(node) in cache:
                stack.pop()
                continue
            if node.op == 'atom':
                cache[id(node)] = env[node.tag] if node.tag != '0' else \
                    g.zero()
                stack.pop()
                continue
            todo = [c for c in (node.left, node.right) if id(c) not in cache]
            if todo:
                stack.extend(todo)
                continue
            a = cache[id(node.left)]
            b = cache[id(node.right)]
            if node.op == 'add':
                out = a + b
                if isinstance(g.ring, PrimeField):
                    out = out % g.ring.p
            else:
                out = g.bracket(a, b)
            cache[id(node)] = out
            stack.pop()
        return cache[id(self)]

    def __str__(self):
        if self.op == 'atom':
            return self.tag
        if self.op == 'add':
            return f'({self.left} + {self.right})'
        return f'[{self.left}, {self.right}]'


class _CodeStore:

    def __init__(self, p, d):
        self.radix = np.array([p**i for i in range(d)], dtype=np.int64)
        total = p**d
        self.bits = np.zeros(total, dtype=bool) if total <= BITSET_MAX \
            else None
        self.sorted = np.zeros(0, dtype=np.int64)
        self.count = 0

    def keys(self, rows):
        return rows @ self.radix

    def filter_new(self, rows):
        u, idx = np.unique(self.keys(rows), return_index=True)
        if self.bits is not None:
            mask = ~self.bits[u]
            self.bits[u[mask]] = True
        else:
            pos = np.searchsorted(self.sorted, u)
            pos = np.minimum(pos, max(len(self.sorted) - 1, 0))
            present = (self.sorted[pos] == u) if len(self.sorted) else \
                np.zeros(len(u), dtype=bool)
            mask = ~present
            self.sorted = np.union1d(self.sorted, u[mask])
        self.count += int(mask.sum())
        return np.sort(idx[mask])

    def contains(self, row):
        k = int(self.keys(np.asarray(row)[None])[0])
        if self.bits is not None:
            return bool(self.bits[k])
        i = np.searchsorted(self.sorted, k)
        return i < len(self.sorted) and self.sorted[i] == k


class _RowStore:

    def __init__(self):
        self.seen = set()
        self.count = 0

    def filter_new(self, rows):
        rows = np.ascontiguousarray(rows)
        u, idx = np.unique(rows, axis=0, return_index=True)
        keep = []
        for r, i in zip(u, idx):
            b = r.tobytes()
            if b not in self.seen:
                self.seen.add(b)
                keep.append(i)
        self.count += len(keep)
        return np.sort(np.array(keep, dtype=np.int64))

    def contains(self, row):
        return np.ascontiguousarray(row, dtype=np.int64).tobytes() in self.seen


class Ball:
    """Layers A^1, A^2, ... of a generating set.

    Over F_p the ambient is finite and growth stops once A^k = g. Over Z
    (covering lattices) the size and the coefficient norm are capped.
    """

    def __init__(self, g, A, provenance=False, cutoff=None,
                 norm_cutoff=2**20, chunk=CHUNK):
        self.g = g
        self.log = logging.getLogger(self.__class__.__name__)
        self.d = d = g.dim
        self.provenance = provenance
        self.cutoff = cutoff
        self.norm_cutoff = norm_cutoff
        self.chunk = chunk
        if isinstance(g.ring, PrimeField):
            self.p = g.ring.p
            self.total = self.p**d
            if self.total < 2**62:
                self.store = _CodeStore(self.p, d)
            else:
                self.store = _RowStore()
        else:
            self.p = None
            self.total = None
            T, _ = g._int_tensor()
            if T is None:
                raise ValueError('lattice balls need small integer constants')
            self.T = T
            self.store = _RowStore()
        A = [np.asarray(a, dtype=np.int64) for a in A]
        self.generators = A
        self.env = {f'a{i}': a for i, a in enumerate(A)}
        rows = np.array([np.zeros(d, dtype=np.int64)] + A,
                        dtype=np.int64).reshape(-1, d)
        if self.p:
            rows %= self.p
        idx = self.store.filter_new(rows)
        self.frontiers = [None, rows[idx]]
        self.tags = ['0' if i == 0 else f'a{i - 1}' for i in idx]
        self.prov = [None, None]
        self.sizes = [0, len(idx)]
        self._expr_cache = {}

    @property
    def level(self):
        return len(self.frontiers) - 1

    @property
    def full(self):
        return self.total is not None and self.sizes[-1] == self.total

    def size(self, k):
        if k <= self.level:
            return self.sizes[k]
        if self.full:
            return self.total
        self.grow_to(k)
        return self.sizes[min(k, self.level)]

    def _brackets(self, X, Y):
        if self.p:
            return self.g.bracket_many(X, Y)
        bound = (int(np.abs(X).max()) * int(np.abs(Y).max()) *
                 int(np.abs(self.T).max()) * self.d * self.d)
        if bound >= 2**62:
            raise CutoffExceeded('bracket coefficients would overflow int64')
        M = np.tensordot(X, self.T, axes=(1, 0))
        return np.matmul(Y[np.newaxis], M)

    def _accept(self, cand, new_rows, new_prov, meta):
        if not self.p and len(cand):
            if np.abs(cand).max() > self.norm_cutoff:
                raise CutoffExceeded(
                    f'coefficient norm above {self.norm_cutoff}')
        idx = self.store.filter_new(cand)
        if len(idx):
            new_rows.append(cand[idx])
            if self.provenance:
                new_prov.append(meta(idx))

    def grow(self):
        """Compute the next layer; returns the number of new elements."""
        t1 = time()
        k = self.level + 1
        d = self.d
        new_rows, new_prov = [], []
        for j in range(1, k // 2 + 1):
            X = self.frontiers[j]
            Y = self.frontiers[k - j]
            m, n = len(X), len(Y)
            if m == 0 or n == 0:
                continue
            step = max(1, self.chunk // max(1, n * d))
            for a0 in range(0, m, step):
                Xc = X[a0:a0 + step]
                mc = len(Xc)

                def meta(idx, op, swap, a0=a0, j=j):
                    a = a0 + idx // n
                    b = idx % n
                    if swap:
                        return (np.full(len(idx), op, dtype=np.int8),
                                np.full(len(idx), k - j), b,
                                np.full(len(idx), j), a)
                    return (np.full(len(idx), op, dtype=np.int8),
                            np.full(len(idx), j), a,
                            np.full(len(idx), k - j), b)

                S = (Xc[:, np.newaxis, :] + Y[np.newaxis]).reshape(mc * n, d)
                if self.p:
                    S %= self.p
                self._accept(S, new_rows, new_prov,
                             lambda i: meta(i, 0, False))
                B = self._brackets(Xc, Y).reshape(mc * n, d)
                self._accept(B, new_rows, new_prov,
                             lambda i: meta(i, 1, False))
                if j != k - j:
                    B = -B % self.p if self.p else -B
                    self._accept(B, new_rows, new_prov,
                                 lambda i: meta(i, 1, True))
        D = np.vstack(new_rows) if new_rows else np.zeros((0, d),
                                                           dtype=np.int64)
        self.frontiers.append(D)
        self.sizes.append(self.sizes[-1] + len(D))
        if self.provenance:
            if new_prov:
                self.prov.append(tuple(
                    np.concatenate([p[c] for p in new_prov])
                    for c in range(5)))
            else:
                self.prov.append(tuple(np.zeros(0, dtype=np.int64)
                                       for _ in range(5)))
        self.log.info(f'grow(): layer {k} size {self.sizes[-1]} '
                      f'{time() - t1:.1f}')
        if self.cutoff is not None and self.sizes[-1] > self.cutoff:
            raise CutoffExceeded(f'ball size above {self.cutoff}')
        return len(D)

    def grow_to(self, k):
        while self.level < k and not self.full:
            self.grow()
        return self

    def elements(self, k=None):
        if k is None:
            k = self.level
        if k > self.level:
            self.grow_to(k)
        k = min(k, self.level)
        return np.vstack(self.frontiers[1:k + 1])

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64)
        if self.p:
            v = v % self.p
        return self.store.contains(v)

    def locate(self, v):
        """(level, index) of v in the frontiers, or None."""
        v = np.asarray(v, dtype=np.int64)
        if self.p:
            v = v % self.p
        for k in range(1, self.level + 1):
            D = self.frontiers[k]
            hit = np.flatnonzero(np.all(D == v, axis=1))
            if len(hit):
                return k, int(hit[0])
        return None

    def expression_at(self, k, i):
        key = (k, i)
        if key in self._expr_cache:
            return self._expr_cache[key]
        if k == 1:
            out = Expression.atom(self.tags[i])
        else:
            if not self.provenance:
                raise ValueError('ball was built without provenance')
            op, lj, li, rj, ri = (a[i] for a in self.prov[k])
            left = self.expression_at(int(lj), int(li))
            right = self.expression_at(int(rj), int(ri))
            out = Expression.add(left, right) if op == 0 else \
                Expression.bracket(left, right)
        self._expr_cache[key] = out
        return out

    def expression(self, v):
        loc = self.locate(v)
        if loc is None:
            return None
        return self.expression_at(*loc)


def ball(g, A, k, cutoff=None, provenance=False, norm_cutoff=2**20):
    return Ball(g, A, provenance=provenance, cutoff=cutoff,
                norm_cutoff=norm_cutoff).grow_to(k)


def diameter(g, A, max_size=BITSET_MAX):
    """Least k with A^k = g."""
    if not subalgebra_closure(g, A).is_full():
        raise NotGenerating('set does not generate the algebra')
    if g.ring.p**g.dim > max_size:
        raise CutoffExceeded(f'|g| = {g.ring.p}^{g.dim} is too large')
    B = Ball(g, A)
    while not B.full:
        B.grow()
    return B.level


@dataclass
class LineStatRecord:
    k: int
    ell: int
    witness: np.ndarray
    scalars: list
    p: int

    @property
    def full(self):
        return self.ell == self.p


def line_stat(g, X, k=None):
    """Largest number of elements of X on a line through 0."""
    p = g.ring.p
    X = np.asarray(X, dtype=np.int64).reshape(-1, g.dim) % p
    if len(X) == 0:
        return LineStatRecord(k, 0, None, [], p)
    X = np.unique(X, axis=0)
    nz = X.any(axis=1)
    has_zero = int(not nz.all())
    Y = X[nz]
    if len(Y) == 0:
        return LineStatRecord(k, 1, None, [0], p)
    first = np.argmax(Y != 0, axis=1)
    lead = Y[np.arange(len(Y)), first]
    inv = g.ring.inverse_table()[lead]
    N = Y * inv[:, np.newaxis] % p
    dirs, inverse, counts = np.unique(N, axis=0, return_inverse=True,
                                      return_counts=True)
    inverse = inverse.reshape(-1)
    best = int(np.argmax(counts))
    scalars = sorted(set(int(a) for a in lead[inverse == best]))
    if has_zero:
        scalars = [0] + scalars
    return LineStatRecord(k, int(counts[best]) + has_zero, dirs[best],
                          scalars, p)


def scalar_set_stats(X, p):
    """Sizes of X+X, XX and XX+XX+XX for X in F_p."""
    X = np.unique(np.asarray(X, dtype=np.int64) % p)
    if len(X) == 0:
        return {'sum': 0, 'product': 0, 'triple': 0}
    S = np.unique((X[:, None] + X[None]) % p)
    P = np.unique((X[:, None] * X[None]) % p)
    P2 = np.unique((P[:, None] + P[None]) % p)
    P3 = np.unique((P2[:, None] + P[None]) % p)
    return {'sum': len(S), 'product': len(P), 'triple': len(P3)}


def _bracket_sets(g, X, Y):
    """Both [X, Y] and [Y, X] as deduplicated rows."""
    if len(X) == 0 or len(Y) == 0:
        return np.zeros((0, g.dim), dtype=np.int64)
    B = g.bracket_many(X, Y).reshape(-1, g.dim)
    return np.unique(np.vstack([B, -B % g.ring.p]), axis=0)


@dataclass
class TowerSet:
    levels: list
    spans: list
    relative: bool


def towers(g, X, k, pivot=None, max_size=10**6):
    """Bracket towers T_0..T_k of X, or of (X, pivot) when a pivot set is
    given (then T_1 is the pivot set)."""
    p = g.ring.p
    d = g.dim
    X = np.asarray(X, dtype=np.int64).reshape(-1, d) % p
    zero = np.zeros((1, d), dtype=np.int64)
    plain = [zero, np.unique(X, axis=0)]
    for _ in range(2, k + 1):
        plain.append(_bracket_sets(g, X, plain[-1]))
        if len(plain[-1]) > max_size:
            raise CutoffExceeded(f'tower level above {max_size} elements')
    levels = plain
    if pivot is not None:
        Y = np.asarray(pivot, dtype=np.int64).reshape(-1, d) % p
        levels = [zero, np.unique(Y, axis=0)]
        for j in range(2, k + 1):
            new = np.vstack([_bracket_sets(g, Y, plain[j - 1]),
                             _bracket_sets(g, X, levels[-1])])
            levels.append(np.unique(new, axis=0))
            if len(levels[-1]) > max_size:
                raise CutoffExceeded(
                    f'tower level above {max_size} elements')
    E = Echelon(d, p)
    spans = []
    for L in levels:
        for v in L:
            E.add(v)
        spans.append(len(E))
    return TowerSet(levels[:k + 1], spans[:k + 1], pivot is not None)


def towering_containment(g, A, b, m, n):
    """Check [T_m(A, b), T_n(A)] against span [A, T_{<=m+n-1}(A, b)] and
    against span [A, T_{<=m+n}(A, b)]."""
    p = g.ring.p
    top = m + n
    rel = towers(g, A, top, pivot=[b])
    plain = towers(g, A, n)
    lhs = _bracket_sets(g, rel.levels[m], plain.levels[n])
    A = np.asarray(A, dtype=np.int64).reshape(-1, g.dim) % p
    out = {}
    for label, r in (('m+n-1', top - 1), ('m+n', top)):
        E = Echelon(g.dim, p)
        for L in rel.levels[:r + 1]:
            for v in _bracket_sets(g, A, L):
                E.add(v)
        out[label] = all(E.contains(v) for v in lhs)
    return out


class TowerBasis:
    """Greedy basis v_1, v_2, ... of g with v_j in T_{<=j}(A, v), each with
    a bracket word in which the pivot v occurs once."""

    def __init__(self, g, A, v):
        p = g.ring.p
        d = g.dim
        self.g = g
        A = [np.asarray(a, dtype=np.int64) % p for a in A]
        atoms = [Expression.atom(f'a{i}') for i in range(len(A))]
        pivot = Expression.atom('pivot')
        self.env = {f'a{i}': a for i, a in enumerate(A)}
        self.env['pivot'] = np.asarray(v, dtype=np.int64) % p

        # plain towers in A only
        U = Echelon(d, p)
        u_rows, u_words = [], []
        for a, w in zip(A, atoms):
            if U.add(a):
                u_rows.append(a)
                u_words.append(w)
        V = Echelon(d, p)
        rows, words, levels = [], [], []
        V.add(self.env['pivot'])
        rows.append(self.env['pivot'])
        words.append(pivot)
        levels.append(1)
        frontier_v = [0]
        frontier_u = list(range(len(u_rows)))
        level = 1
        while not V.full():
            level += 1
            if level > 2 * d + 2:
                raise NotGenerating('relative towers stopped growing')
            new_v = []
            for i in frontier_v:
                for a, w in zip(A, atoms):
                    x = g.bracket(a, rows[i])
                    if V.add(x):
                        rows.append(x)
                        words.append(Expression.bracket(w, words[i]))
                        levels.append(level)
                        new_v.append(len(rows) - 1)
            for i in frontier_u:
                x = g.bracket(self.env['pivot'], u_rows[i])
                if V.add(x):
                    rows.append(x)
                    words.append(Expression.bracket(pivot, u_words[i]))
                    levels.append(level)
                    new_v.append(len(rows) - 1)
            new_u = []
            for i in frontier_u:
                for a, w in zip(A, atoms):
                    x = g.bracket(a, u_rows[i])
                    if U.add(x):
                        u_rows.append(x)
                        u_words.append(Expression.bracket(w, u_words[i]))
                        new_u.append(len(u_rows) - 1)
            if not new_v and not new_u:
                raise NotGenerating('relative towers stopped growing')
            frontier_v, frontier_u = new_v, new_u
        self.rows = rows
        self.words = words
        self.levels = levels

    def solve(self, u):
        p = self.g.ring.p
        M = np.array(self.rows, dtype=np.int64).T
        c = solve_mod_p(M, np.asarray(u, dtype=np.int64) % p, p)
        assert c is not None
        return c


def cover_from_line(g, A, k, v, u, ball_=None):
    """Expression for u built from the full line of v in A^k.

    The weight is at most k d + d (d - 1) / 2 + d.
    """
    p = g.ring.p
    d = g.dim
    u = np.asarray(u, dtype=np.int64) % p
    v = np.asarray(v, dtype=np.int64) % p
    B = ball_ if ball_ is not None else Ball(g, A, provenance=True)
    B.grow_to(k)
    k_eff = min(k, B.level)
    line = []
    for alpha in range(p):
        loc = B.locate(alpha * v % p)
        if loc is None or loc[0] > k_eff:
            raise LineNotFull(f'{alpha} * v is not in A^{k}')
        line.append(B.expression_at(*loc))
    if not np.any(u):
        return Expression.atom('0')
    if B.contains(u):
        loc = B.locate(u)
        if loc[0] <= k_eff:
            return B.expression_at(*loc)
    basis = TowerBasis(g, A, v)
    c = basis.solve(u)
    parts = []
    for ci, w in zip(c, basis.words):
        if ci:
            parts.append(w.substitute('pivot', line[int(ci)]))
    expr = Expression.total(parts)
    bound = k_eff * d + d * (d - 1) // 2 + d
    if expr.weight > bound:
        raise VerificationError(f'weight {expr.weight} above {bound}')
    value = expr.evaluate(g, B.env)
    if np.any((value - u) % p):
        raise VerificationError('cover expression evaluates incorrectly')
    return expr


def fill_line(s_expr, lam, mu_expr, mu, alpha, p, right=False):
    """Expression for alpha * v given mu * v and s acting on <v> by lam.

    Writes alpha / mu in base lam and evaluates it Horner style, so the
    weight is O(log p) for a bounded lam. With right=True each step is
    [expr, s], and lam is the scalar by which that bracket acts.
    """
    lam = int(lam) % p
    target = int(alpha) * pow(int(mu), -1, p) % p
    if target == 0:
        return Expression.atom('0')
    assert lam >= 2, 'need an eigenvalue of at least 2'
    digits = []
    while target:
        digits.append(target % lam)
        target //= lam
    expr = None
    for c in reversed(digits):
        if expr is not None:
            expr = Expression.bracket(expr, s_expr) if right else \
                Expression.bracket(s_expr, expr)
        for _ in range(c):
            expr = mu_expr if expr is None else Expression.add(expr, mu_expr)
    return expr


class WittProcedure:
    """Expressions for arbitrary elements of W(p) in the generators
    a0 = e_-1 and a1 = e_2.

    Lines <e_i> with i <= 2 are filled by doubling and translation with
    s = [a0, [a0, a1]] = 6 e_0, and sum_{j>=2} alpha_j e_j is built from
    alpha_2 e_2 + [e_1, sum_j (j-1)^-1 alpha_{j+1} e_j].
    """

    def __init__(self, g):
        self.g = g
        self.p = p = g.ring.p
        self.log = logging.getLogger(self.__class__.__name__)
        a0 = Expression.atom('a0')
        a1 = Expression.atom('a1')
        self.env = {'a0': g.basis(0), 'a1': g.basis(3)}
        t1 = Expression.bracket(a0, a1)
        self.s = Expression.bracket(a0, t1)
        # (expression, multiple of e_i) for i = -1, 1, 2
        self.base = {-1: (a0, 1), 1: (t1, 3 % p), 2: (a1, 1)}
        self._e1 = self.line(1, 1)

    def _eigen(self, i):
        """(s-expression, scalar, right) with the smallest scalar >= 2.

        [s, e_i] = 6i e_i and [e_i, s] = -6i e_i, and 2s doubles both.
        """
        p = self.p
        s2 = Expression.add(self.s, self.s)
        options = [(lam, expr, right)
                   for expr, c in ((self.s, 6 * i), (s2, 12 * i))
                   for lam, right in ((c % p, False), (-c % p, True))
                   if lam >= 2]
        lam, expr, right = min(options, key=lambda o: o[0])
        return expr, lam, right

    def line(self, i, alpha):
        """Expression for alpha e_i, i in {-1, 0, 1, 2}."""
        p = self.p
        alpha = int(alpha) % p
        if alpha == 0:
            return Expression.atom('0')
        if i == 0:
            # [e_-1, beta e_1] = 2 beta e_0
            beta = alpha * pow(2, -1, p) % p
            return Expression.bracket(Expression.atom('a0'),
                                      self.line(1, beta))
        mu_expr, mu = self.base[i]
        s, lam, right = self._eigen(i)
        return fill_line(s, lam, mu_expr, mu, alpha, p, right=right)

    def upper(self, coeffs):
        """Expression for sum_{j>=2} coeffs[j-2] e_j, or None when zero."""
        p = self.p
        coeffs = [int(c) % p for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        # leading coefficient of each shifted level, bottom level first
        heads = []
        while coeffs:
            heads.append(coeffs[0])
            coeffs = [pow(j - 1, -1, p) * c % p
                      for j, c in enumerate(coeffs[1:], start=2)]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        expr = None
        for c in reversed(heads):
            parts = [self.line(2, c)] if c else []
            if expr is not None:
                parts.append(Expression.bracket(self._e1, expr))
            expr = Expression.total(parts)
        return expr

    def expression(self, u):
        """Expression for u given in the basis e_-1, ..., e_{p-2}."""
        u = np.asarray(u, dtype=np.int64) % self.p
        parts = [self.line(i, u[i + 1]) for i in (-1, 0, 1) if u[i + 1]]
        top = self.upper(u[3:])
        if top is not None:
            parts.append(top)
        if not parts:
            return Expression.atom('0')
        return Expression.total(parts)

    def verify(self, u, expr):
        value = expr.evaluate(self.g, self.env)
        return not np.any((value - u) % self.p)


@dataclass
class LineGrowthRecord:
    k: int
    size: int
    ell: int
    ell_next: int
    exponent: float
    sum_size: int
    product_size: int
    bound_ok: bool
    witness: list


def line_growth_experiment(g, A, max_k=None):
    """Rows (k, |A^k|, l(A^k), l(A^(2k+d)), exponent) until l(A^k) = p."""
    p = g.ring.p
    d = g.dim
    B = Ball(g, A)
    out = []
    k = 1
    while True:
        B.grow_to(k)
        rec = line_stat(g, B.elements(k), k)
        B.grow_to(2 * k + d)
        nxt = line_stat(g, B.elements(2 * k + d), 2 * k + d)
        st = scalar_set_stats(rec.scalars, p)
        exponent = log(nxt.ell) / log(rec.ell) if rec.ell > 1 else None
        out.append(LineGrowthRecord(
            k, B.size(k), rec.ell, nxt.ell, exponent, st['sum'],
            st['product'], nxt.ell >= max(st['sum'], st['product']),
            [] if rec.witness is None else [int(a) for a in rec.witness]))
        if rec.full or (max_k is not None and k >= max_k):
            break
        k += 1
    return out
