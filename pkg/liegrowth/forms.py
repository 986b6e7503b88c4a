#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Twisted forms g(F_{p^d})^Theta and their integral covering lattices.

An algebra over F_{p^d} (or over Q(w)) is handled through restriction of
scalars: the basis vector w^s b_i has index i*d + s, so everything becomes
linear algebra over F_p (or Z). Theta acts by a signed permutation of the
Chevalley basis combined with the field automorphism sigma.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from glob import glob
from itertools import combinations, product
from os import path

import numpy as np
import sympy

from liegrowth.algebra import (LieAlgebra, Sl2Triple, chevalley_algebra,
                               subalgebra_closure)
from liegrowth.core import (NotFullRank, NotInert, OrderMismatch,
                            PrimeTooSmall, SearchExhausted, VerificationError)
from liegrowth.linalg import (hermite_normal_form, hnf_coordinates,
                              hnf_pivots, integer_det, kernel_mod_p,
                              rank_mod_p, rational_rank_kernel, rref_mod_p,
                              saturate)
from liegrowth.rings import (QQ, ZZ, ExtField, ExtFieldElement, NumberField,
                             NumberFieldElement, PrimeField, check_prime,
                             find_irreducible)
from liegrowth.roots import (RootSystem, diagram_automorphism,
                             standard_permutation)

LOG = logging.getLogger('forms')

SCREEN_PRIME = 1000003


def load_form(name):
    if path.isfile(name):
        fname = name
    else:
        fname = path.join(path.dirname(__file__), 'formlayouts',
                          name + '.json')
    with open(fname, 'r') as f:
        d = json.load(f)
    return FormDescriptor.from_dict(d)


def get_forms():
    base = path.join(path.dirname(__file__), 'formlayouts', '*.json')
    return sorted(path.basename(g).replace('.json', '') for g in glob(base))


@dataclass
class FormDescriptor:
    name: str
    type: str
    rank: int
    twist: int = 1
    permutation: list = None
    polynomial: list = None
    notes: str = ''

    @classmethod
    def from_dict(cls, d):
        return cls(d['name'], d['type'], int(d['rank']),
                   int(d.get('twist', 1)), d.get('permutation'),
                   d.get('polynomial'), d.get('notes', ''))

    def root_system(self):
        return RootSystem(self.type, self.rank)

    def node_permutation(self, R):
        if self.permutation is not None:
            return self.permutation
        return standard_permutation(R, self.twist)

    def number_field(self):
        if self.twist == 1:
            return QQ
        return NumberField(self.polynomial, name=self.name)


def _is_finite(F):
    return isinstance(F, (PrimeField, ExtField))


def _degree(F):
    return getattr(F, 'degree', 1)


def _ambient_ring(F):
    return PrimeField(F.p) if _is_finite(F) else ZZ


class RestrictedAlgebra(LieAlgebra):
    """g(F) viewed over the prime field (or over Z for Z[w])."""

    def __init__(self, gZ, F, check=False):
        self.base = gZ
        self.field = F
        self.d = d = _degree(F)
        self.n = gZ.dim
        if isinstance(F, PrimeField) or F == QQ:
            mul = np.ones((1, 1, 1), dtype=np.int64)
        else:
            mul = F.mul_table()
        ring = _ambient_ring(F)
        constants = {}
        for i, j, k, c in gZ.structure_triples():
            for s in range(d):
                for t in range(d):
                    for u in range(d):
                        m = int(mul[s, t][u]) if d > 1 else 1
                        if m:
                            key = (i * d + s, j * d + t)
                            e = constants.setdefault(key, {})
                            e[k * d + u] = e.get(k * d + u, 0) + int(c) * m
        labels = []
        for lab in gZ.labels:
            for s in range(d):
                labels.append(lab if s == 0 else f'w^{s}*{lab}')
        super().__init__(ring, labels, constants,
                         name=f'{gZ.name}/{F}', check=check)

    def scalar_vector(self, a, i):
        """Coordinates of a * b_i for a scalar a in F."""
        v = self.zero()
        d = self.d
        if isinstance(a, (ExtFieldElement, NumberFieldElement)):
            coeffs = a.coeffs
        else:
            coeffs = (a, ) + (0, ) * (d - 1)
        for s, c in enumerate(coeffs):
            v[i * d + s] = self.ring(c) if isinstance(
                self.ring, PrimeField) else c
        return v


def restrict_scalars(gZ, F):
    return RestrictedAlgebra(gZ, F)


def _scalar_twist(F):
    """(matrix of sigma in the power basis, order of sigma)."""
    if isinstance(F, ExtField):
        return F.frobenius_matrix(), F.degree
    if isinstance(F, NumberField):
        return np.array(F.galois.matrix, dtype=object), F.galois.order
    if isinstance(F, PrimeField):
        return np.ones((1, 1), dtype=np.int64), 1
    return np.ones((1, 1), dtype=object), 1


class SemilinearAut:
    """Theta = theta * sigma acting on the restricted algebra."""

    def __init__(self, theta, F, ambient, S=None):
        self.theta = theta
        self.field = F
        self.ambient = ambient
        self.log = logging.getLogger(self.__class__.__name__)
        S_default, order = _scalar_twist(F)
        self.S = S_default if S is None else S
        if theta.order != order or _degree(F) != theta.order:
            raise OrderMismatch(
                f'diagram order {theta.order} against field automorphism '
                f'order {order} (degree {_degree(F)})')
        self.order = order
        self.p = F.p if _is_finite(F) else 0
        target, sign = theta.signed_permutation()
        d = ambient.d
        n = ambient.n
        dtype = np.int64 if self.p else object
        M = np.zeros((n * d, n * d), dtype=dtype)
        for i in range(n):
            for s in range(d):
                for u in range(d):
                    c = self.S[u, s]
                    if c != 0:
                        M[int(target[i]) * d + u, i * d + s] = \
                            int(sign[i]) * c
        if self.p:
            M %= self.p
        self.M = M

    def __call__(self, v):
        if self.p:
            return (self.M @ v) % self.p
        out = self.ambient.zero()
        for k in np.flatnonzero(v != 0):
            out = out + v[k] * self.M[:, k]
        return out

    def power(self, k):
        d = self.M.shape[0]
        P = np.eye(d, dtype=np.int64) if self.p else \
            np.eye(d, dtype=np.int64).astype(object)
        for _ in range(k):
            P = (self.M @ P) % self.p if self.p else self.M.dot(P)
        return P

    def verify(self):
        g = self.ambient
        d = g.dim
        I = np.eye(d, dtype=np.int64)
        P = self.power(self.order)
        if not np.all(P == (I if self.p else I.astype(object))):
            raise VerificationError('Theta^order is not the identity')
        if self.p:
            images = self.M.T.copy()
            lhs = g.bracket_many(np.eye(d, dtype=np.int64), np.eye(
                d, dtype=np.int64))
            lhs = (lhs.reshape(d * d, d) @ self.M.T).reshape(d, d,
                                                             d) % self.p
            rhs = g.bracket_many(images, images)
            if not np.array_equal(lhs, rhs):
                raise VerificationError('Theta does not preserve brackets')
        else:
            cols = [self.M[:, a] for a in range(d)]
            for a in range(d):
                for b in range(a + 1, d):
                    lhs = self(g.bracket(g.basis(a), g.basis(b)))
                    rhs = g.bracket(cols[a], cols[b])
                    if not g.is_zero(lhs - rhs):
                        raise VerificationError(
                            f'Theta does not preserve [{g.labels[a]}, '
                            f'{g.labels[b]}]')
        return True


def build_theta(theta, F, ambient=None, S=None, verify=True):
    """Semilinear automorphism theta*sigma of g(F), sigma generating the
    automorphisms of F used for the twist."""
    if ambient is None:
        gZ = chevalley_algebra(theta.R, ZZ, constants=theta.C, check=False)
        ambient = restrict_scalars(gZ, F)
    Th = SemilinearAut(theta, F, ambient, S)
    if verify:
        Th.verify()
    return Th


class FixedPointAlgebra:
    """F_p-algebra of Theta-fixed vectors of g(F_{p^d})."""

    def __init__(self, Th):
        self.theta = Th
        self.ambient = Th.ambient
        self.field = Th.field
        p = self.p = Th.p
        self.log = logging.getLogger(self.__class__.__name__)
        D = self.ambient.dim
        K = kernel_mod_p((Th.M - np.eye(D, dtype=np.int64)) % p, p)
        R, pivots = rref_mod_p(K, p) if len(K) else (K, [])
        self.basis = R[:len(pivots)]
        self.pivots = pivots
        expected = self.ambient.n
        if len(pivots) != expected:
            raise VerificationError(
                f'fixed space has dimension {len(pivots)}, expected '
                f'{expected}')
        amb = self.ambient
        constants = {}
        for a in range(expected):
            for b in range(a + 1, expected):
                w = amb.bracket(self.basis[a], self.basis[b])
                c = w[pivots]
                if np.any(c):
                    constants[(a, b)] = {k: int(x) for k, x in enumerate(c)
                                         if x}
        labels = [amb.labels[c] for c in pivots]
        F = PrimeField(p)
        self.algebra = LieAlgebra(F, labels, constants,
                                  name=f'{amb.base.name}^Theta', check=True)
        self.algebra.form = self
        self.embedding = self.basis.T.copy()
        self.log.info(f'fixed points of dimension {expected} over F{p}')

    def embed(self, c):
        return (self.embedding @ c) % self.p

    def coordinates(self, v, check=True):
        v = np.asarray(v, dtype=np.int64) % self.p
        c = v[self.pivots]
        if check and np.any((self.embed(c) - v) % self.p):
            raise ValueError('vector is not Theta-fixed')
        return c

    def highest_elements(self):
        """x = c e_lam and y = c^-1 e_-lam inside the form, with c chosen
        so that both are fixed."""
        th = self.theta.theta
        C = th.C
        lam = th.R.highest
        F = self.field
        c = F.one if _degree(F) > 1 else 1
        if th.eps[lam] == -1:
            c = F.gen - F.gen.frobenius()
        cinv = F.inv(c) if _degree(F) > 1 else 1
        amb = self.ambient
        x = amb.scalar_vector(c, C.basis_index(lam))
        y = amb.scalar_vector(cinv, C.basis_index(th.R.neg(lam)))
        return self.coordinates(x), self.coordinates(y)


def fixed_point_algebra(Th):
    return FixedPointAlgebra(Th)


def steinberg_spanning_set(Th):
    """Averages sum_t Theta^t(w^s b_i) over all ambient basis vectors."""
    g = Th.ambient
    out = []
    seen = set()
    for a in range(g.dim):
        v = g.basis(a)
        acc = v.copy()
        for _ in range(Th.order - 1):
            v = Th(v)
            acc = acc + v
        key = tuple(acc)
        if any(acc != 0) and key not in seen:
            seen.add(key)
            out.append(acc)
    return out


@dataclass
class CoveringLattice:
    ambient: LieAlgebra
    theta: SemilinearAut
    basis: list
    pivots: list
    algebra: LieAlgebra
    N: int
    averaging_factor: int

    @property
    def field(self):
        return self.theta.field

    def coordinates(self, w):
        c = hnf_coordinates(self.basis, self.pivots, w)
        if c is None:
            raise ValueError('vector not in the lattice')
        return c

    def embed(self, c):
        out = [0] * self.ambient.dim
        for a, row in zip(c, self.basis):
            if a:
                out = [x + a * y for x, y in zip(out, row)]
        return np.array(out, dtype=object)

    @staticmethod
    def norm(c):
        return max((abs(int(x)) for x in c), default=0)


def covering_lattice(spanning, Th):
    """Z-basis of the Theta-fixed integral vectors, in Hermite normal form,
    with the induced Lie ring and norm constant N."""
    g = Th.ambient
    rows = [[int(x) for x in v] for v in spanning]
    # the fixed space has dimension n, so a full rank mod a prime settles it
    rank = rank_mod_p(np.array(rows, dtype=object) % SCREEN_PRIME,
                      SCREEN_PRIME) if rows else 0
    if rows and rank != g.n:
        rank, _ = rational_rank_kernel(rows)
    if rank != g.n:
        raise NotFullRank(f'spanning set has rank {rank}, need {g.n}')
    H = hermite_normal_form(saturate(rows))
    H = [r for r in H if any(r)]
    pivots = hnf_pivots(H)
    n = len(H)
    assert n == g.n
    vecs = [np.array(r, dtype=object) for r in H]
    constants = {}
    N = 1
    for a in range(n):
        for b in range(a + 1, n):
            w = g.bracket(vecs[a], vecs[b])
            c = hnf_coordinates(H, pivots, w)
            if c is None:
                raise VerificationError('lattice not closed under bracket')
            entries = {k: x for k, x in enumerate(c) if x}
            if entries:
                constants[(a, b)] = entries
                N = max(N, max(abs(x) for x in c))
    labels = [g.labels[c] for c in pivots]
    L = LieAlgebra(ZZ, labels, constants, name=f'{g.base.name}(O)^Theta')
    LOG.info(f'covering lattice of rank {n}, N = {N}')
    return CoveringLattice(g, Th, H, pivots, L, N, Th.order)


@dataclass
class Reduction:
    lattice: CoveringLattice
    fixed: FixedPointAlgebra
    matrix: np.ndarray

    def __call__(self, c):
        c = np.array([int(x) % self.fixed.p for x in c], dtype=np.int64)
        return (self.matrix @ c) % self.fixed.p


def reduce_covering(L, p):
    """Reduction of the covering lattice modulo an inert prime p."""
    p = check_prime(p)
    E = L.field
    d = _degree(E)
    if d > 1 and p <= d:
        raise PrimeTooSmall(f'need p > {d}, got {p}')
    if d > 1:
        if not E.is_inert(p):
            raise NotInert(f'{p} is not inert for {E.f}')
        F = E.residue_field(p)
        S = np.array([[Fraction(x).numerator *
                       pow(Fraction(x).denominator, -1, p) % p
                       for x in row] for row in E.galois.matrix],
                     dtype=np.int64)
    else:
        F = PrimeField(p)
        S = None
    amb = restrict_scalars(L.ambient.base, F)
    Th = build_theta(L.theta.theta, F, amb, S)
    fixed = fixed_point_algebra(Th)
    images = []
    for row in L.basis:
        v = np.array([int(x) % p for x in row], dtype=np.int64)
        images.append(fixed.coordinates(v))
    P = np.array(images, dtype=np.int64).T
    if rank_mod_p(P, p) != fixed.algebra.dim:
        raise VerificationError(f'reduction mod {p} is not surjective')
    red = Reduction(L, fixed, P)
    # homomorphism on all basis pairs
    n = len(L.basis)
    for a in range(n):
        for b in range(a + 1, n):
            lhs = red(L.algebra.bracket(L.algebra.basis(a),
                                        L.algebra.basis(b)))
            rhs = fixed.algebra.bracket(P[:, a], P[:, b])
            if np.any((lhs - rhs) % p):
                raise VerificationError(
                    f'reduction mod {p} is not a homomorphism')
    return red


def sl2_triple_in_covering(L):
    """sl2-triple through the highest root, in ambient coordinates over Q."""
    th = L.theta.theta
    C = th.C
    lam = th.R.highest
    g = L.ambient
    E = L.field
    ie = C.basis_index(lam)
    if_ = C.basis_index(th.R.neg(lam))
    if th.eps[lam] == 1:
        e = g.basis(ie)
        f = g.basis(if_)
    else:
        if L.theta.order % 2:
            raise VerificationError('negative sign under an odd twist')
        delta = E.gen - E.galois(E.gen)
        disc = delta * delta
        assert disc.is_rational()
        e = g.scalar_vector(delta, ie)
        f = g.scalar_vector(delta / disc.coeffs[0], if_)
    h = g.bracket(e, f)
    triple = Sl2Triple(e, h, f)
    if not triple.verify(g):
        raise VerificationError('sl2 relations fail')
    return triple


@dataclass
class FavorablePair:
    x: list
    y: list
    words: list
    det: int
    bad_primes: list


def _candidates(n, max_support):
    for k in range(1, max_support + 1):
        for support in combinations(range(n), k):
            for signs in product((1, -1), repeat=k - 1):
                v = [0] * n
                v[support[0]] = 1
                for s, i in zip(signs, support[1:]):
                    v[i] = s
                yield v


def word_to_str(w, names=('x', 'y')):
    if w[0] == 'gen':
        return names[w[1]]
    return f'[{word_to_str(w[1], names)}, {word_to_str(w[2], names)}]'


def favorable_pair(L, max_support=2, screen_prime=SCREEN_PRIME):
    """First candidate pair whose rational closure is the whole lattice
    algebra, with the primes at which that certificate degenerates."""
    gL = L.algebra
    n = gL.dim
    q = screen_prime
    gq = LieAlgebra(PrimeField(q), gL.labels,
                    [(i, j, k, int(c) % q)
                     for i, j, k, c in gL.structure_triples()], check=False)
    cands = list(_candidates(n, max_support))
    cq = [np.array(v, dtype=np.int64) % q for v in cands]
    for j in range(1, len(cands)):
        for i in range(j):
            if not subalgebra_closure(gq, [cq[i], cq[j]]).is_full():
                continue
            x = gL.vector(cands[i])
            y = gL.vector(cands[j])
            sub = subalgebra_closure(gL, [x, y], track_words=True)
            if not sub.is_full():
                continue
            W = [[int(a) for a in v] for v in sub.vectors]
            det = integer_det(W)
            bad = sorted(int(r) for r in sympy.factorint(abs(det)))
            LOG.info(f'favorable pair {cands[i]}, {cands[j]}; det {det}')
            return FavorablePair(cands[i], cands[j], sub.words, det, bad)
    raise SearchExhausted(
        f'no generating pair with support at most {max_support}')


def build_form(desc, p, require_inert=False, verify=True):
    """g(F_{p^d})^Theta over F_p for a descriptor."""
    if isinstance(desc, str):
        desc = load_form(desc)
    p = check_prime(p)
    R = desc.root_system()
    theta = diagram_automorphism(R, desc.node_permutation(R), verify=verify)
    if desc.twist == 1:
        F = PrimeField(p)
    else:
        E = desc.number_field()
        if E.is_inert(p):
            F = ExtField(p, desc.polynomial)
        elif require_inert:
            raise NotInert(f'{p} is not inert for {desc.name}')
        else:
            f = find_irreducible(p, desc.twist)
            LOG.info(f'{desc.name}: using {f} mod {p}')
            F = ExtField(p, f)
    Th = build_theta(theta, F, verify=verify)
    return fixed_point_algebra(Th)


def build_covering(desc, verify=True):
    if isinstance(desc, str):
        desc = load_form(desc)
    R = desc.root_system()
    theta = diagram_automorphism(R, desc.node_permutation(R), verify=verify)
    E = desc.number_field()
    Th = build_theta(theta, E, verify=verify)
    return covering_lattice(steinberg_spanning_set(Th), Th)
