#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Extremal generating sets and extremal bases of split and twisted forms.

Starting from a highest weight vector x, the lowest weight vector y and
h = [x, y], the algebra splits into the eigenspaces L_-2, ..., L_2 of
-ad_h. The elements u(z) = exp(ad_z) x for z in L_1 together with x and y
generate; repeatedly applying eta(a, b) = exp(ad_a) b produces extremal
elements until they span, and a basis is picked from them such that
q_{y,b} is nonzero for every b other than y.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from liegrowth.algebra import (MatrixLieAlgebra, Sl2Triple, exp_ad,
                               exp_ad_apply, nilpotency_order)
from liegrowth.core import (CharTooSmall, NotDecomposable, NotNilpotent,
                            PipelineStall, VerificationError, ZeroElement)
from liegrowth.forms import (FixedPointAlgebra, SemilinearAut, build_form,
                             load_form, restrict_scalars)
from liegrowth.linalg import Echelon, kernel_mod_p, rank_mod_p
from liegrowth.rings import ZZ, ExtField, find_irreducible

LOG = logging.getLogger('extremal')

EIGENVALUES = (-2, -1, 0, 1, 2)
STAGE_MAX = 4000


@dataclass
class EigenDecomposition:
    h: np.ndarray
    spaces: dict

    @property
    def dims(self):
        return tuple(len(self.spaces[i]) for i in EIGENVALUES)


def eigen_decompose(g, h):
    """Eigenspaces L_i of -ad_h for i = -2, ..., 2."""
    p = g.ring.p
    if p < 5:
        raise CharTooSmall(f'eigenvalues -2..2 collide for p = {p}')
    h = np.asarray(h, dtype=np.int64) % p
    if not np.any(h):
        raise NotDecomposable('h = 0 has no grading')
    A = g.ad(h)
    I = np.eye(g.dim, dtype=np.int64)
    spaces = {}
    for i in EIGENVALUES:
        spaces[i] = kernel_mod_p((A + i * I) % p, p)
    D = EigenDecomposition(h, spaces)
    if sum(D.dims) != g.dim or len(spaces[0]) == g.dim:
        raise NotDecomposable(f'eigenspace dimensions {D.dims} for dim '
                              f'{g.dim}')
    return D


def _ad_squared(g, x):
    A = g.ad(x)
    return (A @ A) % g.ring.p


def classify_element(g, x):
    """'sandwich' if (ad_x)^2 = 0, 'extremal' if its image lies in <x>,
    'neither' otherwise."""
    p = g.ring.p
    x = np.asarray(x, dtype=np.int64) % p
    if not np.any(x):
        raise ZeroElement('classify_element() of the zero vector')
    A2 = _ad_squared(g, x)
    if not np.any(A2):
        return 'sandwich'
    if rank_mod_p(np.vstack([A2.T, x]), p) == 1:
        return 'extremal'
    return 'neither'


def is_extremal(g, x):
    return classify_element(g, x) in ('extremal', 'sandwich')


def eta(g, a, b):
    """exp(ad_a) b."""
    return exp_ad_apply(g, np.asarray(a, dtype=np.int64),
                        np.asarray(b, dtype=np.int64)) % g.ring.p


def bracket_in_eta_span(g, a, b):
    p = g.ring.p
    E = Echelon(g.dim, p)
    for v in (a, b, eta(g, a, b)):
        E.add(v)
    return E.contains(g.bracket(a, b))


def quadratic_map(g, a, b, Z):
    """q_{a,b}(z) = [ad_a z, ad_b z] for every row z of Z."""
    p = g.ring.p
    Z = np.atleast_2d(np.asarray(Z, dtype=np.int64)) % p
    AZ = (Z @ g.ad(a).T) % p
    BZ = (Z @ g.ad(b).T) % p
    return g.bracket_rows(AZ, BZ)


@dataclass
class QuadraticTest:
    nonzero: bool
    witness: np.ndarray = None
    value: np.ndarray = None


def quadratic_nonzero(g, a, b):
    """Exact zero test of q_{a,b} on basis vectors and their pairwise sums,
    which determines a quadratic map when p > 2."""
    d = g.dim
    I = np.eye(d, dtype=np.int64)
    iu, ju = np.triu_indices(d, k=1)
    Z = np.vstack([I, I[iu] + I[ju]])
    Q = quadratic_map(g, a, b, Z)
    hit = np.flatnonzero(Q.any(axis=1))
    if len(hit) == 0:
        return QuadraticTest(False)
    k = int(hit[0])
    return QuadraticTest(True, Z[k], Q[k])


def quadratic_witness(g, y, b, x):
    """Try z = x and z = [b, y] for q_{y,b}(z) != 0."""
    for kind, z in (('x', x), ('[b,y]', g.bracket(b, y))):
        if np.any(z) and np.any(quadratic_map(g, y, b, z)):
            return kind, z
    return None, None


@dataclass
class Candidate:
    vector: np.ndarray
    tag: str
    stage: int


@dataclass
class ExtremalSet:
    elements: list
    stages: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def vectors(self):
        return [c.vector for c in self.elements]


def eta_closure(g, generators, max_stages=6, stage_max=STAGE_MAX):
    """E, E', E'', ...: E' from pairs in E, later stages from pairs
    (a in E, b in the previous stage), until the span is full."""
    p = g.ring.p
    seen = set()
    elements = []
    E = Echelon(g.dim, p)
    failures = []

    def accept(c):
        key = c.vector.tobytes()
        if not np.any(c.vector) or key in seen:
            return False
        seen.add(key)
        elements.append(c)
        E.add(c.vector)
        return True

    base = [c for c in generators if accept(c)]
    exps = {}
    for a in base:
        try:
            exps[a.tag] = exp_ad(g, a.vector)
        except (NotNilpotent, CharTooSmall) as e:
            LOG.warning(f'eta_closure(): {a.tag} skipped: {e}')
            failures.append(a.tag)
    stages = [base]
    prev = base
    while not E.full() and len(stages) <= max_stages:
        new = []
        for a in base:
            if a.tag not in exps:
                continue
            for b in prev:
                if a is b or len(new) >= stage_max:
                    continue
                v = (exps[a.tag] @ b.vector) % p
                c = Candidate(v, f'eta({a.tag},{b.tag})', len(stages))
                if accept(c):
                    if not is_extremal(g, v):
                        failures.append(c.tag)
                    new.append(c)
        LOG.info(f'eta_closure(): stage {len(stages)} adds {len(new)} '
                 f'span {len(E)}')
        if not new:
            break
        stages.append(new)
        prev = new
    if not E.full():
        raise PipelineStall(f'eta closure stalled at span {len(E)} of '
                            f'{g.dim}', span=len(E))
    return ExtremalSet(elements, [len(s) for s in stages], failures)


@dataclass
class PipelineResult:
    algebra: object
    x: np.ndarray
    y: np.ndarray
    h: np.ndarray
    decomposition: EigenDecomposition
    generators: list
    closure: ExtremalSet
    basis: list
    nilpotency: list

    def certificate(self, name=None, p=None):
        g = self.algebra
        return {
            'form': name,
            'p': p,
            'dim': g.dim,
            'labels': list(g.labels),
            'eigenspace_dims': list(self.decomposition.dims),
            'nilpotency_orders': list(self.nilpotency),
            'stage_sizes': list(self.closure.stages),
            'eta_extremal_failures': list(self.closure.failures),
            'basis': [b for b in self.basis],
            'ok': self.ok,
        }

    @property
    def ok(self):
        return (len(self.basis) == self.algebra.dim and all(
            b['class'] == 'extremal' and b['witness'] is not None
            for b in self.basis if b['tag'] != 'y')
                and not self.closure.failures)


def _entry(tag, stage, v, cls, kind, z):
    return {
        'tag': tag,
        'stage': stage,
        'vector': [int(a) for a in v],
        'class': cls,
        'witness_kind': kind,
        'witness': None if z is None else [int(a) for a in z],
    }


def select_basis(g, closure, x, y):
    """Greedy basis through y, taking candidates in stage order whose
    quadratic condition is witnessed by z = x or z = [b, y]; candidates
    without such a witness are retried with the exhaustive test."""
    p = g.ring.p
    E = Echelon(g.dim, p)
    E.add(y)
    basis = [_entry('y', 0, y, classify_element(g, y), None, None)]
    skipped = []
    for c in closure.elements:
        v = c.vector
        if c.tag == 'y' or E.contains(v):
            continue
        cls = classify_element(g, v)
        if cls != 'extremal':
            continue
        kind, z = quadratic_witness(g, y, v, x)
        if z is None:
            skipped.append((c, cls))
            continue
        E.add(v)
        basis.append(_entry(c.tag, c.stage, v, cls, kind, z))
    for c, cls in skipped:
        if E.full():
            break
        if E.contains(c.vector):
            continue
        t = quadratic_nonzero(g, y, c.vector)
        if t.nonzero:
            E.add(c.vector)
            basis.append(_entry(c.tag, c.stage, c.vector, cls, 'exhaustive',
                                t.witness))
    if not E.full():
        raise PipelineStall(f'basis selection stalled at {len(E)} of '
                            f'{g.dim}', span=len(E))
    return basis


def run_pipeline(g, x, y):
    p = g.ring.p
    x = np.asarray(x, dtype=np.int64) % p
    y = np.asarray(y, dtype=np.int64) % p
    h = g.bracket(x, y)
    if not Sl2Triple(x, h, y).verify(g):
        raise VerificationError('x, [x, y], y is not an sl2-triple')
    D = eigen_decompose(g, h)
    gens = [Candidate(x, 'x', 0), Candidate(y, 'y', 0)]
    orders = []
    for n, z in enumerate(D.spaces[1]):
        orders.append(nilpotency_order(g, z))
        gens.append(Candidate(exp_ad_apply(g, z, x) % p, f'u(z{n})', 0))
    closure = eta_closure(g, gens)
    basis = select_basis(g, closure, x, y)
    return PipelineResult(g, x, y, h, D, gens, closure, basis, orders)


def extremal_basis_pipeline(form, p):
    """Extremal non-sandwich basis of a form at p with its certificate."""
    desc = load_form(form) if isinstance(form, str) else form
    if p <= 5:
        raise CharTooSmall(f'the extremal pipeline needs p > 5, got {p}')
    fpa = build_form(desc, p)
    x, y = fpa.highest_elements()
    res = run_pipeline(fpa.algebra, x, y)
    LOG.info(f'{desc.name} p={p}: basis of {len(res.basis)} elements')
    return res


# twisted sl_n in the matrix model


class MatrixTwist:
    """X -> -J X^T J^-1 with J = antidiag((-1)^k) on the matrix basis of
    sl_n; E_ab goes to -(-1)^(a+b) E_{n+1-b, n+1-a}."""

    order = 2

    def __init__(self, m):
        self.m = m
        n = m.n
        d = m.dim
        self.target = np.zeros(d, dtype=np.int64)
        self.sign = np.ones(d, dtype=np.int64)
        for k, u in enumerate(m.units):
            if u[0] == 'H':
                self.target[k] = m._unit_index[('H', n - 2 - u[1])]
            else:
                a, b = u
                self.target[k] = m._unit_index[(n - 1 - b, n - 1 - a)]
                self.sign[k] = -(-1)**(a + b)

    def signed_permutation(self):
        return self.target, self.sign


class TwistedMatrixForm:
    """Fixed points of the matrix twist composed with Frobenius on
    sl_n(F_{p^2})."""

    def __init__(self, n, p, f=None):
        if f is None:
            f = find_irreducible(p, 2)
        self.n = n
        self.p = p
        self.F = ExtField(p, f)
        self.matrices = MatrixLieAlgebra(n, ZZ, check=False)
        self.ambient = restrict_scalars(self.matrices, self.F)
        self.theta = SemilinearAut(MatrixTwist(self.matrices), self.F,
                                   self.ambient)
        self.theta.verify()
        self.form = FixedPointAlgebra(self.theta)
        self.algebra = self.form.algebra

    def element(self, M):
        """Coordinates in the form of an integer matrix."""
        base = self.matrices.from_matrix(np.asarray(M, dtype=np.int64))
        v = self.ambient.zero()
        for k, c in enumerate(base):
            v[2 * k] = int(c) % self.p
        return self.form.coordinates(v)

    def unit(self, i, j):
        """E_ij with 1-based indices."""
        M = np.zeros((self.n, self.n), dtype=np.int64)
        M[i - 1, j - 1] = 1
        return M

    def x(self):
        return self.element(self.unit(1, self.n))

    def y(self):
        return self.element(self.unit(self.n, 1))

    def Z1(self, i):
        n = self.n
        return self.element(self.unit(i, 1) +
                            (-1)**i * self.unit(n, n + 1 - i))

    def U1(self, i):
        n = self.n
        s = (-1)**(1 + i)
        return self.element(
            self.unit(1, n) + s * self.unit(1, n + 1 - i) +
            self.unit(i, n) + s * self.unit(i, n + 1 - i))


def degenerate_quadratic_case(n, p, i):
    """b = eta(U_1(i), U_1(n+1-i)) in the twisted sl_n and how the
    quadratic condition q_{y,b} fares on it."""
    T = TwistedMatrixForm(n, p)
    g = T.algebra
    x, y = T.x(), T.y()
    b = eta(g, T.U1(i), T.U1(n + 1 - i))
    kind, z = quadratic_witness(g, y, b, x)
    return {
        'n': n,
        'p': p,
        'i': i,
        'b': [int(a) for a in b],
        'class': classify_element(g, b) if np.any(b) else 'zero',
        'bracket_with_y_zero': not np.any(g.bracket(b, y)),
        'q_at_x_zero': not np.any(quadratic_map(g, y, b, x)),
        'witness_kind': kind,
        'exhaustive_nonzero': quadratic_nonzero(g, y, b).nonzero,
    }
