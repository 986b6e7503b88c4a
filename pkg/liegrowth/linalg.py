#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Exact linear algebra over F_p, Q and Z.

Mod-p routines work on int64 arrays. Rational and integer routines hand the
work to sympy matrices and return Fraction and Python int lists.
"""

import logging
from fractions import Fraction
from math import gcd, lcm

import numpy as np
import sympy
from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

LOG = logging.getLogger('linalg')


# F_p


def rref_mod_p(A, p):
    """Reduced row echelon form of A over F_p. Returns (R, pivots)."""
    R = np.array(A, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError('expected a matrix')
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def kernel_mod_p(A, p):
    """Basis of {v : A v = 0} over F_p, one vector per row."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    n = A.shape[1]
    R, pivots = rref_mod_p(A, p)
    free = [c for c in range(n) if c not in pivots]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for r, c in enumerate(pivots):
            K[i, c] = (-R[r, f]) % p
    return K


def solve_mod_p(A, b, p):
    """One solution x of A x = b over F_p, or None."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    R, pivots = rref_mod_p(np.hstack([A, b]), p)
    if pivots and pivots[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, n]
    return x


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Works over F_p (int64 rows) or over Q (Fraction rows). `add` reports
    whether the vector enlarged the span.
    """

    def __init__(self, dim, p=None):
        self.dim = dim
        self.p = p
        self.rows = []
        self.pivots = []

    def __len__(self):
        return len(self.rows)

    def _cast(self, v):
        if self.p is None:
            return np.array([Fraction(x) for x in v], dtype=object)
        return np.asarray(v, dtype=np.int64) % self.p

    def reduce(self, v):
        v = self._cast(v)
        for row, c in zip(self.rows, self.pivots):
            a = v[c]
            if a != 0:
                v = v - a * row
                if self.p is not None:
                    v %= self.p
        return v

    def contains(self, v):
        return not np.any(self.reduce(v) != 0)

    def add(self, v):
        v = self.reduce(v)
        nz = np.flatnonzero(v != 0)
        if nz.size == 0:
            return False
        c = int(nz[0])
        if self.p is None:
            v = v / v[c]
        else:
            v = v * pow(int(v[c]), -1, self.p) % self.p
        # keep rows reduced against the new pivot
        for i, row in enumerate(self.rows):
            a = row[c]
            if a != 0:
                row = row - a * v
                if self.p is not None:
                    row %= self.p
                self.rows[i] = row
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def full(self):
        return len(self.rows) == self.dim

    def coordinates(self, v):
        """Coefficients of v in terms of the stored rows, or None."""
        v = self._cast(v)
        coeffs = [v[c] for c in self.pivots]
        w = v.copy()
        for a, row in zip(coeffs, self.rows):
            w = w - a * row
            if self.p is not None:
                w %= self.p
        if np.any(w != 0):
            return None
        return coeffs


# Q


def _rational(x):
    if isinstance(x, (Fraction, sympy.Rational)):
        return sympy.Rational(x)
    return sympy.Integer(int(x))


def _fraction(x):
    x = _rational(x)
    return Fraction(int(x.p), int(x.q))


def _sympy_matrix(M):
    return sympy.Matrix([[_rational(x) for x in row] for row in M])


def rational_rref(M):
    """Reduced row echelon form over Q as Fraction rows, with pivots."""
    R, pivots = _sympy_matrix(M).rref()
    return ([[_fraction(x) for x in R.row(i)] for i in range(R.rows)],
            list(pivots))


def _primitive(v):
    v = [_fraction(x) for x in v]
    den = lcm(*[x.denominator for x in v])
    w = [int(x * den) for x in v]
    g = gcd(*w) or 1
    w = [x // g for x in w]
    lead = next((x for x in w if x != 0), 0)
    if lead < 0:
        w = [-x for x in w]
    return tuple(w)


def rational_rank_kernel(M):
    """Rank of M over Q and a kernel basis of primitive integer vectors,
    each with a positive leading entry."""
    if not len(M):
        return 0, []
    S = _sympy_matrix(M)
    kernel = [_primitive(list(v)) for v in S.nullspace()]
    return S.cols - len(kernel), kernel


def rational_solve(M, b):
    """One solution of M x = b over Q, or None."""
    A = _sympy_matrix(M)
    try:
        x, params = A.gauss_jordan_solve(
            sympy.Matrix([_rational(y) for y in b]))
    except ValueError:
        return None
    x = x.subs({t: 0 for t in params})
    return [_fraction(a) for a in x]


# Z


def _row_hnf(M):
    """Nonzero rows of the row-style Hermite normal form of M.

    sympy reduces columns with pivots collected at the bottom right, so the
    input is transposed with its coordinates reversed and the result is read
    back in reverse.
    """
    n = len(M[0])
    if not any(any(row) for row in M):
        return []
    B = sympy.Matrix([[int(x) for x in reversed(row)] for row in M]).T
    W = sympy_hnf(B)
    return [[int(W[n - 1 - c, j]) for c in range(n)]
            for j in reversed(range(W.cols))]


def hermite_normal_form(M, with_transform=False):
    """Row-style Hermite normal form H = U M over Z.

    Pivots are positive and entries above a pivot are reduced into
    [0, pivot). Zero rows sink to the bottom.
    """
    M = [[int(x) for x in row] for row in M]
    m = len(M)
    n = len(M[0]) if m else 0
    if not with_transform:
        H = _row_hnf(M) if m else []
        return H + [[0] * n for _ in range(m - len(H))]
    # rows of the HNF of [M | I] are [U M | U] with U unimodular
    aug = [row + [int(i == j) for j in range(m)] for i, row in enumerate(M)]
    full = _row_hnf(aug)
    return [r[:n] for r in full], [r[n:] for r in full]


def integer_kernel(A):
    """Z-basis of {v in Z^n : A v = 0} as rows."""
    A = [[int(x) for x in row] for row in A]
    if not A:
        return []
    n = len(A[0])
    At = [[A[i][j] for i in range(len(A))] for j in range(n)]
    H, U = hermite_normal_form(At, with_transform=True)
    return [U[i] for i in range(n) if not any(H[i])]


def saturate(rows):
    """Saturation of the Z-span of rows: (span_Q rows) intersected with
    Z^n, returned as a Z-basis."""
    K = integer_kernel(rows)
    if not K:
        n = len(rows[0])
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return integer_kernel(K)


def integer_solve(B, v):
    """Integer coefficients c with sum c_i B_i = v, or None."""
    Bt = [[B[i][j] for i in range(len(B))] for j in range(len(v))]
    x = rational_solve(Bt, v)
    if x is None or any(a.denominator != 1 for a in x):
        return None
    return [int(a) for a in x]


def integer_det(M):
    return int(sympy.Matrix([[int(x) for x in row] for row in M]).det())



def hnf_pivots(H):
    out = []
    for row in H:
        c = next((j for j, x in enumerate(row) if x != 0), None)
        if c is None:
            break
        out.append(c)
    return out


def hnf_coordinates(H, pivots, w):
    """Integer coordinates of w in the nonzero rows of a row-style HNF,
    or None when w is not in their Z-span."""
    w = [int(x) for x in w]
    coords = []
    for row, c in zip(H, pivots):
        q, r = divmod(w[c], row[c])
        if r:
            return None
        coords.append(q)
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    if any(w):
        return None
    return coords
