#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Exact coefficient rings.

Prime fields, extensions F_{p^d} with d <= 3, the integers and rationals,
and number fields Q(w) = Q[x]/(f) with an explicit Galois matrix. Vectors
over F_p are int64 numpy arrays; every other ring uses object arrays whose
entries support +, -, * and comparison with 0.

Polynomials are lists of integer coefficients, lowest degree first.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from liegrowth.core import (NotInert, NotIrreducible, NotPrime,
                            SearchExhausted)

LOG = logging.getLogger('rings')


def check_prime(p):
    if not isinstance(p, (int, np.integer)) or not sympy.isprime(int(p)):
        raise NotPrime(f'{p} is not prime')
    return int(p)


# polynomials over F_p, lowest degree first

X = sympy.Symbol('x')


def poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(a, p):
    return poly_trim([int(c) % p for c in a])


def fp_poly(a, p):
    """sympy polynomial over F_p from coefficients lowest degree first."""
    return sympy.Poly([int(c) % p for c in reversed(a)] or [0], X,
                      modulus=p)


def fp_coeffs(P, p):
    """Coefficients of P lowest degree first, reduced into [0, p)."""
    return poly_trim([int(c) % p for c in reversed(P.all_coeffs())])


def poly_rem(a, f, p):
    """Remainder of a modulo f over F_p (f need not be monic)."""
    F = fp_poly(f, p)
    if F.is_zero:
        raise ZeroDivisionError('polynomial division by zero')
    return fp_coeffs(fp_poly(a, p).rem(F), p)


def poly_powmod(a, n, f, p):
    F = fp_poly(f, p)
    result = fp_poly([1], p)
    base = fp_poly(a, p).rem(F)
    while n > 0:
        if n & 1:
            result = (result * base).rem(F)
        base = (base * base).rem(F)
        n >>= 1
    return fp_coeffs(result, p)


def roots_mod_p(f, p):
    f = poly_mod_p(f, p)
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def has_root_mod_p(f, p):
    """Decide whether f has a root in F_p via gcd(x^p - x, f)."""
    F = fp_poly(f, p)
    if F.degree() <= 0:
        return False
    xp = fp_poly(poly_powmod([0, 1], p, f, p), p)
    return F.gcd(xp - fp_poly([0, 1], p)).degree() > 0


def is_irreducible_mod_p(f, p):
    F = fp_poly(f, p)
    return F.degree() >= 1 and F.is_irreducible


def find_irreducible(p, d):
    """First monic irreducible polynomial of degree d over F_p.

    Candidates are ordered by their low coefficients read as a base-p
    number, so the result is deterministic.
    """
    check_prime(p)
    if d == 1:
        return [0, 1]
    if d not in (2, 3):
        raise ValueError(f'degree {d} not supported')
    for low in itertools.product(range(p), repeat=d):
        f = list(reversed(low)) + [1]
        if is_irreducible_mod_p(f, p):
            return f
    raise SearchExhausted(f'no irreducible polynomial of degree {d} mod {p}')


def poly_discriminant(f):
    return int(sympy.discriminant(sympy.Poly(list(reversed(f)), X)))


class IntegerRing:

    name = 'ZZ'
    characteristic = 0
    dtype = object
    zero = 0
    one = 1
    is_field = False
    degree = 1

    def __call__(self, v):
        return int(v)

    def normalize(self, a):
        return a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f'{a} is not a unit in ZZ')

    def fraction_field(self):
        return QQ

    def descriptor(self):
        return {'p': 0, 'd': 1, 'f': [0, 1], 'name': self.name}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(self.name)


class RationalField(IntegerRing):

    name = 'QQ'
    is_field = True

    def __call__(self, v):
        return Fraction(v)

    def inv(self, a):
        return 1 / Fraction(a)

    def fraction_field(self):
        return self

    def __eq__(self, other):
        return isinstance(other, RationalField)


ZZ = IntegerRing()
QQ = RationalField()


class PrimeField:
    """The prime field F_p; elements are plain integers in [0, p)."""

    dtype = np.int64
    is_field = True
    degree = 1
    zero = 0
    one = 1

    def __init__(self, p):
        self.p = check_prime(p)
        self.characteristic = self.p
        self.order = self.p
        self.name = f'F{self.p}'
        self._inverses = None

    def __call__(self, v):
        return int(v) % self.p

    def normalize(self, a):
        return np.mod(a, self.p)

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError('inverse of 0')
        return pow(a, -1, self.p)

    def inverse_table(self):
        if self._inverses is None:
            t = np.zeros(self.p, dtype=np.int64)
            for a in range(1, self.p):
                t[a] = pow(a, -1, self.p)
            self._inverses = t
        return self._inverses

    def elements(self):
        return np.arange(self.p, dtype=np.int64)

    def random(self, rng, size=None):
        return rng.integers(0, self.p, size=size, dtype=np.int64)

    def fraction_field(self):
        return self

    def frobenius_matrix(self):
        return np.ones((1, 1), dtype=np.int64)

    def mul_table(self):
        return np.ones((1, 1, 1), dtype=np.int64)

    def descriptor(self):
        return {'p': self.p, 'd': 1, 'f': [0, 1], 'name': self.name}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('F', self.p))


class ExtFieldElement:

    __slots__ = ('coeffs', 'field')

    def __init__(self, coeffs, field):
        self.coeffs = tuple(coeffs)
        self.field = field

    def _coerce(self, other):
        if isinstance(other, ExtFieldElement):
            assert other.field == self.field
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return ExtFieldElement(
            ((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
            self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ExtFieldElement(((-a) % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self.field.multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse()**(-n)
        result = self.field.one
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError('inverse of 0')
        return self**(self.field.order - 2)

    def frobenius(self):
        return self**self.field.p

    def is_zero(self):
        return not any(self.coeffs)

    def in_prime_field(self):
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, ExtFieldElement):
            return other.field == self.field and other.coeffs == self.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.field(int(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f'{c}*x^{i}')
        return ' + '.join(terms) if terms else '0'


class ExtField:
    """F_p[x]/(f) for a monic irreducible f of degree 2 or 3."""

    dtype = object
    is_field = True

    def __init__(self, p, f):
        self.p = check_prime(p)
        f = poly_mod_p(f, self.p)
        d = len(f) - 1
        if d not in (2, 3):
            raise ValueError(f'extension degree {d} not supported')
        if f[-1] != 1:
            raise ValueError('defining polynomial must be monic')
        if not is_irreducible_mod_p(f, self.p):
            raise NotIrreducible(f'{f} is reducible mod {self.p}')
        self.f = f
        self.degree = d
        self.characteristic = self.p
        self.order = self.p**d
        self.name = f'F{self.p}^{d}'
        self.zero = ExtFieldElement((0, ) * d, self)
        self.one = ExtFieldElement((1, ) + (0, ) * (d - 1), self)
        self.gen = ExtFieldElement((0, 1) + (0, ) * (d - 2), self)
        # x^k mod f for k < 2d - 1, one row per power
        self._reduce = np.array(
            [list(r) + [0] * (d - len(r))
             for r in (poly_rem([0] * k + [1], f, self.p)
                       for k in range(2 * d - 1))], dtype=np.int64)

    def __call__(self, v):
        if isinstance(v, ExtFieldElement):
            return v
        if isinstance(v, (list, tuple, np.ndarray)):
            c = [int(a) % self.p for a in v]
            if len(c) > self.degree:
                c = poly_rem(c, self.f, self.p)
            c = list(c) + [0] * (self.degree - len(c))
            return ExtFieldElement(c, self)
        c = [0] * self.degree
        c[0] = int(v) % self.p
        return ExtFieldElement(c, self)

    def multiply(self, a, b):
        c = np.convolve(np.array(a.coeffs, dtype=np.int64),
                        np.array(b.coeffs, dtype=np.int64)) % self.p
        return ExtFieldElement((c @ self._reduce % self.p).tolist(), self)

    def normalize(self, a):
        return a

    def inv(self, a):
        return self(a).inverse()

    def elements(self):
        for c in itertools.product(range(self.p), repeat=self.degree):
            yield ExtFieldElement(reversed(c), self)

    def random(self, rng):
        return ExtFieldElement(
            rng.integers(0, self.p, size=self.degree).tolist(), self)

    def frobenius_matrix(self):
        """F_p-matrix of a -> a^p in the power basis (columns are images)."""
        M = np.zeros((self.degree, self.degree), dtype=np.int64)
        for s in range(self.degree):
            M[:, s] = (self.gen**s).frobenius().coeffs
        return M

    def mul_table(self):
        """T[s, t] = coordinates of x^(s+t) in the power basis."""
        d = self.degree
        T = np.zeros((d, d, d), dtype=np.int64)
        for s in range(d):
            for t in range(d):
                T[s, t] = (self.gen**(s + t)).coeffs
        return T

    def fraction_field(self):
        return self

    def descriptor(self):
        return {'p': self.p, 'd': self.degree, 'f': list(self.f),
                'name': self.name}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.p == self.p
                and other.f == self.f)

    def __hash__(self):
        return hash(('Fq', self.p, tuple(self.f)))


def ext_field_build(p, f):
    """Build F_p[x]/(f); degree one gives the prime field itself."""
    p = check_prime(p)
    f = poly_mod_p(f, p)
    if len(f) - 1 == 1:
        if f[-1] != 1:
            raise ValueError('defining polynomial must be monic')
        return PrimeField(p)
    return ExtField(p, f)


def frobenius(x):
    if isinstance(x, ExtFieldElement):
        return x.frobenius()
    return x


def _rational(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class NumberFieldElement:
    """Element of Q(w) in the power basis; integral when all coefficients
    are integers."""

    __slots__ = ('coeffs', 'field')

    def __init__(self, coeffs, field):
        self.coeffs = tuple(_rational(c) for c in coeffs)
        self.field = field

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            assert other.field == self.field
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(
            (a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement((-a for a in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self.field.multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            return NumberFieldElement(
                (Fraction(a) / Fraction(int(other) if isinstance(
                    other, np.integer) else other) for a in self.coeffs),
                self.field)
        return self * self._coerce(other).inverse()

    def __pow__(self, n):
        result = self.field.one
        base = self
        if n < 0:
            base = base.inverse()
            n = -n
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        # solve a * y = 1 with the multiplication matrix of a
        d = self.field.degree
        M = [[Fraction(0)] * d for _ in range(d)]
        for s in range(d):
            col = (self * self.field.gen**s).coeffs
            for r in range(d):
                M[r][s] = Fraction(col[r])
        from liegrowth.linalg import rational_solve
        y = rational_solve(M, [1] + [0] * (d - 1))
        if y is None:
            raise ZeroDivisionError('inverse of 0')
        return NumberFieldElement(y, self.field)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return other.field == self.field and other.coeffs == self.coeffs
        if isinstance(other, (int, Fraction, np.integer)):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f'({c})*w^{i}')
        return ' + '.join(terms) if terms else '0'


class GaloisAction:
    """A field automorphism sigma of Q(w) as a rational matrix on the
    power basis (column s holds the coordinates of sigma(w^s))."""

    def __init__(self, field, matrix):
        self.field = field
        self.matrix = [[_rational(c) for c in row] for row in matrix]
        d = field.degree
        # sigma(w) must satisfy f
        image = NumberFieldElement([self.matrix[r][1] for r in range(d)],
                                   field) if d > 1 else field.gen
        assert field.evaluate(image).is_zero(), 'sigma(w) is not a root of f'
        self.order = self._order()

    def _order(self):
        d = self.field.degree
        x = self.field.gen
        y = x
        for k in range(1, d + 1):
            y = self(y)
            if y == x:
                return k
        raise AssertionError('Galois matrix has order > degree')

    def __call__(self, a):
        d = self.field.degree
        c = [sum(self.matrix[r][s] * a.coeffs[s] for s in range(d))
             for r in range(d)]
        return NumberFieldElement(c, self.field)

    def power_matrix(self, k):
        d = self.field.degree
        cols = []
        for s in range(d):
            y = self.field.gen**s
            for _ in range(k):
                y = self(y)
            cols.append(y.coeffs)
        return [[cols[s][r] for s in range(d)] for r in range(d)]


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial of degree <= 3,
    with the order Z[w] standing in for the ring of integers."""

    dtype = object
    is_field = True
    characteristic = 0

    def __init__(self, f, sigma_image=None, name=None):
        f = [int(c) for c in f]
        f = poly_trim(f)
        d = len(f) - 1
        if d < 1 or d > 3:
            raise ValueError(f'number field degree {d} not supported')
        if f[-1] != 1:
            raise ValueError('defining polynomial must be monic')
        if d > 1 and self._has_rational_root(f):
            raise NotIrreducible(f'{f} has a rational root')
        self.f = f
        self.degree = d
        self.name = name or f'Q[x]/({f})'
        self.zero = NumberFieldElement((0, ) * d, self)
        self.one = NumberFieldElement((1, ) + (0, ) * (d - 1), self)
        self.gen = NumberFieldElement(
            ((0, 1) + (0, ) * (d - 2)) if d > 1 else (0, ), self)
        if d == 1:
            self.gen = NumberFieldElement((-f[0], ), self)
        self.disc = poly_discriminant(f) if d > 1 else 1
        self.galois = GaloisAction(self, self._galois_matrix(sigma_image))

    @staticmethod
    def _has_rational_root(f):
        c0 = abs(f[0])
        if c0 == 0:
            return True
        divs = [k for k in range(1, c0 + 1) if c0 % k == 0]
        for r in divs:
            for x in (r, -r):
                if sum(c * x**i for i, c in enumerate(f)) == 0:
                    return True
        return False

    def __call__(self, v):
        if isinstance(v, NumberFieldElement):
            return v
        if isinstance(v, (list, tuple)):
            c = list(v) + [0] * (self.degree - len(v))
            return NumberFieldElement(c[:self.degree], self)
        if isinstance(v, np.integer):
            v = int(v)
        return NumberFieldElement((v, ) + (0, ) * (self.degree - 1), self)

    def multiply(self, a, b):
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        # reduce with the monic f
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(d):
                    prod[k - d + i] -= c * self.f[i]
        return NumberFieldElement(prod[:d], self)

    def evaluate(self, a):
        acc = self.zero
        for c in reversed(self.f):
            acc = acc * a + c
        return acc

    def _galois_matrix(self, sigma_image):
        d = self.degree
        if d == 1:
            return [[1]]
        if sigma_image is not None:
            image = NumberFieldElement(sigma_image, self)
        elif d == 2:
            # other root: -a1 - w
            image = NumberFieldElement((-self.f[1], -1), self)
        else:
            image = NumberFieldElement(self._search_conjugate(), self)
        cols = [(image**s).coeffs for s in range(d)]
        return [[cols[s][r] for s in range(d)] for r in range(d)]

    def _search_conjugate(self, bound=10):
        rng = range(-bound, bound + 1)
        for c in itertools.product(rng, repeat=self.degree):
            y = NumberFieldElement(c, self)
            if y != self.gen and self.evaluate(y).is_zero():
                LOG.debug(f'conjugate of w found: {y}')
                return c
        raise SearchExhausted(
            f'no conjugate of w with coefficients bounded by {bound}')

    def galois_matrix(self):
        return self.galois.matrix

    def mul_table(self):
        d = self.degree
        T = np.zeros((d, d, d), dtype=object)
        for s in range(d):
            for t in range(d):
                T[s, t] = list((self.gen**(s + t)).coeffs) if d > 1 else [1]
        return T

    def is_inert(self, p):
        if self.degree == 1:
            return False
        return not has_root_mod_p(self.f, p) and self.disc % p != 0

    @lru_cache(maxsize=None)
    def residue_field(self, p):
        p = check_prime(p)
        if self.degree == 1:
            return PrimeField(p)
        try:
            return ExtField(p, self.f)
        except NotIrreducible:
            raise NotInert(f'{self.f} is reducible mod {p}')

    def residue_galois_power(self, p):
        """j with sigma(w) = w^(p^j) in the residue field at an inert p."""
        F = self.residue_field(p)
        if self.degree == 1:
            return 0
        image = nf_reduce_mod_p(self.galois(self.gen), p)
        y = F.gen
        for j in range(self.degree):
            if y == image:
                return j
            y = y.frobenius()
        raise AssertionError('sigma does not reduce to a Frobenius power')

    def fraction_field(self):
        return self

    def descriptor(self):
        return {'p': 0, 'd': self.degree, 'f': list(self.f),
                'name': self.name}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.f == self.f

    def __hash__(self):
        return hash(('Q', tuple(self.f)))


def nf_reduce_mod_p(x, p):
    """Reduce an integral element of Z[w] into O_E/p = F_{p^d}."""
    field = x.field
    F = field.residue_field(p)
    if not field.is_inert(p):
        raise NotInert(f'{p} is not inert for {field.f}')
    c = []
    for a in x.coeffs:
        a = Fraction(a)
        if a.denominator % p == 0:
            raise ValueError(f'{x} has a denominator divisible by {p}')
        c.append(a.numerator * pow(a.denominator, -1, p) % p)
    return F(c)


def frobenius_twist_nonvanishing(terms, p, d):
    """Find w in F_{p^d} outside F_p with P(w, w^p, ..., w^(p^(d-1))) != 0.

    `terms` is a list of (coefficient, exponents) pairs with one exponent
    per variable. A witness always exists when p > deg P + 1.
    """
    F = ext_field_build(p, find_irreducible(p, d))
    for low in itertools.product(range(p), repeat=d):
        w = F(list(low))
        if w.in_prime_field():
            continue
        conj = [w]
        for _ in range(d - 1):
            conj.append(conj[-1].frobenius())
        acc = F.zero
        for c, exps in terms:
            t = F(int(c))
            for x, k in zip(conj, exps):
                t = t * x**int(k)
            acc = acc + t
        if not acc.is_zero():
            return w
    raise SearchExhausted(f'P vanishes on F{p}^{d} minus F{p}')
