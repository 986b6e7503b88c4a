from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from liegrowth.core import NotInert, NotIrreducible, NotPrime
from liegrowth.rings import (ExtField, NumberField, PrimeField, check_prime,
                             ext_field_build, find_irreducible,
                             frobenius_twist_nonvanishing, has_root_mod_p,
                             is_irreducible_mod_p, nf_reduce_mod_p,
                             poly_discriminant, poly_powmod, poly_rem,
                             roots_mod_p)

PRIMES = [2, 3, 5, 7, 11, 13, 101]


def test_check_prime():
    assert check_prime(7) == 7
    assert check_prime(np.int64(13)) == 13
    for bad in (1, 4, 9, -3, 7.0):
        with pytest.raises(NotPrime):
            check_prime(bad)


def test_not_prime_is_value_error():
    with pytest.raises(ValueError):
        PrimeField(15)


@given(st.sampled_from(PRIMES[1:]), st.integers(1, 10**6))
def test_prime_field_inverse(p, a):
    F = PrimeField(p)
    a %= p
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            F.inv(a)
    else:
        assert a * F.inv(a) % p == 1
        assert F.inverse_table()[a] == F.inv(a)


@pytest.mark.parametrize('p, d', [(2, 2), (3, 2), (5, 3), (7, 2), (3, 3)])
def test_find_irreducible(p, d):
    f = find_irreducible(p, d)
    assert len(f) == d + 1 and f[-1] == 1
    assert not has_root_mod_p(f, p)
    assert roots_mod_p(f, p) == []


def test_ext_field_rejects_reducible():
    with pytest.raises(NotIrreducible):
        ExtField(5, [-1, 0, 1])


@pytest.mark.parametrize('p, d', [(3, 2), (5, 2), (2, 3), (3, 3)])
def test_ext_field_axioms(p, d):
    F = ExtField(p, find_irreducible(p, d))
    els = list(F.elements())
    assert len(els) == p**d
    rng = np.random.default_rng([p, d])
    for _ in range(20):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        if not a.is_zero():
            assert a * a.inverse() == F.one
        # Frobenius is a field automorphism of order d
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        x = a
        for _ in range(d):
            x = x.frobenius()
        assert x == a


def test_ext_field_build_degree_one():
    assert ext_field_build(7, [3, 1]) == PrimeField(7)


def test_frobenius_matrix_matches_power():
    F = ExtField(5, find_irreducible(5, 3))
    M = F.frobenius_matrix()
    a = F([1, 2, 3])
    img = M @ np.array(a.coeffs, dtype=np.int64) % 5
    assert list(img) == list(a.frobenius().coeffs)


def test_discriminant():
    assert poly_discriminant([-1, 1, 1]) == 5
    assert poly_discriminant([-1, -2, 1, 1]) == 49


def test_number_field_quadratic():
    E = NumberField([-1, 1, 1])
    w = E.gen
    assert E.evaluate(w).is_zero()
    assert E.galois.order == 2
    s = E.galois(w)
    assert E.evaluate(s).is_zero()
    assert s != w
    assert E.galois(s) == w
    assert (w * w) == E([1, -1])
    assert w * w.inverse() == E.one


def test_number_field_cubic_conjugate_search():
    E = NumberField([-1, -2, 1, 1])
    assert E.galois.order == 3
    s = E.galois(E.gen)
    assert E.evaluate(s).is_zero()


def test_inert_split_ramified():
    E = NumberField([-1, 1, 1])
    assert E.is_inert(2)
    assert not E.is_inert(5)
    assert not E.is_inert(11)
    assert E.is_inert(7)


def test_residue_field_and_reduction():
    E = NumberField([-1, 1, 1])
    F = E.residue_field(7)
    w = nf_reduce_mod_p(E.gen, 7)
    assert w * w + w - F.one == F.zero
    with pytest.raises(NotInert):
        E.residue_field(11)
    with pytest.raises(NotInert):
        nf_reduce_mod_p(E.gen, 11)


def test_reduction_of_fractions():
    E = NumberField([-1, 1, 1])
    x = E([Fraction(1, 2), 0])
    y = nf_reduce_mod_p(x, 7)
    assert y * E.residue_field(7)(2) == E.residue_field(7).one


def test_residue_galois_power_is_frobenius():
    E = NumberField([-1, 1, 1])
    for p in (2, 3, 7, 13):
        assert E.residue_galois_power(p) == 1


def test_frobenius_twist_nonvanishing():
    # x0 - x1 vanishes exactly on F_p
    terms = [(1, (1, 0)), (-1, (0, 1))]
    w = frobenius_twist_nonvanishing(terms, 7, 2)
    assert not w.in_prime_field()
    assert w - w.frobenius() != w.field.zero


def test_poly_rem():
    # x^3 + 1 = (x + 1)(x^2 - x + 1)
    assert poly_rem([1, 0, 0, 1], [1, 1], 7) == []
    assert poly_rem([0, 0, 1], [1, 1, 1], 2) == [1, 1]
    # non-monic divisor
    assert poly_rem([1, 0, 1], [0, 3], 5) == [1]
    with pytest.raises(ZeroDivisionError):
        poly_rem([1, 1], [5], 5)


def test_poly_powmod_is_frobenius():
    f = find_irreducible(7, 3)
    xp = [0, 1]
    for _ in range(3):
        xp = poly_powmod(xp, 7, f, 7)
    assert xp == [0, 1]


@given(st.sampled_from([2, 3, 5, 7, 11]),
       st.lists(st.integers(0, 10), min_size=2, max_size=5))
def test_has_root_matches_brute_force(p, f):
    f = list(f)
    if all(c % p == 0 for c in f[1:]):
        return
    assert has_root_mod_p(f, p) == bool(roots_mod_p(f, p))
    g = [c % p for c in f]
    while g and g[-1] == 0:
        g.pop()
    if len(g) - 1 in (2, 3):
        assert is_irreducible_mod_p(g, p) == (not roots_mod_p(g, p))


def test_ext_field_products():
    F = ExtField(2, [1, 1, 1])
    assert F.gen * F.gen == F([1, 1])
    assert F.gen**3 == F.one
    F = ExtField(3, [1, 0, 1])
    assert F.gen * F.gen == F(2)
    assert F([2, 1]) * F([1, 1]) == F([1, 0])
