import numpy as np
import pytest

from liegrowth.algebra import simplicity_check
from liegrowth.core import NotInert, OrderMismatch, PrimeTooSmall
from liegrowth.forms import (FormDescriptor, build_covering, build_form,
                             build_theta, favorable_pair, get_forms,
                             load_form, reduce_covering, restrict_scalars,
                             sl2_triple_in_covering)
from liegrowth.algebra import chevalley_algebra
from liegrowth.rings import ZZ, ExtField, find_irreducible
from liegrowth.roots import RootSystem, diagram_automorphism

FORM_PRIMES = {
    '2A2': ([7, 13, 17], 8),
    '2A3': ([7, 13, 17], 15),
    '2D4': ([7, 13, 17], 28),
    '3D4': ([5, 11, 13], 28),
}


def test_packaged_forms():
    forms = get_forms()
    for name in ('A1', 'A2', 'G2', 'D4', '2A2', '2A3', '2D4', '3D4', '2E6'):
        assert name in forms
    desc = load_form('2A2')
    assert isinstance(desc, FormDescriptor)
    assert desc.twist == 2 and desc.polynomial == [-1, 1, 1]
    assert desc.number_field().is_inert(7)


@pytest.mark.parametrize('name', sorted(FORM_PRIMES))
def test_form_dimensions(name):
    primes, dim = FORM_PRIMES[name]
    desc = load_form(name)
    for p in primes:
        assert desc.number_field().is_inert(p)
        fpa = build_form(desc, p, require_inert=True)
        assert fpa.algebra.dim == dim
        assert fpa.ambient.dim == dim * desc.twist


def test_twisted_form_is_simple():
    fpa = build_form('2A2', 7)
    v = simplicity_check(fpa.algebra, 5, np.random.default_rng(0))
    assert v.probably_simple


def test_fixed_vectors():
    fpa = build_form('2A3', 7)
    Th = fpa.theta
    for row in fpa.basis:
        assert np.array_equal(Th(row), row % 7)
    x, y = fpa.highest_elements()
    assert np.array_equal(Th(fpa.embed(x)), fpa.embed(x))
    with pytest.raises(ValueError):
        fpa.coordinates(fpa.ambient.basis(0))


def test_split_form_is_chevalley_algebra():
    fpa = build_form('A2', 5)
    assert fpa.algebra.dim == 8
    assert fpa.ambient.dim == 8


def test_non_inert_prime_falls_back_to_irreducible():
    # 11 splits x^2 + x - 1
    fpa = build_form('2A2', 11)
    assert fpa.algebra.dim == 8
    with pytest.raises(NotInert):
        build_form('2A2', 11, require_inert=True)


def test_order_mismatch():
    R = RootSystem('A2')
    theta = diagram_automorphism(R, [1, 0])
    F = ExtField(5, find_irreducible(5, 3))
    with pytest.raises(OrderMismatch):
        build_theta(theta, F)


def test_restricted_algebra_brackets():
    gZ = chevalley_algebra(RootSystem('A1'), ZZ)
    F = ExtField(7, find_irreducible(7, 2))
    g = restrict_scalars(gZ, F)
    assert g.dim == 6
    assert g.check_jacobi()
    # [w e, w f] = w^2 h
    a = g.scalar_vector(F.gen, gZ.index(gZ.labels[0]))
    b = g.scalar_vector(F.gen, gZ.index(gZ.labels[2]))
    h = g.scalar_vector(F.gen * F.gen, gZ.index(gZ.labels[1]))
    assert np.array_equal(g.bracket(a, b), h)


def test_covering_lattice_2a2():
    L = build_covering('2A2')
    assert len(L.basis) == 8
    assert L.algebra.dim == 8
    assert L.algebra.check_jacobi()
    assert L.N >= 1
    for p in (7, 13):
        red = reduce_covering(L, p)
        assert red.fixed.algebra.dim == 8
    with pytest.raises(NotInert):
        reduce_covering(L, 11)


def test_covering_lattice_split():
    L = build_covering('A1')
    assert len(L.basis) == 3
    red = reduce_covering(L, 5)
    assert red.fixed.algebra.dim == 3


def test_reduce_covering_prime_too_small():
    L = build_covering('2A2')
    with pytest.raises(PrimeTooSmall):
        reduce_covering(L, 2)


def test_sl2_triple_in_covering():
    L = build_covering('2A2')
    t = sl2_triple_in_covering(L)
    assert t.verify(L.ambient)


def test_favorable_pair_split():
    L = build_covering('A1')
    fav = favorable_pair(L, max_support=2)
    assert fav.det != 0
    for q in fav.bad_primes:
        assert fav.det % q == 0


@pytest.mark.slow
def test_favorable_pair_twisted():
    L = build_covering('2A2')
    fav = favorable_pair(L, max_support=2)
    assert fav.det != 0
