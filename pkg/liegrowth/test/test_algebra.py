import numpy as np
import pytest
from hypothesis import given, strategies as st

from liegrowth.algebra import (LieAlgebra, MatrixLieAlgebra, Sl2Triple,
                               chevalley_algebra, exp_ad, exp_ad_apply,
                               ideal_closure, left_normed, nilpotency_order,
                               simplicity_check, subalgebra_closure,
                               witt_algebra)
from liegrowth.core import CharTooSmall, NotNilpotent, NotPrime
from liegrowth.rings import QQ, ZZ, PrimeField
from liegrowth.roots import RootSystem

TYPES = ['A1', 'A2', 'A3', 'A4', 'B2', 'B3', 'B4', 'C3', 'C4', 'D4', 'G2']


@pytest.mark.parametrize('label', TYPES)
def test_jacobi_over_z(label):
    g = chevalley_algebra(RootSystem(label), ZZ)
    assert g.dim == len(g.root_system.roots) + g.root_system.rank
    assert g.check_jacobi()


@pytest.mark.parametrize('label', TYPES)
@pytest.mark.parametrize('p', [5, 7, 11])
def test_jacobi_over_fp(label, p):
    g = chevalley_algebra(RootSystem(label), PrimeField(p))
    assert g.check_jacobi()


def test_jacobi_over_q():
    g = chevalley_algebra(RootSystem('B2'), QQ)
    assert g.check_jacobi()


@given(st.sampled_from(['A2', 'G2']), st.integers(0, 2**32 - 1))
def test_antisymmetry(label, seed):
    g = chevalley_algebra(RootSystem(label), PrimeField(7))
    rng = np.random.default_rng(seed)
    x, y = g.ring.random(rng, (2, g.dim))
    assert not np.any((g.bracket(x, y) + g.bracket(y, x)) % 7)
    assert not np.any(g.bracket(x, x))
    # ad is the matrix of the bracket
    assert np.array_equal(g.ad(x) @ y % 7, g.bracket(x, y))


def test_sl2_relations():
    g = chevalley_algebra(RootSystem('A1'), ZZ)
    e, f, h = g.element('e'), g.element('f'), g.element('h')
    assert Sl2Triple(e, h, f).verify(g)
    assert list(g.bracket(h, e)) == list(2 * e)
    assert list(g.bracket(h, f)) == list(-2 * f)


def test_highest_sl2_triple_mod_p():
    for label in ('A2', 'B3', 'G2'):
        g = chevalley_algebra(RootSystem(label), PrimeField(7))
        t = Sl2Triple(g.element('e'), g.element('h'), g.element('f'))
        assert t.verify(g)


def test_bracket_many_and_rows():
    g = chevalley_algebra(RootSystem('A2'), PrimeField(5))
    rng = np.random.default_rng(1)
    X = g.ring.random(rng, (3, g.dim))
    Y = g.ring.random(rng, (4, g.dim))
    B = g.bracket_many(X, Y)
    assert B.shape == (3, 4, g.dim)
    for a in range(3):
        for b in range(4):
            assert np.array_equal(B[a, b], g.bracket(X[a], Y[b]))
    R = g.bracket_rows(X, Y[:3])
    for a in range(3):
        assert np.array_equal(R[a], g.bracket(X[a], Y[a]))


def test_matrix_model_matches_chevalley_dimension():
    for n in (2, 3, 4):
        m = MatrixLieAlgebra(n, PrimeField(7))
        g = chevalley_algebra(RootSystem(f'A{n - 1}'), PrimeField(7))
        assert m.dim == g.dim == n * n - 1
        assert m.check_jacobi()


def test_matrix_model_roundtrip():
    m = MatrixLieAlgebra(3, ZZ)
    M = np.array([[1, 2, 0], [0, -3, 4], [5, 0, 2]])
    v = m.from_matrix(M)
    assert np.array_equal(m.to_matrix(v).astype(np.int64), M)
    A = m.to_matrix(m.basis(0)).astype(np.int64)
    B = m.to_matrix(m.basis(m.dim - 1)).astype(np.int64)
    w = m.bracket(m.basis(0), m.basis(m.dim - 1))
    assert np.array_equal(m.to_matrix(w).astype(np.int64), A @ B - B @ A)


@pytest.mark.parametrize('p', [5, 7, 11])
def test_witt_algebra(p):
    g = witt_algebra(p)
    assert g.dim == p
    assert g.check_jacobi()
    # [e_i, e_j] = (j - i) e_{i+j}
    e = {i: g.basis(i + 1) for i in range(-1, p - 1)}
    assert np.array_equal(g.bracket(e[-1], e[2]), 3 * e[1] % p)
    assert np.array_equal(g.bracket(e[1], e[2]), e[3] % p)
    assert not np.any(g.bracket(e[1], e[p - 2]))


def test_witt_needs_p_at_least_5():
    with pytest.raises(CharTooSmall):
        witt_algebra(3)
    with pytest.raises(NotPrime):
        witt_algebra(9)


def test_jacobi_failure_detected():
    # [a, b] = a, [a, c] = b gives J(a, b, c) = b
    with pytest.raises(AssertionError):
        LieAlgebra(ZZ, ['a', 'b', 'c'], [(0, 1, 0, 1), (0, 2, 1, 1)])


def test_json_roundtrip():
    g = chevalley_algebra(RootSystem('G2'), PrimeField(7))
    h = LieAlgebra.from_json(g.to_json())
    assert h.labels == g.labels
    assert h.structure_triples() == g.structure_triples()


def test_nilpotency_and_exp():
    g = chevalley_algebra(RootSystem('A2'), PrimeField(7))
    e = g.element('e')
    assert nilpotency_order(g, e) == 3
    E = exp_ad(g, e)
    x = g.element('f')
    y = exp_ad_apply(g, e, x)
    assert np.array_equal(y, E @ x % 7)
    # exp(ad e) f = f + h - e
    assert np.array_equal(y, (x + g.element('h') - e) % 7)
    with pytest.raises(NotNilpotent):
        exp_ad(g, g.element('h'))


def test_exp_needs_large_characteristic():
    g = chevalley_algebra(RootSystem('A1'), PrimeField(3))
    assert nilpotency_order(g, g.element('e')) == 3
    with pytest.raises(CharTooSmall):
        exp_ad(g, g.element('e'))


def test_closures():
    g = chevalley_algebra(RootSystem('A2'), PrimeField(5))
    e, f = g.element('e'), g.element('f')
    S = subalgebra_closure(g, [e, f])
    assert S.dim == 3
    simple = [g.basis(g.index(s)) for s in ('e_10', 'e_01', 'f_10', 'f_01')]
    assert subalgebra_closure(g, simple).is_full()
    assert ideal_closure(g, e).is_full()


def test_simplicity():
    g = chevalley_algebra(RootSystem('A2'), PrimeField(7))
    v = simplicity_check(g, 5, np.random.default_rng(0))
    assert v.probably_simple
    # sl2 over F_2 is not simple: [e, f] = h is central
    g2 = chevalley_algebra(RootSystem('A1'), PrimeField(2), check=False)
    v2 = simplicity_check(g2, 20, np.random.default_rng(0))
    assert not v2.probably_simple


def test_left_normed():
    g = chevalley_algebra(RootSystem('A1'), PrimeField(7))
    e, f, h = g.element('e'), g.element('f'), g.element('h')
    assert np.array_equal(left_normed(g, e, []), e)
    assert np.array_equal(left_normed(g, e, [f, f]),
                          g.bracket(g.bracket(e, f), f))
    assert np.array_equal(left_normed(g, e, [f, f]), -2 * f % 7)
    assert np.array_equal(left_normed(g, h, [e]), 2 * e % 7)
