import numpy as np
import pytest

from liegrowth.core import CharTooSmall, NotDecomposable, ZeroElement
from liegrowth.extremal import (TwistedMatrixForm, bracket_in_eta_span,
                                classify_element, degenerate_quadratic_case,
                                eigen_decompose, eta, extremal_basis_pipeline,
                                quadratic_map, quadratic_nonzero)
from liegrowth.test import split_algebra as split

SWEEP_PRIMES = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_eta_sl2():
    g = split('A1', 7)
    e, f, h = g.element('e'), g.element('f'), g.element('h')
    assert np.array_equal(eta(g, e, f), (f + h - e) % 7)
    assert np.array_equal(eta(g, e, e), e)
    assert bracket_in_eta_span(g, e, f)


def test_classify_element():
    g = split('A2', 7)
    assert classify_element(g, g.element('e')) == 'extremal'
    assert classify_element(g, g.element('f')) == 'extremal'
    assert classify_element(g, g.element('h')) == 'neither'
    with pytest.raises(ZeroElement):
        classify_element(g, g.zero())


def test_eigen_decompose():
    g = split('A1', 7)
    D = eigen_decompose(g, g.element('h'))
    assert D.dims == (1, 0, 1, 0, 1)
    g = split('A2', 7)
    D = eigen_decompose(g, g.element('h'))
    assert D.dims == (1, 2, 2, 2, 1)
    with pytest.raises(NotDecomposable):
        eigen_decompose(g, g.zero())
    with pytest.raises(CharTooSmall):
        eigen_decompose(split('A1', 3), split('A1', 3).element('h'))


def test_quadratic_map():
    g = split('A1', 7)
    e, f, h = g.element('e'), g.element('f'), g.element('h')
    # [[f, h], [e, h]] = [2f, -2e] = 4h
    assert np.array_equal(quadratic_map(g, f, e, h)[0], 4 * h % 7)
    assert quadratic_nonzero(g, f, e).nonzero
    assert not quadratic_nonzero(g, e, e).nonzero


@pytest.mark.parametrize('form', ['A1', 'A2', '2A2'])
def test_pipeline(form):
    res = extremal_basis_pipeline(form, 7)
    g = res.algebra
    assert res.ok
    assert len(res.basis) == g.dim
    for b in res.basis:
        v = np.array(b['vector'])
        if b['tag'] == 'y':
            continue
        assert classify_element(g, v) == 'extremal'
        z = np.array(b['witness'])
        assert np.any(quadratic_map(g, res.y, v, z))
    cert = res.certificate(form, 7)
    assert cert['dim'] == g.dim and cert['ok']
    assert sum(cert['eigenspace_dims']) == g.dim


def test_pipeline_needs_p_above_5():
    with pytest.raises(CharTooSmall):
        extremal_basis_pipeline('A2', 5)


@pytest.mark.slow
@pytest.mark.parametrize('form', ['2A3', '2D4'])
def test_pipeline_twisted_forms(form):
    assert extremal_basis_pipeline(form, 7).ok


@pytest.mark.slow
@pytest.mark.parametrize('p', SWEEP_PRIMES)
def test_pipeline_prime_sweep(p):
    assert extremal_basis_pipeline('A1', p).ok
    assert extremal_basis_pipeline('A2', p).ok
    if p % 5 in (2, 3):
        # inert in the golden ratio field
        for form in ('2A2', '2A3', '2D4'):
            assert extremal_basis_pipeline(form, p).ok


def test_twisted_matrix_form():
    T = TwistedMatrixForm(4, 7)
    assert T.algebra.dim == 15
    g = T.algebra
    assert classify_element(g, T.x()) == 'extremal'
    assert np.any(g.bracket(T.x(), T.y()))
    for i in (2, 3):
        assert classify_element(g, T.U1(i)) == 'extremal'


def test_degenerate_quadratic_case():
    # b = eta(U_1(2), U_1(3)) in the twisted sl_4 fails q_{y,b} != 0
    res = degenerate_quadratic_case(4, 7, 2)
    assert any(res['b'])
    assert res['q_at_x_zero']
    assert res['witness_kind'] is None
    assert not res['exhaustive_nonzero']
