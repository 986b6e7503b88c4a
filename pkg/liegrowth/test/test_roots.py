import pytest

from liegrowth.core import InvalidType, NotASymmetry
from liegrowth.roots import (ChevalleyConstants, RootSystem,
                             diagram_automorphism, parse_type,
                             standard_permutation)

ROOT_COUNTS = {
    'A1': 2, 'A2': 6, 'A3': 12, 'A4': 20, 'B2': 8, 'B3': 18, 'B4': 32,
    'C3': 18, 'C4': 32, 'D4': 24, 'G2': 12, 'F4': 48, 'E6': 72
}


@pytest.mark.parametrize('label, count', sorted(ROOT_COUNTS.items()))
def test_root_counts(label, count):
    R = RootSystem(label)
    assert len(R.roots) == count
    assert len(R.positive) == count // 2
    assert all(R.is_root(R.neg(a)) for a in R.roots)


def test_parse_type():
    assert parse_type('A2') == ('A', 2)
    assert parse_type('D', 4) == ('D', 4)
    for bad in ('A0', 'B1', 'D3', 'E5', 'G3', 'X2'):
        with pytest.raises(InvalidType):
            parse_type(bad)


@pytest.mark.parametrize('label, highest', [('A2', (1, 1)), ('G2', (3, 2)),
                                            ('B2', (1, 2)), ('C2', (2, 1))])
def test_highest_root(label, highest):
    R = RootSystem(label)
    assert R.highest == highest or R.highest == tuple(reversed(highest))
    assert sum(R.highest) == max(sum(a) for a in R.roots)


def test_reflections_preserve_roots():
    R = RootSystem('B3')
    for a in R.roots:
        for j in range(R.rank):
            assert R.is_root(R.reflect(a, j))


@pytest.mark.parametrize('label', ['A3', 'B3', 'C3', 'D4', 'G2'])
def test_chevalley_constants(label):
    R = RootSystem(label)
    C = ChevalleyConstants(R)
    for a in R.roots:
        for b in R.roots:
            s = R.add(a, b)
            n = C.N(a, b)
            assert n == -C.N(b, a)
            if any(s) and R.is_root(s):
                # N_ab = +-(p + 1)
                assert abs(n) == R.p_string(a, b) + 1
            else:
                assert n == 0
            # N_{-a,-b} = -N_ab
            assert C.N(R.neg(a), R.neg(b)) == -n


def test_steinberg_sign_a2():
    R = RootSystem('A2')
    theta = diagram_automorphism(R, standard_permutation(R, 2))
    assert theta.eps[(1, 1)] == -1
    assert theta.eps[(1, 0)] == 1 and theta.eps[(0, 1)] == 1
    target, sign = theta.signed_permutation()
    i = theta.C.basis_index((1, 1))
    assert target[i] == i and sign[i] == -1


@pytest.mark.parametrize('label, order', [('A3', 2), ('A4', 2), ('D4', 2),
                                          ('D4', 3), ('E6', 2)])
def test_diagram_automorphisms(label, order):
    R = RootSystem(label)
    theta = diagram_automorphism(R, standard_permutation(R, order))
    assert theta.order == order
    assert theta.verify()


def test_not_a_symmetry():
    R = RootSystem('B3')
    with pytest.raises(NotASymmetry):
        diagram_automorphism(R, [2, 1, 0])
    with pytest.raises(InvalidType):
        standard_permutation(R, 2)


def test_root_system_json_roundtrip():
    R = RootSystem('C3')
    assert RootSystem.from_json(R.to_json()).positive == R.positive
