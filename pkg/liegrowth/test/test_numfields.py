import numpy as np
import pytest

from liegrowth.core import DegreeNotDividing, InsufficientPrimes
from liegrowth.numfields import (classify_prime, classify_primes,
                                 density_scan, gaussian_period_polynomial,
                                 independent_family, predicted_density,
                                 prime_sieve)
from liegrowth.rings import poly_discriminant

GOLDEN = [-1, 1, 1]
CUBIC = [-1, -2, 1, 1]


def test_prime_sieve():
    assert list(prime_sieve(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(prime_sieve(1)) == 0
    assert len(prime_sieve(10**4)) == 1229


@pytest.mark.parametrize('q, d, f, disc', [(5, 2, GOLDEN, 5),
                                           (7, 3, CUBIC, 49),
                                           (13, 2, [-3, 1, 1], 13)])
def test_period_polynomials(q, d, f, disc):
    sub = gaussian_period_polynomial(q, d)
    assert sub.f == f
    assert sub.disc == disc
    K = sub.number_field()
    assert K.degree == d
    assert K.galois.order == d


def test_period_degree_must_divide():
    with pytest.raises(DegreeNotDividing):
        gaussian_period_polynomial(5, 3)
    with pytest.raises(DegreeNotDividing):
        gaussian_period_polynomial(13, 4)


def test_period_discriminant_is_prime_power():
    for sub in independent_family(3, 3):
        assert sub.disc == sub.q**2
        assert sub.number_field().is_inert(2) == (
            classify_prime(sub.f, 2).status == 'inert')


@pytest.mark.parametrize('p, status', [(2, 'inert'), (5, 'ramified'),
                                       (11, 'split'), (3, 'inert'),
                                       (19, 'split')])
def test_classify_prime_golden(p, status):
    assert classify_prime(GOLDEN, p).status == status


def test_classify_prime_cubic():
    # inert exactly when p is not +-1 mod 7
    for p in (2, 3, 5, 11, 13, 29):
        expected = 'split' if p % 7 in (1, 6) else 'inert'
        assert classify_prime(CUBIC, p).status == expected
    assert classify_prime(CUBIC, 7).status == 'ramified'


def test_ramified_exactly_at_discriminant():
    primes = prime_sieve(10**4)
    status = classify_primes([GOLDEN, CUBIC], primes, workers=1)
    for f, row in zip([GOLDEN, CUBIC], status):
        disc = poly_discriminant(f)
        ramified = primes[row == 2]
        assert all(disc % int(p) == 0 for p in ramified)
        assert set(int(p) for p in ramified) == {
            p for p in (5, 7) if disc % p == 0}


def test_independent_family():
    fam = independent_family(2, 3)
    assert [s.q for s in fam] == [5, 13, 17]
    fam = independent_family(3, 2)
    assert [s.q for s in fam] == [7, 13]
    with pytest.raises(InsufficientPrimes):
        independent_family(3, 5, bound=20)


def test_predicted_density():
    assert predicted_density(2) == 0.5
    assert predicted_density(3) == pytest.approx(2 / 3)


def test_density_scan_small():
    rep = density_scan([GOLDEN, [-3, 1, 1]], B=10**4, workers=1)
    assert rep.count == 1229
    assert rep.independent
    for got, want in zip(rep.densities, rep.predicted):
        assert abs(got - want) < 0.04
    assert rep.predicted_union == pytest.approx(0.75)
    doc = rep.to_json()
    assert doc['bound'] == 10**4 and len(doc['densities']) == 2


def test_density_scan_flags_dependent_family():
    rep = density_scan([GOLDEN, GOLDEN], B=1000, workers=1)
    assert not rep.independent


@pytest.mark.slow
def test_chebotarev_densities():
    rep = density_scan([GOLDEN, CUBIC], B=10**5)
    assert abs(rep.densities[0] - 1 / 2) < 0.02
    assert abs(rep.densities[1] - 2 / 3) < 0.02
    rep = density_scan([GOLDEN, [-3, 1, 1]], B=10**5)
    assert abs(rep.union - 3 / 4) < 0.02


@pytest.mark.slow
def test_parallel_classification_matches_serial():
    primes = prime_sieve(2 * 10**4)
    serial = classify_primes([CUBIC], primes, workers=1)
    parallel = classify_primes([CUBIC], primes, workers=2)
    assert np.array_equal(serial, parallel)
