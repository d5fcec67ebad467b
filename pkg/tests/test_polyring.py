import random

import pytest

from jetcalc.errors import DomainError, UndefinedDominantError
from jetcalc.polyring import (
    MINUS_INFINITY,
    AsymOrder,
    MultiPoly,
    asym_compare,
    certify_positive,
    degree,
    dominant,
    elementary_symmetric,
    find_certificate,
    min_certified_bound,
)


def poly(terms, num_vars=2):
    return MultiPoly.from_terms(num_vars, terms)


def test_degree_and_dominant():
    p = poly({(2, 1): 1, (1, 2): 1, (1, 1): -4})
    assert degree(p) == 3
    assert dominant(p) == poly({(2, 1): 1, (1, 2): 1})
    assert degree(MultiPoly.zero(2)) == MINUS_INFINITY


def test_dominant_of_zero_is_undefined():
    with pytest.raises(UndefinedDominantError):
        dominant(MultiPoly.zero(3))


def test_text_form_is_graded_lex():
    p = poly({(2, 1): 1, (1, 2): 1, (1, 1): -4})
    assert p.to_text() == "d1^2*d2 + d1*d2^2 - 4*d1*d2"
    assert poly({(1, 0): -4, (0, 0): 10}).to_text() == "-4*d1 + 10"
    assert MultiPoly.zero(1).to_text() == "0"


def test_json_round_trip_keeps_big_coefficients():
    p = poly({(3, 0): 10 ** 40, (0, 0): -7})
    data = p.to_json()
    assert data[0] == {"exponents": [3, 0], "coeff": str(10 ** 40)}
    assert MultiPoly.from_json(data) == p


def test_arithmetic_with_integers():
    d1, d2 = MultiPoly.gens(2)
    p = d1 * d2 * (d1 + d2 - 4)
    assert p == poly({(2, 1): 1, (1, 2): 1, (1, 1): -4})
    assert (p - p).is_zero
    assert 2 - d1 == -(d1 - 2)
    assert p(3, 2) == 6


def test_mixing_rings_is_rejected():
    with pytest.raises(DomainError):
        MultiPoly.gen(1, 1) + MultiPoly.gen(2, 1)


def test_shift_and_homogeneous_part():
    d = MultiPoly.gen(1, 1)
    p = 44 * d ** 3 - 872 * d ** 2 - 300 * d
    assert p.shift(21) == 44 * d ** 3 + 1900 * d ** 2 + 21288 * d + 16632
    assert p.homogeneous_part(2) == -872 * d ** 2


def test_symmetry():
    assert elementary_symmetric(3, 2).is_symmetric()
    d1, d2 = MultiPoly.gens(2)
    assert not (d1 ** 2 + d2).is_symmetric()


@pytest.mark.parametrize(
    "num_vars, k, value",
    [(3, 0, 1), (3, 1, 6), (3, 2, 11), (3, 3, 6), (3, 4, 0)],
)
def test_elementary_symmetric_at_one_two_three(num_vars, k, value):
    assert elementary_symmetric(num_vars, k).evaluate((1, 2, 3)) == value


def test_asym_compare():
    d1, d2 = MultiPoly.gens(2)
    assert asym_compare(d1 ** 2 + d1, d1 ** 2 - 5) is AsymOrder.SIM
    assert asym_compare(2 * d1 ** 2, d1 ** 2) is AsymOrder.GTRSIM
    assert asym_compare(d1 ** 2, d2 ** 2) is AsymOrder.INCOMPARABLE
    assert asym_compare(MultiPoly.zero(2), MultiPoly.zero(2)) is AsymOrder.SIM


def test_certificate_for_space_curve_difference():
    d1, d2 = MultiPoly.gens(2)
    p = d1 * d2 * (d1 + d2 - 4)
    cert = find_certificate(p, 200)
    assert cert.bound == 3
    assert cert.shifted_constant == 18
    assert cert.certified
    assert not certify_positive(p, 2).certified


@pytest.mark.parametrize(
    "terms, bound",
    [
        ({(3,): 44, (2,): -872, (1,): -300}, 21),
        ({(3,): 44, (2,): -1016, (1,): -300}, 24),
        ({(1,): 1, (0,): -3}, 4),
    ],
)
def test_min_certified_bound(terms, bound):
    assert min_certified_bound(MultiPoly.from_terms(1, terms), 200) == bound


def test_no_certificate_within_cap():
    d = MultiPoly.gen(1, 1)
    assert min_certified_bound(d - 300, 200) is None
    assert min_certified_bound(-d, 200) is None


def test_negative_shift_is_a_domain_error():
    with pytest.raises(DomainError):
        certify_positive(MultiPoly.gen(1, 1), -1)


def test_certified_polynomials_are_positive_above_the_bound():
    rng = random.Random(11)
    d1, d2 = MultiPoly.gens(2)
    for p in (d1 * d2 * (d1 + d2 - 4), d1 ** 2 * d2 - 7 * d1 * d2 + d2 - 2):
        bound = min_certified_bound(p, 200)
        assert bound is not None
        for _ in range(50):
            point = (rng.randint(bound, bound + 100), rng.randint(bound, bound + 100))
            assert p.evaluate(point) > 0


def test_small_certificates():
    d = MultiPoly.gen(1, 1)
    cert = certify_positive(d - 4, 5)
    assert cert.certified
    assert cert.shifted_constant == 1
    assert min_certified_bound(d + 1, 200) == 0
    assert min_certified_bound(MultiPoly.from_terms(1, {(0,): -1}), 200) is None


def _random_poly(rng, num_vars=2, max_degree=3):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = [0] * num_vars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(num_vars)] += 1
        terms[tuple(exps)] = rng.choice([-1, 1]) * rng.randint(1, 9)
    return poly(terms, num_vars)


def test_ring_axioms_on_random_triples():
    rng = random.Random(11)
    for _ in range(40):
        p, q, r = (_random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + q == q + p
        assert p * q == q * p
        assert (p - p).is_zero


def test_degree_and_dominant_are_multiplicative():
    rng = random.Random(12)
    for _ in range(40):
        p, q = _random_poly(rng, 3), _random_poly(rng, 3)
        assert degree(p * q) == degree(p) + degree(q)
        assert dominant(p * q) == dominant(p) * dominant(q)


def test_certificates_stay_valid_for_larger_shifts():
    rng = random.Random(13)
    d1, d2 = MultiPoly.gens(2)
    for _ in range(10):
        p = (d1 + d2) ** 4 + _random_poly(rng)
        flags = [certify_positive(p, delta).certified for delta in range(41)]
        assert flags == sorted(flags)
        assert flags[-1]

    d = MultiPoly.gen(1, 1)
    surface_difference = 44 * d ** 3 - 872 * d ** 2 - 300 * d
    assert all(certify_positive(surface_difference, delta).certified for delta in range(21, 60))
