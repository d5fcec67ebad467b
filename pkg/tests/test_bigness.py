import pytest

from jetcalc.bigness import (
    TwistVector,
    canonical_twist,
    effectivity_check,
    l_class,
    l_form,
    l_product,
    morse_criterion,
    proportionality,
    reference_integral,
    technical_lemma_audit,
)
from jetcalc.errors import DomainError, LevelError
from jetcalc.polyring import AsymOrder, MultiPoly, degree
from jetcalc.tower import ChowClass, get_geometry, integrate


@pytest.mark.parametrize(
    "k, a, t",
    [(1, (1,), 2), (2, (2, 1), 6), (3, (6, 2, 1), 18)],
)
def test_l_forms(k, a, t):
    assert l_form(k) == TwistVector(a, t)
    assert effectivity_check(l_form(k))


def test_l_class_levels(surface):
    assert l_class(surface, 1) == ChowClass.u(surface, 1, 1) + ChowClass.h(surface, 1) * 2
    with pytest.raises(LevelError):
        l_class(surface, 3)
    with pytest.raises(LevelError):
        l_class(surface, 0)
    assert l_class(surface, 3, top=3).level == 3


def test_canonical_twist_is_sum_of_l_forms(surface):
    assert canonical_twist(surface) == TwistVector((3, 1), 8)
    assert canonical_twist(surface, 3) == TwistVector((9, 3, 1), 26)
    total = l_product(surface, 2, [1]) + l_class(surface, 2)
    assert total == canonical_twist(surface).to_class(surface)


def test_effectivity_reports_first_failure():
    result = effectivity_check(TwistVector((2, -3, 2)))
    assert not result
    assert result.partial_sums == (2, -1, 1)
    assert result.first_failure == 2


def test_proportionality():
    d1, d2 = MultiPoly.gens(2)
    assert proportionality(6 * d1 * d2, 2 * d1 * d2) == 3
    assert proportionality(d1 * d2 + d1, d1 * d2) is None
    assert proportionality(d1, MultiPoly.zero(2)) is None


def test_space_curve_criterion(space_curve):
    d1, d2 = MultiPoly.gens(2)
    report = morse_criterion(space_curve, 0, 200)
    assert report.m == 2
    assert report.lhs == d1 * d2 * (d1 + d2 - 2)
    assert report.difference == d1 * d2 * (d1 + d2 - 4)
    assert report.delta == 3
    assert report.certificate.shifted_constant == 18
    assert report.dominant_check
    assert report.dominant_multiplier == 1
    assert report.dominant_order is AsymOrder.SIM
    assert report.degree_ok

    data = report.to_json()
    assert data["difference"] == "d1^2*d2 + d1*d2^2 - 4*d1*d2"
    assert data["delta"] == 3
    assert data["kappa"] == 1 and data["b"] == 1


def test_space_curve_criterion_with_twist(space_curve):
    d1, d2 = MultiPoly.gens(2)
    report = morse_criterion(space_curve, 1, 200)
    assert report.difference == d1 * d2 * (d1 + d2 - 5)
    assert report.delta == 3


@pytest.mark.parametrize(
    "a, rhs, difference, delta",
    [
        (0, {(2,): 1152}, {(3,): 44, (2,): -872, (1,): -300}, 21),
        (1, {(2,): 1296}, {(3,): 44, (2,): -1016, (1,): -300}, 24),
    ],
)
def test_surface_criterion(surface, a, rhs, difference, delta):
    report = morse_criterion(surface, a, 200)
    assert report.m == 8
    assert report.lhs == MultiPoly.from_terms(1, {(3,): 44, (2,): 280, (1,): -300})
    assert report.rhs == MultiPoly.from_terms(1, rhs)
    assert report.difference == MultiPoly.from_terms(1, difference)
    assert report.delta == delta
    assert report.dominant_multiplier == 44
    assert report.dominant_check
    assert report.dominant_order is AsymOrder.GTRSIM


def test_criterion_cap_too_small(surface):
    report = morse_criterion(surface, 0, 20)
    assert report.delta is None
    assert report.to_json()["delta"] is None


def test_criterion_arguments(surface):
    with pytest.raises(DomainError):
        morse_criterion(surface, -1, 200)
    with pytest.raises(LevelError):
        morse_criterion(surface, 0, 200, level=1)


@pytest.mark.parametrize("N, c", [(4, 2), (5, 2), (4, 1), (5, 3), (6, 2), (7, 3)])
def test_criterion_grid(N, c):
    geom = get_geometry(N, c)
    for a in (0, 1):
        report = morse_criterion(geom, a, 200)
        assert report.degree_ok
        assert degree(report.difference) == N
        assert report.dominant_check
        assert report.delta is not None


def test_reference_integral(surface, space_curve):
    d = MultiPoly.gen(1, 1)
    assert reference_integral(surface) == d * (d - 4) ** 2
    d1, d2 = MultiPoly.gens(2)
    assert reference_integral(space_curve) == d1 * d2 * (d1 + d2 - 4)


def test_l_product_integral(surface):
    d = MultiPoly.gen(1, 1)
    assert integrate(surface, 1, l_product(surface, 1, [3])) == 2 * d ** 2 - 2 * d


@pytest.mark.parametrize("N, c", [(3, 1), (5, 2), (4, 1)])
def test_technical_lemma_audit(N, c):
    record = technical_lemma_audit(get_geometry(N, c), samples=3, seed=1)
    assert record.lattice_checked > 0
    assert record.ok, record.to_json()
    assert len(record.descent) == record.geometry.kappa - 1


def test_audit_is_deterministic(surface):
    first = technical_lemma_audit(surface, samples=4, seed=9).to_json()
    second = technical_lemma_audit(surface, samples=4, seed=9).to_json()
    assert first == second


def test_negative_entry_fails_at_once():
    result = effectivity_check(TwistVector((-1, 2)))
    assert not result
    assert result.first_failure == 1


def test_dominant_part_exceeds_reference_without_being_proportional():
    geom = get_geometry(7, 3)
    report = morse_criterion(geom, 0, 200)
    assert (geom.kappa, geom.b) == (2, 1)
    assert report.dominant_multiplier is None
    assert report.dominant_order is AsymOrder.GTRSIM
    assert report.dominant_check
    assert report.to_json()["dominant_order"] == "gtrsim-strict"


@pytest.mark.parametrize("N, c", [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_bound_grows_with_twist(N, c):
    geom = get_geometry(N, c)
    deltas = [morse_criterion(geom, a, 200).delta for a in range(4)]
    assert None not in deltas
    assert deltas == sorted(deltas)
