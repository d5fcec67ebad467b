import pytest

from jetcalc.bigness import morse_criterion
from jetcalc.errors import UsageError
from jetcalc.sweeps import (
    degree_lemma_sweep,
    morse_problems,
    morse_sweep,
    random_geometries,
    sample_points,
    schur_identity_sweep,
)
from jetcalc.polyring import min_certified_bound
from jetcalc.tower import get_geometry, list_geometries, morse_grid


def test_random_geometries_are_reproducible():
    first = random_geometries(10, seed=4)
    assert first == random_geometries(10, seed=4)
    assert all(g.n >= 1 for g in first)
    with pytest.raises(UsageError):
        random_geometries(-1)


def test_schur_identity_sweep():
    result = schur_identity_sweep(5, geometries=4, seed=1)
    assert result.ok
    assert result.checked == 5


def test_degree_lemma_sweep():
    result = degree_lemma_sweep(5)
    assert result.ok
    assert result.checked == len(list_geometries(5))
    assert result.to_json()["sweep"] == "degree lemma"


def test_morse_sweep_small_grid():
    result = morse_sweep(list_geometries(4), a_values=(0, 1))
    assert result.ok, result.failures


def test_morse_problems_flag_missing_bound():
    report = morse_criterion(get_geometry(3, 1), 0, 5)
    assert morse_problems(report) == ["no certified bound"]


def test_certified_bounds_hold_at_sampled_points():
    for geom in list_geometries(4):
        report = morse_criterion(geom, 0, 200)
        for point in sample_points(report.delta, 50, geom.c, seed=geom.N):
            assert report.difference.evaluate(point) > 0


def test_sample_points_cover_the_bound():
    points = sample_points(5, 200, 1, seed=0)
    assert all(5 <= p[0] <= 25 for p in points)
    assert min(p[0] for p in points) == 5


@pytest.mark.slow
def test_morse_grid_within_default_cap():
    grid = morse_grid()
    result = morse_sweep(grid, a_values=(0, 1), delta_max=200)
    assert result.checked == 2 * len(grid)
    assert result.failures == [f"N={N}, c=1 a={a}: no certified bound" for N in (5, 6) for a in (0, 1)]


@pytest.mark.slow
@pytest.mark.parametrize("N, bound", [(5, 395), (6, 1455)])
def test_hypersurfaces_past_the_default_cap(N, bound):
    report = morse_criterion(get_geometry(N, 1), 0, 0)
    assert report.delta is None
    assert min_certified_bound(report.difference, 2000) == bound
