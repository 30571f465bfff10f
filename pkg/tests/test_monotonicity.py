import math

import numpy as np
import pytest

import relmass
from relmass.errors import ValidationError
from relmass.graphs import GroupTable, WeightedGeneratorSet, WeightedGraph
from relmass.heatkernel import relative_mass, spectral_decompose
from relmass.monotonicity import (
    blowup_convergence,
    default_scan_grid,
    find_r_exceeds_one,
    locate_r_crossing,
    monotonicity_scan,
    spectral_criterion_check,
)

LAMBDA2_EXACT = (7 - math.sqrt(17)) / 8
APEX_ENTRY = 3 - (7 - math.sqrt(17)) / 2


# -- spectral criterion -----------------------------------------------------------


def test_pyramid_criterion_met(pyramid_dec):
    report = spectral_criterion_check(pyramid_dec, 1, 0)
    assert report.hypotheses_met
    assert abs(report.lambda2 - LAMBDA2_EXACT) <= 1e-10
    assert report.gap >= 1e-3
    assert report.f2_v > report.f2_u > 0
    assert report.witness_time is not None


def test_pyramid_eigenvector_shape(pyramid_dec):
    # the second eigenvector is (c,1,1,1,1,-1,-1,-1,-1,-c) normalized
    stated = np.array([APEX_ENTRY, 1, 1, 1, 1, -1, -1, -1, -1, -APEX_ENTRY])
    stated = stated / np.linalg.norm(stated)
    f2 = pyramid_dec.vectors[:, 1]
    projection = abs(stated @ f2)
    assert projection >= 1 - 1e-8


def test_complete_graph_degenerate():
    n = 4
    edges = [(i, j, 1 / 3) for i in range(n) for j in range(i + 1, n)]
    report = spectral_criterion_check(WeightedGraph(n, edges), 0, 1)
    assert not report.hypotheses_met
    assert report.gap < 1e-8
    assert report.witness_time is None


def test_four_cycle_degenerate():
    report = spectral_criterion_check(relmass.build_cycle(4), 0, 1)
    assert not report.hypotheses_met


def test_criterion_requires_regular():
    path = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    with pytest.raises(ValidationError):
        spectral_criterion_check(path, 0, 1)


# -- r > 1 search -----------------------------------------------------------------


def test_pyramid_r_exceeds_one(pyramid_dec):
    grid = default_scan_grid()
    t_star = find_r_exceeds_one(pyramid_dec, 1, 0, grid)
    assert t_star is not None
    assert relative_mass(pyramid_dec, 1, 0, t_star) > 1 + 1e-6
    crossing = locate_r_crossing(pyramid_dec, 1, 0, grid)
    assert crossing <= t_star
    assert relative_mass(pyramid_dec, 1, 0, crossing) == pytest.approx(1 + 1e-9, abs=1e-7)


def test_hypercube_never_exceeds_one():
    dec = spectral_decompose(relmass.build_hypercube(5))
    grid = default_scan_grid(t_max=100.0, points=250)
    for u in range(32):
        for v in range(32):
            assert find_r_exceeds_one(dec, u, v, grid) is None


def test_same_vertex_is_none(pyramid_dec):
    assert find_r_exceeds_one(pyramid_dec, 3, 3, default_scan_grid()) is None


def test_r_returns_to_one(pyramid_dec):
    t_end = 20.0 / pyramid_dec.lambda2
    assert abs(relative_mass(pyramid_dec, 1, 0, t_end) - 1.0) <= 1e-6


def test_scan_grid_validation(pyramid_dec):
    with pytest.raises(ValidationError):
        find_r_exceeds_one(pyramid_dec, 1, 0, np.array([0.0, 1.0]))
    with pytest.raises(ValidationError):
        find_r_exceeds_one(pyramid_dec, 1, 0, np.array([2.0, 1.0]))


# -- monotonicity scan --------------------------------------------------------------


def test_pyramid_scan_finds_decrease(pyramid_dec):
    pair = monotonicity_scan(pyramid_dec, 1, 0, default_scan_grid(), margin=1e-6)
    assert pair is not None
    t1, t2 = pair
    assert t1 < t2
    r1 = relative_mass(pyramid_dec, 1, 0, t1)
    r2 = relative_mass(pyramid_dec, 1, 0, t2)
    assert r1 > 1.0  # the decrease starts above the limit value
    assert r1 - r2 > 1e-6


def test_cycle_scan_finds_nothing():
    dec = spectral_decompose(relmass.build_cycle(12))
    grid = default_scan_grid(t_max=120.0, points=600)
    for u in (0,):
        for v in range(1, 12):
            assert monotonicity_scan(dec, u, v, grid, margin=1e-6) is None


def test_lamplighter_scan_consistent_with_first_order(lamp2_dec):
    # eps * origin_time is increasing on this window, and so is the exact r
    u, v = relmass.uv_vertices(2)
    grid = np.linspace(0.1, 200.0, 1000)
    assert monotonicity_scan(lamp2_dec, u, v, grid, margin=1e-6) is None
    rs = np.array([relative_mass(lamp2_dec, u, v, t) for t in grid])
    assert (np.diff(rs) > 0).all()


def test_scan_margin_validation(pyramid_dec):
    with pytest.raises(ValidationError):
        monotonicity_scan(pyramid_dec, 1, 0, default_scan_grid(), margin=0.0)


# -- blowup convergence ---------------------------------------------------------------


@pytest.fixture(scope="module")
def z6_blowup_rows():
    group = GroupTable.cyclic(6)
    gens = WeightedGeneratorSet([(1, 2.0), (5, 2.0), (2, 1.0), (4, 1.0)])
    return blowup_convergence(group, gens, 0, 1, (16, 32, 64))


def test_blowup_deviations_decrease(z6_blowup_rows):
    rows = z6_blowup_rows
    assert [row.clique_size for row in rows] == [16, 32, 64]
    assert rows[0].sup_r_dev > rows[1].sup_r_dev > rows[2].sup_r_dev
    assert rows[0].sup_p_dev > rows[1].sup_p_dev > rows[2].sup_p_dev


def test_blowup_degree_identity(z6_blowup_rows):
    for row in z6_blowup_rows:
        assert row.degree == row.clique_size - 1 + 6


def test_blowup_deviation_magnitudes(z6_blowup_rows):
    # calibrated once against the dense-eigensolver oracle
    assert z6_blowup_rows[-1].sup_r_dev < 0.05
    assert z6_blowup_rows[-1].sup_p_dev < 1e-3


def test_blowup_zero_time_row():
    # at t = 0 both the rescaled blowup quantities and the base ones vanish
    group = GroupTable.cyclic(6)
    gens = WeightedGeneratorSet([(1, 2.0), (5, 2.0), (2, 1.0), (4, 1.0)])
    rows = blowup_convergence(group, gens, 0, 1, (8,), t_grid=np.array([0.0]))
    assert rows[0].sup_r_dev == 0.0
    assert rows[0].sup_p_dev <= 1e-12  # orthonormality roundoff only
