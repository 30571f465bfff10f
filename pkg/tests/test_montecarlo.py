import math

import numpy as np
import pytest

import relmass
from relmass.errors import DomainError, EstimationError, ValidationError
from relmass.graphs import WeightedGraph
from relmass.heatkernel import kernel_matrix
from relmass.hypercube import origin_time_closed, return_prob
from relmass.montecarlo import (
    Trajectory,
    chunk_generator,
    estimate_lamplighter_puv,
    estimate_origin_time,
    nonmonotonicity_demo,
    philox_key,
    simulate_ctrw,
    simulate_lamplighter_structured,
)


# -- seed derivation ------------------------------------------------------------


def test_philox_key_rule():
    assert philox_key(0, 0) == 0
    assert philox_key(1, 0) == 1 << 64
    assert philox_key(0, 7) == 7
    assert philox_key(3, 5) == (3 << 64) | 5


def test_philox_key_validation():
    with pytest.raises(ValidationError):
        philox_key(-1, 0)
    with pytest.raises(ValidationError):
        philox_key(2**64, 0)
    with pytest.raises(ValidationError):
        philox_key(0, -1)


def test_chunk_streams_differ():
    a = chunk_generator(42, 0).random(4)
    b = chunk_generator(42, 1).random(4)
    c = chunk_generator(42, 0).random(4)
    assert not np.allclose(a, b)
    assert (a == c).all()


# -- trajectories ---------------------------------------------------------------


def test_trajectory_validation():
    with pytest.raises(ValidationError):
        Trajectory(times=[0.5, 0.4], states=[0, 1, 0], horizon=1.0)
    with pytest.raises(ValidationError):
        Trajectory(times=[0.5], states=[0], horizon=1.0)
    with pytest.raises(ValidationError):
        Trajectory(times=[1.5], states=[0, 1], horizon=1.0)


def test_simulate_zero_horizon():
    g = relmass.build_cycle(5)
    traj = simulate_ctrw(g, 3, 0.0, chunk_generator(0, 0))
    assert traj.times.size == 0
    assert traj.final == 3


def test_simulate_negative_horizon():
    g = relmass.build_cycle(5)
    with pytest.raises(DomainError):
        simulate_ctrw(g, 0, -1.0, chunk_generator(0, 0))


def test_trajectory_states_adjacent_and_local_time():
    g = relmass.build_hypercube(3)
    rng = chunk_generator(7, 0)
    for _ in range(50):
        traj = simulate_ctrw(g, 0, 3.0, rng)
        for a, b in zip(traj.states[:-1], traj.states[1:]):
            assert g.weight(int(a), int(b)) > 0
        total = sum(traj.local_time(s) for s in set(traj.states.tolist()))
        assert total == pytest.approx(3.0, abs=1e-12)


def test_two_state_graph_matches_exact():
    g = WeightedGraph(2, [(0, 1, 1.0)])
    n = 100_000
    t = 1.0
    rng = chunk_generator(11, 0)
    stays = sum(simulate_ctrw(g, 0, t, rng).final == 0 for _ in range(n))
    p_exact = (1 + math.exp(-2 * t)) / 2
    se = math.sqrt(p_exact * (1 - p_exact) / n)
    assert abs(stays / n - p_exact) <= 3 * se


def test_q3_endpoint_distribution(q3_dec):
    # chi-square sanity of simulated endpoints against the spectral kernel
    g = relmass.build_hypercube(3)
    n = 100_000
    t = 1.2
    rng = chunk_generator(13, 0)
    counts = np.zeros(8)
    for _ in range(n):
        counts[simulate_ctrw(g, 0, t, rng).final] += 1
    expected = kernel_matrix(q3_dec, t)[0] * n
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < 26.0  # 7 dof, far tail


# -- conditioned origin time ------------------------------------------------------


def test_origin_time_estimate_matches_closed_form():
    est = estimate_origin_time(3, 2.0, 1_000_000, seed=5, chunks=16)
    exact = origin_time_closed(3, 2.0)
    assert abs(est.mean - exact) <= 3 * est.stderr
    # conditioning rate is the return probability
    p = return_prob(3, 2.0)
    se_rate = math.sqrt(p * (1 - p) / est.n)
    assert abs(est.n_conditioned / est.n - p) <= 3 * se_rate


def test_origin_time_estimate_tiny_horizon():
    est = estimate_origin_time(3, 1e-3, 10_000, seed=2, chunks=4)
    assert est.mean == pytest.approx(1e-3, rel=0.01)


def test_origin_time_estimate_reproducible():
    a = estimate_origin_time(4, 1.5, 40_000, seed=9, chunks=8)
    b = estimate_origin_time(4, 1.5, 40_000, seed=9, chunks=8)
    assert a == b  # bit-identical dataclass comparison
    c = estimate_origin_time(4, 1.5, 40_000, seed=9, chunks=5)
    assert c.mean != a.mean  # different chunking, different streams


def test_origin_time_estimate_yield_guard():
    with pytest.warns(UserWarning):
        with pytest.raises(EstimationError):
            estimate_origin_time(12, 60.0, 50, seed=3, chunks=2)


def test_origin_time_estimate_validation():
    with pytest.raises(DomainError):
        estimate_origin_time(3, 0.0, 100, seed=0)
    with pytest.raises(ValidationError):
        estimate_origin_time(3, 1.0, 0, seed=0)


# -- structured lamplighter -------------------------------------------------------


def test_structured_toggle_count_poisson():
    eps, horizon, n = 0.4, 5.0, 10_000
    rng = chunk_generator(21, 0)
    counts = [
        simulate_lamplighter_structured(8, eps, horizon, rng).toggle_times.size
        for _ in range(n)
    ]
    mean = np.mean(counts)
    lam = eps * horizon
    assert abs(mean - lam) <= 3 * math.sqrt(lam / n)


def test_structured_no_toggles_when_rate_zero():
    rng = chunk_generator(22, 0)
    for _ in range(200):
        run = simulate_lamplighter_structured(3, 0.0, 4.0, rng)
        assert run.final_lamps == frozenset()


def test_structured_walker_marginal():
    # walker return frequency matches the closed form for several dimensions
    n = 100_000
    t = 2.0
    for d, seed in ((2, 31), (5, 32), (8, 33)):
        rng = chunk_generator(seed, 0)
        hits = sum(
            int(simulate_lamplighter_structured(d, 1e-3, t, rng).positions[-1]) == 0
            for _ in range(n)
        )
        p = return_prob(d, t)
        se = math.sqrt(p * (1 - p) / n)
        assert abs(hits / n - p) <= 3 * se


def test_structured_puv_matches_explicit(lamp2_dec):
    # direct lamp-tracking estimate against the exact 64-vertex value
    d, eps, t = 2, 1e-3, 2.0
    u, v = relmass.uv_vertices(d)
    exact = relmass.transition_prob(lamp2_dec, u, v, t)
    est = estimate_lamplighter_puv(d, eps, t, 60_000, seed=17, chunks=4)
    assert abs(est.mean - exact) <= 3 * max(est.stderr, 1.0 / est.n)


def test_structured_dimension_guard():
    with pytest.raises(ValidationError):
        simulate_lamplighter_structured(31, 0.1, 1.0, chunk_generator(0, 0))


# -- demonstration ----------------------------------------------------------------


def test_demo_small_run_agrees_with_quadrature():
    w = relmass.find_witness(5)
    rep = nonmonotonicity_demo(5, 1e-3, w.t1, w.t2, 200_000, seed=1, chunks=8)
    assert rep.gap > 0
    q1, q2 = rep.quadrature_sigmas()
    assert q1 <= 4.0 and q2 <= 4.0
    assert rep.estimate1.n == rep.estimate2.n == 200_000


def test_demo_d4_not_supported():
    # best decreasing pair on the d=4 grid is numerical noise
    grid = np.arange(0.05, 30.0, 0.05)
    vals = [origin_time_closed(4, t) for t in grid]
    best = np.argmax(np.maximum.accumulate(vals) - vals)
    run_best = int(np.argmax(vals[: best + 1])) if best > 0 else 0
    t1 = float(grid[min(run_best, best)])
    t2 = float(grid[best]) if grid[best] > t1 else t1 + 0.05
    rep = nonmonotonicity_demo(4, 1e-3, t1, t2, 100_000, seed=4, chunks=8)
    assert not rep.supported
    assert "not supported" in rep.verdict


def test_demo_validation():
    with pytest.raises(ValidationError):
        nonmonotonicity_demo(5, 1e-3, 2.0, 1.0, 1000, seed=0)
