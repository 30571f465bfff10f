import math

import numpy as np
import pytest
from scipy.linalg import expm

import relmass
from relmass.errors import (
    ConnectivityError,
    DomainError,
    NumericalIntegrityError,
    ValidationError,
)
from relmass.graphs import WeightedGraph
from relmass.heatkernel import (
    kernel_matrix,
    relative_mass,
    sample_curve,
    spectral_decompose,
    transition_prob,
)


def test_decomposition_invariants(q3_dec):
    assert abs(q3_dec.values[0]) < 1e-10
    f1 = q3_dec.vectors[:, 0]
    assert np.abs(f1 - f1.mean()).max() < 1e-8
    L = q3_dec.graph.laplacian()
    recon = (q3_dec.vectors * q3_dec.values) @ q3_dec.vectors.T
    assert np.abs(L - recon).max() <= 1e-10


def test_disconnected_rejected():
    two_triangles = WeightedGraph(
        6, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)]
    )
    with pytest.raises(ConnectivityError):
        spectral_decompose(two_triangles)


def test_q1_eigenvalues():
    dec = spectral_decompose(relmass.build_hypercube(1))
    assert dec.values == pytest.approx([0.0, 2.0], abs=1e-12)


def test_pyramid_lambda2(pyramid_dec):
    assert abs(pyramid_dec.lambda2 - (7 - math.sqrt(17)) / 8) <= 1e-10


# -- transition probabilities -------------------------------------------------


def test_time_zero_is_identity(q3_dec):
    assert transition_prob(q3_dec, 0, 0, 0.0) == 1.0
    assert transition_prob(q3_dec, 0, 5, 0.0) == 0.0


def test_negative_time_rejected(q3_dec):
    with pytest.raises(DomainError):
        transition_prob(q3_dec, 0, 0, -0.1)


def test_hypercube_return_closed_form():
    for d in (1, 2, 3, 5):
        dec = spectral_decompose(relmass.build_hypercube(d))
        for t in (0.1, 1.0, 5.0):
            exact = ((1 + math.exp(-2 * t / d)) / 2) ** d
            assert transition_prob(dec, 0, 0, t) == pytest.approx(exact, abs=1e-12)


def test_hypercube_antipodal_closed_form():
    # each coordinate flips an odd number of times: ((1-e^{-2t/d})/2)^d
    d = 5
    dec = spectral_decompose(relmass.build_hypercube(d))
    far = (1 << d) - 1
    for t in (0.5, 2.0, 10.0):
        exact = ((1 - math.exp(-2 * t / d)) / 2) ** d
        assert transition_prob(dec, 0, far, t) == pytest.approx(exact, abs=1e-12)


def test_matches_matrix_exponential(pyramid_dec, cycle6_dec):
    # independent oracle: Pade-based expm of -tL
    for dec in (pyramid_dec, cycle6_dec):
        L = dec.graph.laplacian()
        for t in (0.3, 1.7):
            H = expm(-t * L)
            K = kernel_matrix(dec, t)
            assert np.abs(H - K).max() < 1e-10


def test_stochasticity(q3_dec, cycle6_dec, pyramid_dec):
    for dec in (q3_dec, cycle6_dec, pyramid_dec):
        for t in (0.1, 1.0, 10.0):
            K = kernel_matrix(dec, t)
            assert np.abs(K.sum(axis=1) - 1.0).max() <= 1e-10


def test_symmetry_exact(q3_dec):
    for t in (0.2, 3.0):
        for u, v in ((0, 1), (2, 7), (3, 4)):
            assert transition_prob(q3_dec, u, v, t) == transition_prob(q3_dec, v, u, t)


def test_semigroup(q3_dec, cycle6_dec, pyramid_dec):
    for dec in (q3_dec, cycle6_dec, pyramid_dec):
        for s, t in ((0.3, 0.7), (1.0, 2.0)):
            lhs = kernel_matrix(dec, s + t)
            rhs = kernel_matrix(dec, s) @ kernel_matrix(dec, t)
            assert np.abs(lhs - rhs).max() <= 1e-10


def test_positivity(pyramid_dec):
    for t in (0.01, 0.5, 5.0):
        K = kernel_matrix(pyramid_dec, t)
        assert K.min() > -1e-12


def test_diagonal_domination_vertex_transitive(q3_dec, cycle6_dec):
    for dec in (q3_dec, cycle6_dec):
        for t in (0.2, 1.0, 8.0):
            for u in range(dec.n):
                puu = transition_prob(dec, u, u, t)
                for v in range(dec.n):
                    assert transition_prob(dec, u, v, t) <= puu + 1e-12


def test_clamp_integrity():
    dec = spectral_decompose(relmass.build_cycle(4))
    # tamper with the decomposition to force a large violation
    dec.vectors = dec.vectors * 1.5
    with pytest.raises(NumericalIntegrityError):
        transition_prob(dec, 0, 0, 0.1)


# -- relative mass ------------------------------------------------------------


def test_relative_mass_limits(q3_dec):
    assert relative_mass(q3_dec, 0, 5, 1e-6) < 1e-5
    t_inf = 1e3 / q3_dec.lambda2
    assert abs(relative_mass(q3_dec, 0, 5, t_inf) - 1.0) <= 1e-6


def test_relative_mass_settles_by_twenty_relaxation_times(q3_dec, cycle6_dec, pyramid_dec):
    for dec in (q3_dec, cycle6_dec, pyramid_dec):
        t_late = 20.0 / dec.lambda2
        for v in (1, dec.n - 1):
            assert abs(relative_mass(dec, 0, v, t_late) - 1.0) <= 1e-6


def test_relative_mass_domain(q3_dec):
    with pytest.raises(DomainError):
        relative_mass(q3_dec, 0, 5, 0.0)
    with pytest.raises(DomainError):
        relative_mass(q3_dec, 0, 5, -1.0)


def test_relative_mass_bounded_on_hypercube(q3_dec):
    for u in range(8):
        for v in range(8):
            for t in (0.1, 1.0, 4.0, 20.0):
                assert relative_mass(q3_dec, u, v, t) <= 1.0 + 1e-12


# -- curve sampling -----------------------------------------------------------


def test_sample_curve_zero_convention(q3_dec):
    curve = sample_curve(q3_dec, 0, 5, [0.0])
    assert curve.values[0] == 0.0
    curve_uu = sample_curve(q3_dec, 2, 2, [0.0])
    assert curve_uu.values[0] == 1.0


def test_sample_curve_pyramid_exceeds_one(pyramid_dec):
    grid = np.linspace(0.1, 50.0, 500)
    curve = sample_curve(pyramid_dec, 1, 0, grid)
    assert curve.values.max() > 1.0


def test_sample_curve_hypercube_range(q3_dec):
    grid = np.linspace(0.0, 25.0, 100)
    curve = sample_curve(q3_dec, 0, 7, grid)
    assert (curve.values >= 0.0).all()
    assert (curve.values <= 1.0 + 1e-12).all()


def test_sample_curve_validation(q3_dec):
    with pytest.raises(ValidationError):
        sample_curve(q3_dec, 0, 1, [])
    with pytest.raises(DomainError):
        sample_curve(q3_dec, 0, 1, [-1.0, 2.0])
    with pytest.raises(ValidationError):
        sample_curve(q3_dec, 0, 1, [1.0], quantity="nonsense")


def test_curve_csv_format(q3_dec, tmp_path):
    curve = sample_curve(q3_dec, 0, 7, [0.5, 1.0], quantity="transition_prob")
    path = tmp_path / "curve.csv"
    curve.write_csv(path, header_lines=["test run"])
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == "# test run"
    assert "t,value" in lines
    data = [ln for ln in lines if not ln.startswith("#") and ln != "t,value"]
    assert len(data) == 2
    # 17 significant digits round-trip
    t0, v0 = data[0].split(",")
    assert float(t0) == 0.5
    assert float(v0) == curve.values[0]
