"""Spectral criterion for r > 1, r-curve scanning, and blowup convergence.

On a regular connected graph whose second Laplacian eigenvalue is simple,
with eigenvector f2 satisfying f2(v) > f2(u) > 0, the large-t expansion of
the heat kernel forces r_uv(t) > 1 at some finite time; since r -> 1, the
curve cannot be monotone.  The 10-vertex pyramid-cube graph realizes this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graphs import BlowupParams, WeightedGeneratorSet, build_cayley, clique_blowup
from .heatkernel import SpectralDecomposition, relative_mass, spectral_decompose

DEFAULT_GAP_TOL = 1e-8
EXCESS_LEVEL = 1e-9
_BISECT_TOL = 1e-8


def _as_decomposition(graph_or_dec):
    if isinstance(graph_or_dec, SpectralDecomposition):
        return graph_or_dec
    return spectral_decompose(graph_or_dec)


def default_scan_grid(t_max=200.0, points=2000):
    """Strictly positive grid (0, t_max] used by the r-curve scanners."""
    return np.linspace(t_max / points, t_max, points)


@dataclass
class SpectralCriterionReport:
    """Outcome of the simple-second-eigenvalue criterion at vertices (u, v)."""

    lambda2: float
    lambda3: float
    gap: float
    gap_ok: bool
    f2_u: float
    f2_v: float
    hypotheses_met: bool
    witness_time: float | None

    def __repr__(self):
        status = "met" if self.hypotheses_met else "not met"
        return (
            f"SpectralCriterionReport(lambda2={self.lambda2:.6g}, gap={self.gap:.3g}, "
            f"hypotheses {status}, witness_time={self.witness_time})"
        )


def spectral_criterion_check(graph_or_dec, u, v, gap_tol=DEFAULT_GAP_TOL, t_grid=None):
    """Check 0 < lambda2 < lambda3 and f2(v) > f2(u) > 0 (after flipping the
    sign so f2(u) >= 0); on success scan for a time with r_uv > 1.

    A degenerate second eigenvalue is reported as hypotheses_met=False, not
    an error.  Requires a regular connected graph.
    """
    dec = _as_decomposition(graph_or_dec)
    degrees = np.diag(dec.graph.laplacian())
    if np.abs(degrees - degrees[0]).max() > 1e-12:
        raise ValidationError("spectral criterion applies to regular graphs only")
    lam2 = float(dec.values[1])
    lam3 = float(dec.values[2]) if dec.n > 2 else float("inf")
    gap = lam3 - lam2
    gap_ok = lam2 > 0 and gap > gap_tol
    f2 = dec.vectors[:, 1].copy()
    if abs(f2[u]) <= 1e-12:
        # sign convention undefined at u; hypotheses cannot be certified
        met = False
    else:
        if f2[u] < 0:
            f2 = -f2
        met = gap_ok and f2[v] > f2[u] > 0
    witness = None
    if met:
        if t_grid is None:
            t_grid = default_scan_grid(t_max=50.0 / lam2)
        witness = find_r_exceeds_one(dec, u, v, t_grid)
    return SpectralCriterionReport(
        lambda2=lam2,
        lambda3=lam3,
        gap=gap,
        gap_ok=gap_ok,
        f2_u=float(f2[u]),
        f2_v=float(f2[v]),
        hypotheses_met=met,
        witness_time=witness,
    )


def _r_values(dec, u, v, t_grid):
    e_all = np.exp(-np.outer(t_grid, dec.values))
    fu = dec.vectors[u]
    fv = dec.vectors[v]
    puv = e_all @ (fu * fv)
    puu = e_all @ (fu * fu)
    return puv / puu


def find_r_exceeds_one(graph_or_dec, u, v, t_grid, level=EXCESS_LEVEL):
    """Smallest grid time with r_uv > 1 + level, or None.

    The upcrossing is additionally sharpened by bisection (available via
    `locate_r_crossing`); the returned witness is the grid time itself, where
    the excess is already established.
    """
    dec = _as_decomposition(graph_or_dec)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if t_grid.size == 0 or (t_grid <= 0).any() or not (np.diff(t_grid) > 0).all():
        raise ValidationError("scan grid must be strictly positive and ascending")
    if u == v:
        return None
    rs = _r_values(dec, u, v, t_grid)
    above = np.flatnonzero(rs > 1.0 + level)
    if above.size == 0:
        return None
    return float(t_grid[above[0]])


def locate_r_crossing(graph_or_dec, u, v, t_grid, level=EXCESS_LEVEL):
    """Bisection-refined time where r_uv first crosses 1 + level on the grid;
    None when the grid never exceeds the level."""
    dec = _as_decomposition(graph_or_dec)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    rs = _r_values(dec, u, v, t_grid)
    above = np.flatnonzero(rs > 1.0 + level)
    if above.size == 0:
        return None
    i = int(above[0])
    hi = float(t_grid[i])
    lo = float(t_grid[i - 1]) if i > 0 else hi * 1e-6
    target = 1.0 + level
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if relative_mass(dec, u, v, mid) > target:
            hi = mid
        else:
            lo = mid
    return hi


def monotonicity_scan(graph_or_dec, u, v, t_grid, margin):
    """Best decreasing pair of the r_uv curve on the grid, refined by
    golden-section search; None if no pair exceeds `margin`."""
    if margin <= 0:
        raise ValidationError(f"margin must be positive, got {margin}")
    dec = _as_decomposition(graph_or_dec)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if t_grid.size < 2 or (t_grid <= 0).any() or not (np.diff(t_grid) > 0).all():
        raise ValidationError("scan grid must be strictly positive and ascending")
    rs = _r_values(dec, u, v, t_grid)
    best = -math.inf
    run_max = -math.inf
    run_i = 0
    bi = bj = 0
    for j, val in enumerate(rs):
        if val > run_max:
            run_max = val
            run_i = j
        if run_max - val > best:
            best = run_max - val
            bi, bj = run_i, j
    if best <= margin:
        return None
    f = lambda t: relative_mass(dec, u, v, t)
    t1 = _golden(f, t_grid[max(bi - 1, 0)], t_grid[min(bi + 1, t_grid.size - 1)], +1)
    t2 = _golden(f, t_grid[max(bj - 1, 0)], t_grid[min(bj + 1, t_grid.size - 1)], -1)
    if f(t1) < rs[bi]:
        t1 = float(t_grid[bi])
    if f(t2) > rs[bj]:
        t2 = float(t_grid[bj])
    return float(t1), float(t2)


def _golden(f, a, b, sign, tol=_BISECT_TOL):
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1 = sign * f(x1)
    f2 = sign * f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = sign * f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = sign * f(x2)
    return 0.5 * (a + b)


@dataclass
class BlowupDeviation:
    """Sup-norm deviations between a blowup and its base graph at one clique size."""

    clique_size: int
    degree: int
    sup_r_dev: float
    sup_p_dev: float


def blowup_convergence(group, gens, u, v, clique_sizes, t_grid=None):
    """For each clique size N: blow up the weighted Cayley graph, map (u, v)
    to ((u,0), (v,0)), and record over the grid

        sup_t |r_blowup((u,0),(v,0))(deg * t) - r_base(u, v)(t)|
        sup_t |N * p_blowup(deg * t) - p_base(t)|

    The blowup runs deg(H) times slower, hence the rescaled times.  Rows are
    ordered by clique size.
    """
    if t_grid is None:
        t_grid = np.linspace(0.0, 10.0, 101)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if not isinstance(gens, WeightedGeneratorSet):
        gens = WeightedGeneratorSet(gens)
    base = build_cayley(group, gens)
    base_dec = spectral_decompose(base)
    rows = []
    for N in clique_sizes:
        params = BlowupParams(group=group, gens=gens, clique_size=int(N))
        blowup = clique_blowup(params)
        dec = spectral_decompose(blowup)
        deg = params.degree()
        x, y = u * N + 0, v * N + 0
        sup_r = 0.0
        sup_p = 0.0
        for t in t_grid:
            tp = deg * t
            e_base = np.exp(-base_dec.values * t)
            p_uv = float((base_dec.vectors[u] * base_dec.vectors[v] * e_base).sum())
            p_uu = float((base_dec.vectors[u] * base_dec.vectors[u] * e_base).sum())
            e_blow = np.exp(-dec.values * tp)
            p_xy = float((dec.vectors[x] * dec.vectors[y] * e_blow).sum())
            p_xx = float((dec.vectors[x] * dec.vectors[x] * e_blow).sum())
            if t == 0:
                r_base = 0.0 if u != v else 1.0
                r_blow = 0.0 if x != y else 1.0
            else:
                r_base = p_uv / p_uu
                r_blow = p_xy / p_xx
            sup_r = max(sup_r, abs(r_blow - r_base))
            sup_p = max(sup_p, abs(N * p_xy - p_uv))
        rows.append(
            BlowupDeviation(clique_size=int(N), degree=deg, sup_r_dev=sup_r, sup_p_dev=sup_p)
        )
    return rows
