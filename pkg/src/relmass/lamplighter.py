"""Explicit weighted lamplighter graphs over the d-cube, and exact checks of
the rare-toggle approximation.

A state is (walker position x in {0,1}^d, lamp configuration f over the 2^d
cube vertices).  Moves: walker steps (weight 1/d per edge) or toggling the
lamp at the walker's position (weight eps).  The designated vertices are
u = (origin, all off) and v = (origin, only the origin lamp on); for small
eps, r_uv(t) tracks eps times the conditioned origin time, up to O(eps^2),
which transfers the origin-time dip to the relative mass of a Cayley graph.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SizeError, ValidationError
from .graphs import WeightedGraph
from .heatkernel import CurveSamples, sample_curve, spectral_decompose, transition_prob
from .hypercube import origin_time_closed, return_prob

MAX_EXPLICIT_D = 3


@dataclass(frozen=True)
class LamplighterCoords:
    """(walker position, lamp bitmask over the 2^d cube vertices)."""

    d: int
    pos: int
    lamps: int

    def __post_init__(self):
        if not 0 <= self.pos < (1 << self.d):
            raise ValidationError(f"position {self.pos} outside the {self.d}-cube")
        if not 0 <= self.lamps < (1 << (1 << self.d)):
            raise ValidationError("lamp configuration has bits outside the cube")

    def index(self):
        """Mixed-radix vertex index: pos + 2^d * lamps."""
        return self.pos + (1 << self.d) * self.lamps

    @classmethod
    def from_index(cls, d, idx):
        block = 1 << d
        return cls(d=d, pos=idx % block, lamps=idx // block)


@dataclass(frozen=True)
class LamplighterParams:
    d: int
    eps: float

    def __post_init__(self):
        if not (isinstance(self.d, int) and self.d >= 1):
            raise ValidationError(f"lamplighter dimension must be a positive integer, got {self.d}")
        if not 0 < self.eps <= 1:
            raise ValidationError(f"toggle rate must lie in (0, 1], got {self.eps}")


def build_lamplighter(params):
    """Explicit lamplighter graph on 2^d * 2^(2^d) vertices (d <= 3).

    Every vertex carries d walker-step edges of weight 1/d and one toggle
    edge of weight eps, so the weighted degree is 1 + eps throughout.
    """
    if params.d > MAX_EXPLICIT_D:
        raise SizeError(
            f"explicit lamplighter limited to d <= {MAX_EXPLICIT_D} "
            f"(d={params.d} would need {(1 << params.d) * (1 << (1 << params.d))} vertices); "
            "use the structured simulator in relmass.montecarlo"
        )
    d, eps = params.d, params.eps
    block = 1 << d
    n = block * (1 << block)
    step_w = 1.0 / d
    edges = []
    for lamps in range(1 << block):
        base = block * lamps
        for pos in range(block):
            i = base + pos
            for b in range(d):
                j = base + (pos ^ (1 << b))
                if j > i:
                    edges.append((i, j, step_w))
            j = pos + block * (lamps ^ (1 << pos))
            if j > i:
                edges.append((i, j, eps))
    return WeightedGraph(n, edges, name=f"lamplighter_d{d}_eps{eps:g}")


def uv_vertices(d):
    """Indices of u = (origin, all lamps off) and v = (origin, origin lamp on)."""
    if d > MAX_EXPLICIT_D:
        raise SizeError(f"explicit indexing limited to d <= {MAX_EXPLICIT_D}")
    u = LamplighterCoords(d=d, pos=0, lamps=0).index()
    v = LamplighterCoords(d=d, pos=0, lamps=1).index()
    return u, v


@dataclass
class ToggleApproxReport:
    """Residuals of the rare-toggle approximation at one (d, eps, t).

    residual_uu = p_uu(t) - exp(-eps t) * return_prob(d, t)
    residual_uv = p_uv(t) - eps exp(-eps t) * origin_time(d, t) * return_prob(d, t)

    Both must lie in [0, (eps t)^2]: the defect is exactly the probability of
    >= 2 toggles landing the walk in the respective state.
    """

    d: int
    eps: float
    t: float
    puu: float
    puv: float
    residual_uu: float
    residual_uv: float
    bound: float
    lower_slack: float = 1e-12

    @property
    def uu_ok(self):
        return -self.lower_slack <= self.residual_uu <= self.bound

    @property
    def uv_ok(self):
        return -self.lower_slack <= self.residual_uv <= self.bound

    @property
    def passed(self):
        return self.uu_ok and self.uv_ok


def rare_toggle_residuals(d, eps, t, dec=None):
    """Exact residuals of the rare-toggle bounds at time t > 0.

    `dec` may carry a precomputed decomposition of the (d, eps) lamplighter
    so sweeps over t pay for the eigensolve once.
    """
    if t <= 0:
        raise ValidationError(f"need t > 0, got {t}")
    if dec is None:
        dec = spectral_decompose(build_lamplighter(LamplighterParams(d=d, eps=eps)))
    u, v = uv_vertices(d)
    puu = transition_prob(dec, u, u, t)
    puv = transition_prob(dec, u, v, t)
    base = math.exp(-eps * t) * return_prob(d, t)
    residual_uu = puu - base
    residual_uv = puv - eps * base * origin_time_closed(d, t)
    return ToggleApproxReport(
        d=d,
        eps=eps,
        t=t,
        puu=puu,
        puv=puv,
        residual_uu=residual_uu,
        residual_uv=residual_uv,
        bound=(eps * t) ** 2,
    )


def compare_first_order(d, eps, grid, dec=None):
    """Exact r_uv curve next to its first-order prediction eps * origin_time.

    Returns (exact_curve, predicted_curve, max_abs_gap).  Warns when eps is
    large enough that the expected O(eps^2) error could swamp the predicted
    values on this grid.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValidationError("comparison grid is empty")
    if (grid <= 0).any():
        raise ValidationError("comparison grid must be strictly positive")
    predicted = np.array([eps * origin_time_closed(d, t) for t in grid])
    if (eps * grid.max()) ** 2 >= predicted.min():
        warnings.warn(
            "toggle rate too large for the first-order comparison on this grid; "
            "the quadratic error term may dominate",
            stacklevel=2,
        )
    if dec is None:
        dec = spectral_decompose(build_lamplighter(LamplighterParams(d=d, eps=eps)))
    u, v = uv_vertices(d)
    exact = sample_curve(dec, u, v, grid, quantity="relative_mass")
    prediction = CurveSamples(
        grid=grid,
        values=predicted,
        meta={"quantity": "eps_origin_time", "d": d, "eps": eps},
    )
    gap = float(np.abs(exact.values - predicted).max())
    return exact, prediction, gap
