"""Closed-form hypercube walk quantities and the conditioned origin time.

For the continuous-time walk on the d-cube with edge weights 1/d (each
coordinate flips at rate 1/d), the return probability is

    return_prob(d, t) = ((1 + exp(-2t/d)) / 2)^d,

and the expected time spent at the origin up to t, conditioned on the walk
being back at the origin at time t, is

    origin_time(d, t) = integral_0^t bridge_factor(d, t, s)^d ds,

where bridge_factor(d, t, s)^d = return_prob(d, s) * return_prob(d, t-s)
/ return_prob(d, t).  The origin-time curve fails to be monotone in t once
d >= 5, which is what `find_witness` hunts for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SizeError, ValidationError
from .quadrature import adaptive_simpson

CLOSED_FORM_MAX_D = 40
DEFAULT_WITNESS_MARGIN = 1e-3
_REFINE_TOL = 1e-8


def _check_dimension(d):
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")


def return_prob(d, t):
    """Probability the walk on the d-cube is back at its start at time t."""
    _check_dimension(d)
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    return ((1.0 + math.exp(-2.0 * t / d)) / 2.0) ** d


def bridge_factor(d, t, s):
    """Per-coordinate factor of the conditioned-return integrand:
    (1+e^{-2s/d})(1+e^{-2(t-s)/d}) / (2(1+e^{-2t/d})), defined for 0 <= s <= t.
    Equals 1 at s = 0 and s = t, and is symmetric about s = t/2."""
    _check_dimension(d)
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if not 0 <= s <= t:
        raise DomainError(f"s={s} outside [0, {t}]")
    num = (1.0 + math.exp(-2.0 * s / d)) * (1.0 + math.exp(-2.0 * (t - s) / d))
    return num / (2.0 * (1.0 + math.exp(-2.0 * t / d)))


def origin_time_quadrature(d, t, tol=1e-10):
    """Conditioned origin time by adaptive Simpson integration of the
    bridge-factor power; estimated absolute error <= tol."""
    _check_dimension(d)
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if not 1e-14 <= tol <= 1e-4:
        raise ValidationError(f"tolerance {tol} outside [1e-14, 1e-4]")
    if t == 0:
        return 0.0
    return adaptive_simpson(lambda s: bridge_factor(d, t, s) ** d, 0.0, t, tol=tol)


def origin_time_closed(d, t):
    """Conditioned origin time in closed form.

    Expanding both binomials in the integrand and integrating term by term:

        (2(1+e^{-2t/d}))^{-d} * sum_{j,k=0}^{d} C(d,j) C(d,k) * I_jk(t),
        I_jk(t) = t e^{-2jt/d}                        if j == k,
                = d/(2(k-j)) (e^{-2jt/d} - e^{-2kt/d}) otherwise.

    All terms are nonnegative; the double sum is accumulated with
    compensated summation.  Limited to d <= 40 to keep the binomial
    magnitudes well inside exact float range.
    """
    _check_dimension(d)
    if d > CLOSED_FORM_MAX_D:
        raise SizeError(
            f"closed form supports d <= {CLOSED_FORM_MAX_D}, got {d}; use the quadrature"
        )
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if t == 0:
        return 0.0
    x = 2.0 * t / d
    decay = [math.exp(-j * x) for j in range(d + 1)]
    binom = [math.comb(d, j) for j in range(d + 1)]
    terms = []
    for j in range(d + 1):
        for k in range(d + 1):
            if j == k:
                integral = t * decay[j]
            else:
                integral = d / (2.0 * (k - j)) * (decay[j] - decay[k])
            terms.append(binom[j] * binom[k] * integral)
    scale = 2.0 * (1.0 + math.exp(-x))
    return math.fsum(terms) / scale**d


def origin_time(d, t, tol=1e-10):
    """Closed form when available, quadrature beyond its dimension cap."""
    if d <= CLOSED_FORM_MAX_D:
        return origin_time_closed(d, t)
    return origin_time_quadrature(d, t, tol=tol)


@dataclass
class OriginTimeBounds:
    """Checks of the two analytic bounds on the conditioned origin time.

    At t = sqrt(d) the value is at least sqrt(d)/e (the walk plausibly never
    left); at t = d it is at most 2/c <= 6 with c = (1-1/e)^2 / (1+e^{-2})."""

    d: int
    value_at_sqrt: float
    lower_bound_at_sqrt: float
    value_at_d: float
    upper_bound_loose: float
    upper_bound_tight: float
    lower_ok: bool
    upper_ok: bool


def origin_time_bounds(d):
    """Evaluate both occupation-time bounds for dimension d."""
    _check_dimension(d)
    c = (1.0 - math.exp(-1.0)) ** 2 / (1.0 + math.exp(-2.0))
    at_sqrt = origin_time(d, math.sqrt(d))
    at_d = origin_time(d, float(d))
    lower = math.exp(-1.0) * math.sqrt(d)
    tight = 2.0 / c
    return OriginTimeBounds(
        d=d,
        value_at_sqrt=at_sqrt,
        lower_bound_at_sqrt=lower,
        value_at_d=at_d,
        upper_bound_loose=6.0,
        upper_bound_tight=tight,
        lower_ok=at_sqrt >= lower,
        upper_ok=at_d <= min(6.0, tight),
    )


@dataclass
class Witness:
    """A pair t1 < t2 on which the origin-time curve decreases."""

    t1: float
    t2: float
    value1: float
    value2: float

    def __post_init__(self):
        if not self.t1 < self.t2:
            raise ValidationError(f"witness needs t1 < t2, got {self.t1}, {self.t2}")
        if not self.margin > 0:
            raise ValidationError(f"witness margin must be positive, got {self.margin}")

    @property
    def margin(self):
        return self.value1 - self.value2


def default_witness_grid(t_max=30.0, step=0.05):
    return np.arange(0.0, t_max + step / 2, step)


def _golden_extremum(f, a, b, sign, tol=_REFINE_TOL):
    """Golden-section search for max (sign=+1) or min (sign=-1) of f on [a,b]."""
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


def _best_decreasing_pair(values):
    """Indices (i, j), i < j, maximizing values[i] - values[j]."""
    best_gap = -math.inf
    run_max = -math.inf
    run_i = 0
    bi = bj = 0
    for j, val in enumerate(values):
        if val > run_max:
            run_max = val
            run_i = j
        if run_max - val > best_gap:
            best_gap = run_max - val
            bi, bj = run_i, j
    return bi, bj, best_gap


def find_witness(d, grid=None, margin=DEFAULT_WITNESS_MARGIN):
    """Search the origin-time curve for a decrease exceeding `margin`.

    Scans the grid for the pair t1 < t2 maximizing the drop, then sharpens
    t1 (local max) and t2 (local min) by golden-section search in the
    bracketing grid cells.  Returns None when no grid pair clears the margin.
    """
    _check_dimension(d)
    if margin <= 0:
        raise ValidationError(f"margin must be positive, got {margin}")
    grid = default_witness_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if grid.size < 2 or not (np.diff(grid) > 0).all():
        raise ValidationError("witness grid must be ascending with at least two points")
    f = lambda t: origin_time(d, t)
    values = [f(t) for t in grid]
    bi, bj, gap = _best_decreasing_pair(values)
    if gap <= margin:
        return None
    lo1 = grid[max(bi - 1, 0)]
    hi1 = grid[min(bi + 1, grid.size - 1)]
    lo2 = grid[max(bj - 1, 0)]
    hi2 = grid[min(bj + 1, grid.size - 1)]
    t1 = _golden_extremum(f, lo1, hi1, +1)
    t2 = _golden_extremum(f, lo2, hi2, -1)
    v1, v2 = f(t1), f(t2)
    if v1 < values[bi]:  # refinement must never lose to the grid point
        t1, v1 = float(grid[bi]), values[bi]
    if v2 > values[bj]:
        t2, v2 = float(grid[bj]), values[bj]
    return Witness(t1=float(t1), t2=float(t2), value1=v1, value2=v2)


def figure1_table(d_list=(4, 5, 6, 7), grid=None):
    """Origin-time columns for several dimensions over a shared grid.
    Returns (grid, ordered {column_name: values}) with columns named c<d>."""
    for d in d_list:
        _check_dimension(d)
        if d > CLOSED_FORM_MAX_D:
            raise SizeError(f"column dimension {d} above {CLOSED_FORM_MAX_D}")
    grid = default_witness_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValidationError("figure grid is empty")
    if grid.size > 1 and not (np.diff(grid) > 0).all():
        raise ValidationError("figure grid must be strictly ascending")
    if (grid < 0).any():
        raise DomainError("figure grid must be nonnegative")
    columns = {f"c{d}": np.array([origin_time_closed(d, t) for t in grid]) for d in d_list}
    return grid, columns
