"""Exact continuous-time random-walk probabilities via spectral decomposition.

For a connected weighted graph with Laplacian L, the walk's transition
probabilities are the entries of exp(-tL).  With eigenpairs (lam_i, f_i),

    p_uv(t) = sum_i exp(-lam_i t) f_i(u) f_i(v),

and the relative mass is r_uv(t) = p_uv(t) / p_uu(t), which starts at 0 for
u != v and tends to 1 on connected graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigensolver import symmetric_eigh
from .errors import (
    ConnectivityError,
    DomainError,
    NumericalIntegrityError,
    SizeError,
    ValidationError,
)
from .graphs import MAX_EXPLICIT_VERTICES, WeightedGraph

_CLAMP_TOL = 1e-12


@dataclass
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a graph Laplacian.

    `vectors[u, i]` is the u-th component of the i-th eigenvector, so rows
    index vertices and columns index modes.
    """

    values: np.ndarray
    vectors: np.ndarray
    graph: WeightedGraph

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def lambda2(self):
        return float(self.values[1])

    def check_invariants(self, residual_tol=1e-10):
        n = self.n
        if abs(self.values[0]) > 1e-10:
            raise NumericalIntegrityError(f"lowest eigenvalue {self.values[0]} not ~0")
        f1 = self.vectors[:, 0]
        if np.abs(f1 - f1.mean()).max() > 1e-8:
            raise NumericalIntegrityError("ground eigenvector is not constant")
        L = self.graph.laplacian()
        recon = (self.vectors * self.values) @ self.vectors.T
        if np.abs(L - recon).max() > residual_tol:
            raise NumericalIntegrityError(
                f"reconstruction residual {np.abs(L - recon).max():.3g} above {residual_tol}"
            )
        gram = self.vectors.T @ self.vectors
        if np.abs(gram - np.eye(n)).max() > residual_tol:
            raise NumericalIntegrityError("eigenvectors are not orthonormal")


@dataclass
class CurveSamples:
    """A sampled function t -> value with provenance metadata."""

    grid: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.grid.size == 0:
            raise ValidationError("curve grid is empty")
        if self.grid.size != self.values.size:
            raise ValidationError("grid and values differ in length")
        if self.grid.size > 1 and not (np.diff(self.grid) > 0).all():
            raise ValidationError("curve grid must be strictly ascending")
        if not np.isfinite(self.values).all():
            raise ValidationError("curve contains non-finite values")

    def to_csv_text(self, header_lines=()):
        lines = [f"# {h}" for h in header_lines]
        for key in sorted(self.meta):
            lines.append(f"# {key}={self.meta[key]}")
        lines.append("t,value")
        for t, v in zip(self.grid, self.values):
            lines.append(f"{t:.17g},{v:.17g}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path, header_lines=()):
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_csv_text(header_lines))


def spectral_decompose(graph):
    """Decompose the graph Laplacian; raises on disconnected input (a zero
    second eigenvalue would break the r -> 1 limit)."""
    if graph.n > MAX_EXPLICIT_VERTICES:
        raise SizeError(f"graph too large to decompose: {graph.n} > {MAX_EXPLICIT_VERTICES}")
    if not graph.is_connected():
        raise ConnectivityError("cannot decompose a disconnected graph")
    values, vectors = symmetric_eigh(graph.laplacian())
    dec = SpectralDecomposition(values=values, vectors=vectors, graph=graph)
    dec.check_invariants()
    return dec


def _spectral_entry(dec, u, v, t):
    # (f_u * f_v) first: the expression is then identical under u <-> v,
    # making p_uv == p_vu exact in floating point
    return float(np.sum((dec.vectors[u] * dec.vectors[v]) * np.exp(-dec.values * t)))


def _clamp_probability(p, where):
    if p < -_CLAMP_TOL or p > 1.0 + _CLAMP_TOL:
        raise NumericalIntegrityError(f"{where} = {p} outside [0,1] beyond {_CLAMP_TOL}")
    # snap values within the tolerance of a boundary onto it (t=0 gives an
    # exact identity matrix, orthonormality roundoff aside)
    if abs(p) <= _CLAMP_TOL:
        return 0.0
    if abs(p - 1.0) <= _CLAMP_TOL:
        return 1.0
    return p


def transition_prob(dec, u, v, t):
    """p_uv(t): probability the walk started at u sits at v at time t."""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    return _clamp_probability(_spectral_entry(dec, u, v, t), f"p[{u},{v}]({t})")


def relative_mass(dec, u, v, t):
    """r_uv(t) = p_uv(t) / p_uu(t); requires t > 0 (r(0) = 0 for u != v
    by convention, handled in sample_curve)."""
    if t <= 0:
        raise DomainError(f"relative mass needs t > 0, got {t}")
    puv = _spectral_entry(dec, u, v, t)
    puu = _spectral_entry(dec, u, u, t)
    return puv / puu


def kernel_matrix(dec, t):
    """Full heat-kernel matrix exp(-tL) evaluated spectrally."""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    return (dec.vectors * np.exp(-dec.values * t)) @ dec.vectors.T


def sample_curve(dec, u, v, grid, quantity="relative_mass"):
    """Sample r_uv (default) or p_uv over an ascending nonnegative grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValidationError("sampling grid is empty")
    if (grid < 0).any():
        raise DomainError("sampling grid must be nonnegative")
    if quantity == "relative_mass":
        values = [
            (1.0 if u == v else 0.0) if t == 0 else relative_mass(dec, u, v, t) for t in grid
        ]
    elif quantity == "transition_prob":
        values = [transition_prob(dec, u, v, t) for t in grid]
    else:
        raise ValidationError(f"unknown curve quantity {quantity!r}")
    meta = {"quantity": quantity, "graph": dec.graph.name, "u": u, "v": v}
    return CurveSamples(grid=grid, values=np.asarray(values), meta=meta)
