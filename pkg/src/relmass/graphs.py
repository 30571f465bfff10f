"""Weighted graphs, finite groups, and the graph constructors used throughout.

Conventions:
  * Edge weights are symmetric and positive; no self-loops.
  * The Laplacian is L[u][v] = -w(u,v) off-diagonal, L[u][u] = sum_v w(u,v),
    so every row sums to zero and unweighted d-regular graphs carry weight 1/d
    per edge (unit diagonal).
  * Vertices are integers 0..n-1.  Composite constructions use mixed-radix
    indexing (primary coordinate * block size + secondary) so coordinates can
    be recovered in O(1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ConnectivityError, SizeError, ValidationError

MAX_EXPLICIT_VERTICES = 4096


class WeightedGraph:
    """Symmetric positively weighted graph on vertices 0..n-1.

    Immutable after construction; the Laplacian and CSR-style adjacency
    arrays are assembled lazily and cached, so instances are cheap to share.
    """

    def __init__(self, n, edges, labels=None, name="graph"):
        """`edges` is an iterable of (u, v, w) with u != v and w > 0."""
        if n < 1:
            raise ValidationError(f"vertex count must be positive, got {n}")
        self.n = int(n)
        self.name = name
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.n:
            raise ValidationError("labels length must equal vertex count")
        store = {}
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u},{v}) out of vertex range")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not w > 0:
                raise ValidationError(f"edge ({u},{v}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in store:
                if store[key] != w:
                    raise ValidationError(f"conflicting weights for edge {key}")
                continue
            store[key] = float(w)
        self._edges = store
        self._laplacian = None
        self._adjacency = None

    # -- basic queries ------------------------------------------------------

    @property
    def edge_count(self):
        return len(self._edges)

    def edges(self):
        """Iterate (u, v, w) with u < v, in sorted order."""
        for (u, v) in sorted(self._edges):
            yield u, v, self._edges[(u, v)]

    def weight(self, u, v):
        """Weight of edge {u,v}, or 0.0 if absent."""
        if u == v:
            return 0.0
        key = (u, v) if u < v else (v, u)
        return self._edges.get(key, 0.0)

    def weighted_degree(self, u):
        return float(sum(w for (a, b), w in self._edges.items() if a == u or b == u))

    def neighbors(self, u):
        """Sorted list of (v, w) incident to u."""
        out = []
        for (a, b), w in self._edges.items():
            if a == u:
                out.append((b, w))
            elif b == u:
                out.append((a, w))
        return sorted(out)

    # -- derived arrays -----------------------------------------------------

    def laplacian(self):
        """Dense Laplacian; rows sum to zero by construction."""
        if self._laplacian is None:
            L = np.zeros((self.n, self.n))
            for (u, v), w in self._edges.items():
                L[u, v] -= w
                L[v, u] -= w
                L[u, u] += w
                L[v, v] += w
            self._laplacian = L
        return self._laplacian

    def adjacency_arrays(self):
        """CSR-style (offsets, targets, weights) for fast neighbor sampling."""
        if self._adjacency is None:
            deg = np.zeros(self.n, dtype=np.int64)
            for (u, v) in self._edges:
                deg[u] += 1
                deg[v] += 1
            offsets = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(deg, out=offsets[1:])
            targets = np.zeros(offsets[-1], dtype=np.int64)
            weights = np.zeros(offsets[-1])
            fill = offsets[:-1].copy()
            for (u, v), w in sorted(self._edges.items()):
                targets[fill[u]] = v
                weights[fill[u]] = w
                fill[u] += 1
                targets[fill[v]] = u
                weights[fill[v]] = w
                fill[v] += 1
            self._adjacency = (offsets, targets, weights)
        return self._adjacency

    def is_connected(self):
        if self.n == 1:
            return True
        adj = [[] for _ in range(self.n)]
        for (u, v) in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return bool(seen.all())

    # -- serialization ------------------------------------------------------

    def to_edge_list_text(self):
        """Edge-list text: '#' header with n and provenance, then `u v w` lines."""
        lines = [f"# relmass edge list", f"# n={self.n} name={self.name}"]
        for u, v, w in self.edges():
            lines.append(f"{u} {v} {w:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list_text(cls, text):
        n = None
        name = "graph"
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("n="):
                        n = int(tok[2:])
                    elif tok.startswith("name="):
                        name = tok[5:]
                continue
            u, v, w = line.split()
            edges.append((int(u), int(v), float(w)))
        if n is None:
            n = 1 + max(max(u, v) for u, v, _ in edges)
        return cls(n, edges, name=name)

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, edges={self.edge_count}, name={self.name!r})"


class GroupTable:
    """Finite group given by an explicit multiplication table on 0..order-1."""

    def __init__(self, mul, name="group"):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValidationError("multiplication table must be square")
        self.order = mul.shape[0]
        self.mul = mul
        self.name = name
        self._validate()
        self.identity = self._find_identity()
        self.inv = self._build_inverses()

    def _validate(self):
        full = np.arange(self.order)
        for i in range(self.order):
            if not (np.sort(self.mul[i]) == full).all():
                raise ValidationError(f"row {i} of multiplication table is not a permutation")
            if not (np.sort(self.mul[:, i]) == full).all():
                raise ValidationError(f"column {i} of multiplication table is not a permutation")

    def _find_identity(self):
        for e in range(self.order):
            if (self.mul[e] == np.arange(self.order)).all() and (
                self.mul[:, e] == np.arange(self.order)
            ).all():
                return e
        raise ValidationError("multiplication table has no identity element")

    def _build_inverses(self):
        inv = np.full(self.order, -1, dtype=np.int64)
        for g in range(self.order):
            hits = np.flatnonzero(self.mul[g] == self.identity)
            if hits.size != 1:
                raise ValidationError(f"element {g} has no unique inverse")
            inv[g] = hits[0]
        return inv

    @classmethod
    def cyclic(cls, n):
        """Z_n under addition."""
        if n < 1:
            raise ValidationError("cyclic group needs n >= 1")
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")

    @classmethod
    def boolean_cube(cls, d):
        """Z_2^d under XOR; element index = integer value of the bit string."""
        if d < 1:
            raise ValidationError("boolean cube group needs d >= 1")
        n = 1 << d
        idx = np.arange(n)
        return cls(idx[:, None] ^ idx[None, :], name=f"Z2^{d}")

    def __repr__(self):
        return f"GroupTable(order={self.order}, name={self.name!r})"


@dataclass(frozen=True)
class WeightedGeneratorSet:
    """Generators with positive weights; must be inverse-closed with matching weights."""

    items: tuple

    def __init__(self, items):
        object.__setattr__(self, "items", tuple((int(g), float(w)) for g, w in items))

    def validate(self, group):
        seen = dict(self.items)
        if len(seen) != len(self.items):
            raise ValidationError("duplicate generator in generator set")
        for g, w in self.items:
            if g == group.identity:
                raise ValidationError("identity element is not allowed as a generator")
            if not w > 0:
                raise ValidationError(f"generator {g} has non-positive weight {w}")
            gi = int(group.inv[g])
            if gi not in seen:
                raise ValidationError(f"generator set not closed under inverses: missing {gi}")
            if seen[gi] != w:
                raise ValidationError(
                    f"inverse pair ({g},{gi}) has mismatched weights {w} != {seen[gi]}"
                )

    def total_weight(self):
        return sum(w for _, w in self.items)


@dataclass(frozen=True)
class BlowupParams:
    """Parameters of the clique blowup of an integer-weighted Cayley graph."""

    group: GroupTable
    gens: WeightedGeneratorSet
    clique_size: int

    def validate(self):
        self.gens.validate(self.group)
        max_w = 0
        for g, w in self.gens.items:
            if w != int(w):
                raise ValidationError(f"blowup requires integer weights, got {w} on generator {g}")
            max_w = max(max_w, int(w))
        if self.clique_size < 2 * max_w + 2:
            raise ValidationError(
                f"clique size {self.clique_size} below simplicity guard {2 * max_w + 2}"
            )

    def degree(self):
        """Degree of the blown-up graph: clique_size - 1 + total generator weight."""
        return self.clique_size - 1 + int(self.gens.total_weight())


# -- constructors -----------------------------------------------------------


def build_hypercube(d):
    """d-dimensional hypercube: vertices {0,1}^d indexed by bit-string value,
    edges between strings at Hamming distance 1, all weights 1/d."""
    if not 1 <= d <= 20:
        raise SizeError(f"hypercube dimension must be in 1..20, got {d}")
    n = 1 << d
    w = 1.0 / d
    edges = []
    for u in range(n):
        for b in range(d):
            v = u ^ (1 << b)
            if v > u:
                edges.append((u, v, w))
    return WeightedGraph(n, edges, name=f"hypercube_d{d}")


def build_pyramid_cube():
    """4-regular graph on 10 vertices: a 4-cycle prism (cube) with an apex
    glued over each square face.  Vertex order: apex_top, t1..t4, b1..b4,
    apex_bottom; all weights 1/4."""
    edges = []
    for i in range(1, 5):
        edges.append((0, i, 0.25))  # top apex to top face
    for i in range(4):
        edges.append((1 + i, 1 + (i + 1) % 4, 0.25))  # top 4-cycle
    for i in range(4):
        edges.append((1 + i, 5 + i, 0.25))  # vertical edges
    for i in range(4):
        edges.append((5 + i, 5 + (i + 1) % 4, 0.25))  # bottom 4-cycle
    for i in range(5, 9):
        edges.append((9, i, 0.25))  # bottom apex to bottom face
    labels = ["apex_top", "t1", "t2", "t3", "t4", "b1", "b2", "b3", "b4", "apex_bottom"]
    return WeightedGraph(10, edges, labels=labels, name="pyramid_cube")


def build_cayley(group, gens, name=None):
    """Cayley graph: edge {u, u*g} of weight w(g) for every vertex u and
    generator g.  Requires an inverse-closed generator set that generates
    the whole group (otherwise the graph would be disconnected)."""
    if isinstance(gens, (list, tuple)):
        gens = WeightedGeneratorSet(gens)
    gens.validate(group)
    n = group.order
    edges = {}
    for u in range(n):
        for g, w in gens.items:
            v = int(group.mul[u, g])
            key = (u, v) if u < v else (v, u)
            prev = edges.get(key)
            if prev is not None and prev != w:
                raise ValidationError(f"generators assign conflicting weights to edge {key}")
            edges[key] = w
    graph = WeightedGraph(
        n,
        [(u, v, w) for (u, v), w in edges.items()],
        name=name or f"cayley_{group.name}",
    )
    if not graph.is_connected():
        raise ConnectivityError("generator set does not generate the group")
    return graph


def build_cycle(n):
    """n-cycle as the Cayley graph of Z_n with generators +-1, weight 1."""
    if n == 2:
        return WeightedGraph(2, [(0, 1, 1.0)], name="cycle_2")
    return build_cayley(GroupTable.cyclic(n), [(1, 1.0), (n - 1, 1.0)], name=f"cycle_{n}")


def clique_blowup(params):
    """Replace each group element u by a clique on {u} x Z_N and each Cayley
    edge {u, u*g} of integer weight w by w parallel perfect matchings with
    clique offsets 1..w.  Output is unweighted (weight 1/deg on every edge),
    deg-regular and simple, on group.order * N vertices indexed u*N + i.

    Each undirected Cayley edge is processed once, from its smaller endpoint,
    so a vertex (u, i) has exactly w(g) edges projecting onto each base edge
    {u, u*g}.
    """
    params.validate()
    group, gens, N = params.group, params.gens, params.clique_size
    n = group.order * N
    if n > MAX_EXPLICIT_VERTICES:
        raise SizeError(f"blowup would have {n} vertices (limit {MAX_EXPLICIT_VERTICES})")
    deg = params.degree()
    w_edge = 1.0 / deg
    edges = set()

    def add(a, b):
        key = (a, b) if a < b else (b, a)
        if key in edges:
            raise ValidationError(f"blowup produced a multi-edge at {key}")
        edges.add(key)

    for u in range(group.order):
        base = u * N
        for i in range(N):
            for j in range(i + 1, N):
                add(base + i, base + j)
    for u in range(group.order):
        for g, w in gens.items:
            v = int(group.mul[u, g])
            if v < u:
                continue  # each undirected base edge handled from its smaller endpoint
            for j in range(1, int(w) + 1):
                for i in range(N):
                    add(u * N + i, v * N + (i + j) % N)
    graph = WeightedGraph(
        n,
        [(a, b, w_edge) for (a, b) in edges],
        name=f"blowup_{group.name}_N{N}",
    )
    counts = np.zeros(n, dtype=np.int64)
    for (a, b) in edges:
        counts[a] += 1
        counts[b] += 1
    if not (counts == deg).all():
        raise ValidationError("blowup is not regular with the expected degree")
    return graph
