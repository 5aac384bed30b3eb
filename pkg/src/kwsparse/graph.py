"""Weighted undirected graphs, Laplacians, and edge-list I/O.

Edges are kept in canonical lexicographic ``(u, v)`` order with ``u < v``.
The position of an edge in that order is its identity everywhere else in
the package: sample bitvectors, resistance tables and probability arrays
are all aligned with it.
"""

from __future__ import annotations

import io
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Disconnected,
    DuplicateEdge,
    EmptyGraph,
    IndexOutOfRange,
    NonPositiveWeight,
    ParseError,
    SelfLoop,
)

Edge = tuple[int, int, float]

#: Accuracy of the integer-weight rounding reduction.
ROUNDING_DELTA = Fraction(1, 6)


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with positive weights.

    Build instances with :meth:`from_edges`, which canonicalizes edge
    orientation and order; the raw constructor only validates.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise IndexOutOfRange(f"vertex count must be positive, got {self.n}")
        prev = None
        for u, v, w in self.edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise IndexOutOfRange(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if not w > 0 or not math.isfinite(w):
                raise NonPositiveWeight(f"edge ({u}, {v}) has weight {w}")
            if prev is not None and (u, v) <= prev:
                if (u, v) == prev:
                    raise DuplicateEdge(f"duplicate edge ({u}, {v})")
                raise ValueError("edges are not in canonical order; use WeightedGraph.from_edges")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "WeightedGraph":
        """Canonicalize ``(u, v[, w])`` triples (default weight 1) into a graph."""
        canon = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= n:
                raise IndexOutOfRange(f"edge ({u}, {v}) out of range for n={n}")
            canon.append((u, v, w))
        canon.sort(key=lambda e: (e[0], e[1]))
        return cls(n, tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.edges:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.array([(u, v) for u, v, _ in self.edges], dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)

    def with_weights(self, weights) -> "WeightedGraph":
        """Same edge set, new weights (aligned with canonical order)."""
        weights = list(map(float, weights))
        if len(weights) != self.m:
            raise ValueError(f"expected {self.m} weights, got {len(weights)}")
        return WeightedGraph(self.n, tuple((u, v, w) for (u, v, _), w in zip(self.edges, weights)))

    def select(self, mask, weights=None) -> "WeightedGraph":
        """Subgraph keeping edges where ``mask`` is true, optionally reweighted."""
        mask = np.asarray(mask, dtype=bool)
        if weights is None:
            weights = self.weights
        kept = tuple(
            (u, v, float(w)) for (u, v, _), keep, w in zip(self.edges, mask, weights) if keep
        )
        return WeightedGraph(self.n, kept)

    def adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def __str__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class RoundedMultigraph:
    """Integer-weight graph whose Laplacian, scaled by ``2**-shift_t``,
    approximates the source Laplacian within 1/6."""

    graph: WeightedGraph
    shift_t: int


def laplacian(G: WeightedGraph) -> np.ndarray:
    L = np.zeros((G.n, G.n))
    if G.m == 0:
        return L
    u, v = G.endpoints
    w = G.weights
    np.add.at(L, (u, v), -w)
    np.add.at(L, (v, u), -w)
    deg = np.zeros(G.n)
    np.add.at(deg, u, w)
    np.add.at(deg, v, w)
    L[np.diag_indices(G.n)] = deg
    return L


def edge_laplacian(a: int, b: int, n: int) -> np.ndarray:
    """The rank-one matrix ``(e_a - e_b)(e_a - e_b)^T``."""
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise IndexOutOfRange(f"invalid edge ({a}, {b}) for n={n}")
    x = np.zeros(n)
    x[a], x[b] = 1.0, -1.0
    return np.outer(x, x)


def components(G: WeightedGraph) -> list[int]:
    """Component label per vertex (labels are smallest vertex in component)."""
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in G.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return [find(x) for x in range(G.n)]


def is_connected(G: WeightedGraph) -> bool:
    if G.n == 1:
        return True
    seen = [False] * G.n
    seen[0] = True
    queue = deque([0])
    adj = G.adjacency_lists()
    count = 1
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == G.n


def girth(G: WeightedGraph) -> float:
    """Length of the shortest cycle, ignoring weights; ``math.inf`` for forests.

    A BFS from every vertex; a non-tree edge ``(x, y)`` met during the search
    from ``r`` closes a closed walk of length ``d(x) + d(y) + 1`` through ``r``,
    and the minimum over all roots is exactly the girth.
    """
    adj = G.adjacency_lists()
    best = math.inf
    for root in range(G.n):
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def max_weighted_degree(G: WeightedGraph) -> float:
    if G.m == 0:
        raise EmptyGraph("graph has no edges")
    deg = np.zeros(G.n)
    u, v = G.endpoints
    np.add.at(deg, u, G.weights)
    np.add.at(deg, v, G.weights)
    return float(deg.max())


def rounding_shift(n: int, w_min: float) -> int:
    """Smallest t with ``2**t >= 2 n^3 / (delta * min(1, w_min))``, delta = 1/6."""
    z = min(Fraction(1), Fraction(w_min))
    bound = Fraction(2 * n**3) / (ROUNDING_DELTA * z)
    t = max(0, math.ceil(math.log2(bound)) - 1)
    while Fraction(2) ** t < bound:
        t += 1
    while t > 0 and Fraction(2) ** (t - 1) >= bound:
        t -= 1
    return t


def round_to_multigraph(G: WeightedGraph) -> RoundedMultigraph:
    """Scale by ``2**t`` and floor, giving integer weights."""
    if not is_connected(G):
        raise Disconnected("rounding reduction requires a connected graph")
    if G.m == 0:
        return RoundedMultigraph(G, 0)
    t = rounding_shift(G.n, float(G.weights.min()))
    scaled = [float(math.floor(math.ldexp(w, t))) for w in G.weights]
    return RoundedMultigraph(G.with_weights(scaled), t)


def parse_edge_list(data) -> WeightedGraph:
    """Parse the ``n m`` / ``u v w`` text format from ``str``, ``bytes`` or a stream."""
    if isinstance(data, bytes):
        data = data.decode()
    if isinstance(data, str):
        data = io.StringIO(data)
    header = None
    edges: list[Edge] = []
    seen = set()
    for lineno, raw in enumerate(data, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode()
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError("header must be 'n m'", lineno)
            try:
                header = (int(fields[0]), int(fields[1]))
            except ValueError:
                raise ParseError("header must hold two integers", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise ParseError("vertex count must be positive and edge count nonnegative", lineno)
            continue
        if len(fields) != 3:
            raise ParseError("edge line must be 'u v w'", lineno)
        try:
            u, v, w = int(fields[0]), int(fields[1]), float(fields[2])
        except ValueError:
            raise ParseError(f"cannot parse edge {line!r}", lineno) from None
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise ParseError(f"vertex index out of range in {line!r}", lineno)
        if not w > 0 or not math.isfinite(w):
            raise NonPositiveWeight(f"weight must be positive, got {fields[2]}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append((key[0], key[1], w))
    if header is None:
        raise ParseError("missing header line")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return WeightedGraph.from_edges(header[0], edges)


def serialize_edge_list(G: WeightedGraph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in G.edges)
    return "\n".join(lines) + "\n"
