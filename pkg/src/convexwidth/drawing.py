"""Convex drawings: crossings, outer (min-)k-planarity, hull completion, expansion.

A convex drawing is purely combinatorial here: a simple graph on vertices
``0..n-1`` together with the cyclic order in which the vertices sit on a circle.
Position ``p`` of the order holds vertex ``order[p]``. Increasing position is
the "clockwise" sense used throughout the package.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DrawingError, PreconditionError, TrivialInstanceError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DrawingError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise DrawingError(f"edge ({u}, {v}) is not a normalized edge on {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise DrawingError(f"self-loop at vertex {u}")
            e = norm_edge(u, v)
            if e in seen:
                raise DrawingError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class ConvexDrawing:
    """A simple graph with a cyclic vertex order."""

    n: int
    edges: frozenset[Edge]
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DrawingError("vertex count must be non-negative")
        if sorted(self.order) != list(range(self.n)):
            raise DrawingError("order must be a permutation of the vertex ids")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise DrawingError(f"edge ({u}, {v}) is not a normalized edge on {self.n} vertices")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], order: Iterable[int] | None = None
    ) -> ConvexDrawing:
        g = Graph.from_edges(n, edges)
        return cls(n, g.edges, tuple(range(n)) if order is None else tuple(order))

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for p, v in enumerate(self.order):
            pos[v] = p
        return tuple(pos)

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, self.edges)

    def succ(self, v: int) -> int:
        """Hull successor (next vertex in increasing position)."""
        return self.order[(self.position[v] + 1) % self.n]

    def pred(self, v: int) -> int:
        return self.order[(self.position[v] - 1) % self.n]

    def hull_edges(self) -> list[Edge]:
        if self.n < 3:
            return []
        return sorted({norm_edge(self.order[p], self.order[(p + 1) % self.n]) for p in range(self.n)})

    def is_hull_edge(self, e: Edge) -> bool:
        if self.n < 3:
            return False
        d = (self.position[e[0]] - self.position[e[1]]) % self.n
        return d == 1 or d == self.n - 1

    def is_hull_complete(self) -> bool:
        return self.n >= 3 and all(e in self.edges for e in self.hull_edges())


# ---------------------------------------------------------------------------
# Crossings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReport:
    pairs: frozenset[tuple[Edge, Edge]]
    per_edge: Mapping[Edge, int]
    partners: Mapping[Edge, tuple[Edge, ...]] = field(repr=False)

    @property
    def k_value(self) -> int:
        return max(self.per_edge.values(), default=0)

    @property
    def min_k_value(self) -> int:
        return max((min(self.per_edge[e], self.per_edge[f]) for e, f in self.pairs), default=0)


def edges_cross(d: ConvexDrawing, e: Edge, f: Edge) -> bool:
    pos = d.position
    a, b = sorted((pos[e[0]], pos[e[1]]))
    c, x = sorted((pos[f[0]], pos[f[1]]))
    return a < c < b < x or c < a < x < b


def compute_crossings(d: ConvexDrawing) -> CrossingReport:
    """All crossing edge pairs of the drawing.

    Two chords cross iff their endpoint positions interleave. Each edge is
    matched against edges whose left endpoint lies strictly inside its span.
    """
    pos = d.position
    spans = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v]), (u, v)) for u, v in d.edges
    )
    lefts = [s[0] for s in spans]
    partners: dict[Edge, list[Edge]] = {e: [] for e in d.edges}
    pairs: set[tuple[Edge, Edge]] = set()
    for a, b, e in spans:
        lo = bisect.bisect_right(lefts, a)
        hi = bisect.bisect_left(lefts, b)
        for c, x, f in spans[lo:hi]:
            if x > b:
                partners[e].append(f)
                partners[f].append(e)
                pairs.add((e, f) if e < f else (f, e))
    return CrossingReport(
        pairs=frozenset(pairs),
        per_edge={e: len(p) for e, p in partners.items()},
        partners={e: tuple(sorted(p)) for e, p in partners.items()},
    )


def is_outer_k_planar(d: ConvexDrawing, k: int) -> bool:
    return compute_crossings(d).k_value <= k


def is_outer_min_k_planar(d: ConvexDrawing, k: int) -> bool:
    return compute_crossings(d).min_k_value <= k


def min_k_violation(
    report: CrossingReport, k: int
) -> tuple[tuple[Edge, Edge], tuple[int, int]] | None:
    """The smallest crossing pair whose edges are both crossed more than ``k`` times."""
    for e, f in sorted(report.pairs):
        ce, cf = report.per_edge[e], report.per_edge[f]
        if min(ce, cf) > k:
            return (e, f), (ce, cf)
    return None


# ---------------------------------------------------------------------------
# Hull completion and expansion
# ---------------------------------------------------------------------------


def hull_complete(d: ConvexDrawing) -> ConvexDrawing:
    """Add every edge between cyclically consecutive vertices."""
    if d.n < 3:
        raise TrivialInstanceError(f"hull completion needs at least 3 vertices, got {d.n}")
    return ConvexDrawing(d.n, d.edges | frozenset(d.hull_edges()), d.order)


@dataclass(frozen=True)
class ExpansionResult:
    expanded: ConvexDrawing
    origin: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]
    # original edge -> the expanded edge it corresponds to
    edge_map: Mapping[Edge, Edge] = field(repr=False)


def expand(d: ConvexDrawing) -> ExpansionResult:
    """Replace every vertex of degree >= 4 by a path of degree-3 images.

    The images of ``v`` occupy ``v``'s place on the circle. Listed in
    increasing position they are attached to ``v``'s neighbours in decreasing
    position offset, so that edges sharing ``v`` stay pairwise non-crossing and
    every other crossing is preserved. The first image also keeps the edge to
    ``v``'s predecessor and the last image the edge to its successor.
    """
    if not d.is_hull_complete():
        raise PreconditionError("expand requires a hull-complete drawing with n >= 3")
    n = d.n
    pos = d.position
    adj = d.graph.adjacency

    # attach[v][w] = index (in arc order) of the image of v that carries edge vw
    attach: list[dict[int, int]] = [dict() for _ in range(n)]
    count = [1] * n
    for v in range(n):
        nbrs = sorted(adj[v], key=lambda w: (pos[w] - pos[v]) % n)
        deg = len(nbrs)
        if deg <= 3:
            for w in nbrs:
                attach[v][w] = 0
            continue
        s = deg - 2
        count[v] = s
        # nbrs[0] is the successor, nbrs[-1] the predecessor
        for j in range(1, s + 1):
            attach[v][nbrs[deg - 1 - j]] = j - 1
        attach[v][nbrs[-1]] = 0
        attach[v][nbrs[0]] = s - 1

    first = [0] * n
    nxt = 0
    for v in range(n):
        first[v] = nxt
        nxt += count[v]
    images = tuple(tuple(range(first[v], first[v] + count[v])) for v in range(n))
    origin = tuple(v for v in range(n) for _ in range(count[v]))
    order = tuple(x for p in range(n) for x in images[d.order[p]])

    new_edges: set[Edge] = set()
    edge_map: dict[Edge, Edge] = {}
    for u, v in d.edges:
        e = norm_edge(images[u][attach[u][v]], images[v][attach[v][u]])
        edge_map[(u, v)] = e
        new_edges.add(e)
    for v in range(n):
        for a, b in zip(images[v], images[v][1:]):
            new_edges.add((a, b))
    expanded = ConvexDrawing(nxt, frozenset(new_edges), order)
    return ExpansionResult(expanded=expanded, origin=origin, images=images, edge_map=edge_map)
