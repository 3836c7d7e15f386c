"""Planarization of convex drawings with exact rational geometry.

The drawing is realized on the unit circle at rational points, every crossing
point is computed exactly in homogeneous integer coordinates, and the crossing
graph (original vertices plus crossing points) is built together with its
rotation system. Subdividing every crossing into two adjacent degree-3 vertices
yields the subdivided crossing graph. Faces and the dual multigraph come from
the usual rotation-system walk.

Rotations list neighbours in increasing-angle order, which is the rotational
sense of increasing cyclic position.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import Mapping, Sequence, Union

from .drawing import ConvexDrawing, Edge, compute_crossings, norm_edge
from .errors import PreconditionError, ThreeConcurrentEdges

HPoint = tuple[int, int, int]

# Re-placements tried after the unperturbed attempt 0.
MAX_RETRIES = 5


# ---------------------------------------------------------------------------
# Rational placement on the unit circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CirclePlacement:
    points: tuple[tuple[Fraction, Fraction], ...]
    homogeneous: tuple[HPoint, ...] = field(repr=False)


def _circle_point(t: Fraction) -> HPoint:
    a, b = t.numerator, t.denominator
    return (b * b - a * a, 2 * a * b, a * a + b * b)


def _point_at(theta: float, budget: int) -> HPoint:
    # keep the half-angle tangent within [-1, 1]; far side uses the antipode
    theta = math.remainder(theta, 2 * math.pi)
    if abs(theta) <= math.pi / 2:
        return _circle_point(Fraction(math.tan(theta / 2)).limit_denominator(budget))
    shifted = theta - math.pi if theta > 0 else theta + math.pi
    x, y, w = _circle_point(Fraction(math.tan(shifted / 2)).limit_denominator(budget))
    return (-x, -y, w)


def _reduce(p: HPoint) -> HPoint:
    x, y, w = p
    if w < 0:
        x, y, w = -x, -y, -w
    g = gcd(gcd(x, y), w)
    return (x // g, y // g, w // g)


def _half(p: HPoint) -> int:
    x, y, _ = p
    return 0 if y > 0 or (y == 0 and x > 0) else 1


def angle_less(p: HPoint, q: HPoint) -> bool:
    """Exact comparison of polar angles in ``[0, 2*pi)`` (``w > 0`` assumed)."""
    hp, hq = _half(p), _half(q)
    if hp != hq:
        return hp < hq
    return p[0] * q[1] - p[1] * q[0] > 0


def place_on_circle(n: int, attempt: int = 0) -> CirclePlacement:
    """Rational points on the unit circle, one per cyclic position.

    Position ``p`` targets angle ``2*pi*p/n``. Attempt 0 uses the exact targets;
    later attempts add a deterministic jitter below ``pi/(10n)`` and raise the
    denominator budget, which breaks the mirror symmetries that make chords
    concurrent.
    """
    if n < 3:
        raise PreconditionError("placement needs at least 3 points")
    budget = 16 * n * 4**attempt
    rng = random.Random(1_000_003 * attempt + n)
    pts: list[HPoint] = []
    for p in range(n):
        theta = 2 * math.pi * p / n
        if attempt and p:
            theta += rng.uniform(-1.0, 1.0) * math.pi / (10 * n)
        pts.append(_reduce(_point_at(theta, budget)))
    for p in range(n - 1):
        if not angle_less(pts[p], pts[p + 1]):
            raise AssertionError(f"placement lost angular order at position {p}")
    if len(set(pts)) != n:
        raise AssertionError("placement produced coincident points")
    frac = tuple((Fraction(x, w), Fraction(y, w)) for x, y, w in pts)
    return CirclePlacement(points=frac, homogeneous=tuple(pts))


# ---------------------------------------------------------------------------
# Homogeneous helpers
# ---------------------------------------------------------------------------


def _line(a: HPoint, b: HPoint) -> HPoint:
    ax, ay, aw = a
    bx, by, bw = b
    return (ay * bw - aw * by, aw * bx - ax * bw, ax * by - ay * bx)


def _meet(l1: HPoint, l2: HPoint) -> HPoint:
    return _line(l1, l2)


def _direction(a: HPoint, b: HPoint) -> tuple[int, int]:
    # (b - a) scaled by the positive factor aw*bw
    return (b[0] * a[2] - a[0] * b[2], b[1] * a[2] - a[1] * b[2])


def _cross(d1: tuple[int, int], d2: tuple[int, int]) -> int:
    return d1[0] * d2[1] - d1[1] * d2[0]


# ---------------------------------------------------------------------------
# Crossing graph and subdivision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingGraph:
    """Planarization G_C of a hull-complete convex drawing.

    Vertices ``0..n-1`` are the drawing's vertices (outer); ids ``>= n`` are
    crossing points (inner).
    """

    drawing: ConvexDrawing
    placement: CirclePlacement = field(repr=False)
    num_vertices: int
    rotation: tuple[tuple[int, ...], ...] = field(repr=False)
    lies_on: Mapping[int, tuple[Edge, Edge]] = field(repr=False)
    edge_chains: Mapping[Edge, tuple[int, ...]] = field(repr=False)
    seg_lies_on: Mapping[Edge, Edge] = field(repr=False)
    crossing_points: Mapping[int, tuple[Fraction, Fraction]] = field(repr=False)

    @property
    def num_outer(self) -> int:
        return self.drawing.n

    def is_outer(self, v: int) -> bool:
        return v < self.drawing.n

    @property
    def edges(self) -> list[Edge]:
        return sorted(self.seg_lies_on)

    @property
    def num_edges(self) -> int:
        return len(self.seg_lies_on)


@dataclass(frozen=True)
class SubdividedGraph:
    """G_S: the crossing graph with every crossing split into two vertices.

    ``split[c] = (v1, v2)`` for every inner vertex ``c`` of the crossing graph;
    ``v1`` carries the first two neighbours of ``c``'s canonical rotation.
    ``part[(c, w)]`` is the half of ``c`` adjacent to ``w``.
    """

    base: CrossingGraph = field(repr=False)
    num_vertices: int
    rotation: tuple[tuple[int, ...], ...] = field(repr=False)
    lies_on: Mapping[int, tuple[Edge, Edge]] = field(repr=False)
    edge_chains: Mapping[Edge, tuple[int, ...]] = field(repr=False)
    seg_lies_on: Mapping[Edge, Edge] = field(repr=False)
    auxiliary: frozenset[Edge] = field(repr=False)
    split: Mapping[int, tuple[int, int]] = field(repr=False)
    part: Mapping[tuple[int, int], int] = field(repr=False)

    @property
    def drawing(self) -> ConvexDrawing:
        return self.base.drawing

    @property
    def num_outer(self) -> int:
        return self.base.drawing.n

    def is_outer(self, v: int) -> bool:
        return v < self.base.drawing.n

    @property
    def edges(self) -> list[Edge]:
        return sorted(set(self.seg_lies_on) | self.auxiliary)

    @property
    def num_edges(self) -> int:
        return len(self.seg_lies_on) + len(self.auxiliary)

    def lift_edge(self, e: Edge) -> Edge:
        """The G_S edge corresponding to crossing-graph edge ``e``."""
        a, b = e
        return norm_edge(self.part.get((a, b), a), self.part.get((b, a), b))


PlaneGraph = Union[CrossingGraph, SubdividedGraph]


def build_crossing_graph(
    d: ConvexDrawing, placement: CirclePlacement | None = None
) -> CrossingGraph:
    """Planarize ``d``.

    Without an explicit placement the deterministic retry schedule is used:
    attempts ``0..MAX_RETRIES`` of :func:`place_on_circle`, moving on whenever
    three chords turn out to be concurrent.
    """
    if not d.is_hull_complete():
        raise PreconditionError("planarization requires a hull-complete drawing")
    if placement is not None:
        return _build(d, placement)
    last: ThreeConcurrentEdges | None = None
    for attempt in range(MAX_RETRIES + 1):
        try:
            return _build(d, place_on_circle(d.n, attempt))
        except ThreeConcurrentEdges as exc:
            last = exc
    assert last is not None
    raise last


def _build(d: ConvexDrawing, placement: CirclePlacement) -> CrossingGraph:
    n = d.n
    if len(placement.homogeneous) != n:
        raise PreconditionError("placement size does not match the drawing")
    pos = d.position
    pt = [placement.homogeneous[pos[v]] for v in range(n)]
    report = compute_crossings(d)

    lines = {e: _line(pt[e[0]], pt[e[1]]) for e in d.edges}
    where: dict[HPoint, tuple[int, Edge, Edge]] = {}
    lies_on: dict[int, tuple[Edge, Edge]] = {}
    on_edge: dict[Edge, list[tuple[Fraction, int]]] = {e: [] for e in d.edges}
    nxt = n
    for e, f in sorted(report.pairs):
        p = _reduce(_meet(lines[e], lines[f]))
        if p in where:
            _, e0, f0 = where[p]
            raise ThreeConcurrentEdges(sorted({e0, f0, e, f}))
        where[p] = (nxt, e, f)
        lies_on[nxt] = (e, f)
        for g in (e, f):
            a, b = pt[g[0]], pt[g[1]]
            on_edge[g].append((_param(a, b, p), nxt))
        nxt += 1

    chains: dict[Edge, tuple[int, ...]] = {}
    seg: dict[Edge, Edge] = {}
    nbr_along: dict[tuple[int, Edge], tuple[int, int]] = {}
    for e in d.edges:
        inner = [c for _, c in sorted(on_edge[e])]
        chain = (e[0], *inner, e[1])
        chains[e] = chain
        for a, b in zip(chain, chain[1:]):
            seg[norm_edge(a, b)] = e
        for i in range(1, len(chain) - 1):
            nbr_along[(chain[i], e)] = (chain[i - 1], chain[i + 1])

    rotation: list[tuple[int, ...]] = [()] * nxt
    for c, (e, f) in lies_on.items():
        pe, ne = nbr_along[(c, e)]
        pf, nf = nbr_along[(c, f)]
        de = _direction(pt[e[0]], pt[e[1]])
        df = _direction(pt[f[0]], pt[f[1]])
        if _cross(de, df) > 0:
            rotation[c] = (ne, nf, pe, pf)
        else:
            rotation[c] = (ne, pf, pe, nf)

    incident: list[list[tuple[tuple[int, int], int]]] = [[] for _ in range(n)]
    for e, chain in chains.items():
        u, v = e
        incident[u].append((_direction(pt[u], pt[v]), chain[1]))
        incident[v].append((_direction(pt[v], pt[u]), chain[-2]))
    for v in range(n):
        # all directions point into the disk, i.e. into an open half-plane
        items = sorted(incident[v], key=cmp_to_key(lambda a, b: -_sign(_cross(a[0], b[0]))))
        rotation[v] = tuple(w for _, w in items)

    points = {
        c: (Fraction(p[0], p[2]), Fraction(p[1], p[2])) for p, (c, _, _) in where.items()
    }
    return CrossingGraph(
        drawing=d,
        placement=placement,
        num_vertices=nxt,
        rotation=tuple(rotation),
        lies_on=lies_on,
        edge_chains=chains,
        seg_lies_on=seg,
        crossing_points=points,
    )


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _param(a: HPoint, b: HPoint, p: HPoint) -> Fraction:
    """Monotone coordinate of ``p`` along the chord from ``a`` to ``b``."""
    dx, dy = _direction(a, b)
    if dx:
        x = Fraction(p[0], p[2])
        return x if dx > 0 else -x
    y = Fraction(p[1], p[2])
    return y if dy > 0 else -y


def subdivide(gc: CrossingGraph) -> SubdividedGraph:
    """Split every crossing vertex into two adjacent degree-3 vertices.

    At a crossing with rotation ``(w1, w2, w3, w4)`` starting from the
    neighbour toward the smaller endpoint of the smaller original edge, the
    first new vertex takes ``w1, w2`` and the second ``w3, w4``.
    """
    n = gc.num_outer
    split: dict[int, tuple[int, int]] = {}
    part: dict[tuple[int, int], int] = {}
    new_rot: dict[int, tuple[int, int, int]] = {}
    canon: dict[int, tuple[int, ...]] = {}
    for c in sorted(gc.lies_on):
        v1 = n + 2 * (c - n)
        v2 = v1 + 1
        split[c] = (v1, v2)
        e = min(gc.lies_on[c])
        chain = gc.edge_chains[e]
        w1 = chain[chain.index(c) - 1]
        rot = gc.rotation[c]
        i = rot.index(w1)
        r = rot[i:] + rot[:i]
        canon[c] = r
        part[(c, r[0])] = part[(c, r[1])] = v1
        part[(c, r[2])] = part[(c, r[3])] = v2

    def lift(x: int, toward: int) -> int:
        return part.get((x, toward), x)

    total = n + 2 * len(split)
    rotation: list[tuple[int, ...]] = [()] * total
    for v in range(n):
        rotation[v] = tuple(lift(w, v) for w in gc.rotation[v])
    lies_on: dict[int, tuple[Edge, Edge]] = {}
    for c, (v1, v2) in split.items():
        r = canon[c]
        rotation[v1] = (lift(r[0], c), lift(r[1], c), v2)
        rotation[v2] = (lift(r[2], c), lift(r[3], c), v1)
        lies_on[v1] = lies_on[v2] = gc.lies_on[c]

    seg: dict[Edge, Edge] = {}
    for (a, b), e in gc.seg_lies_on.items():
        seg[norm_edge(lift(a, b), lift(b, a))] = e
    chains: dict[Edge, tuple[int, ...]] = {}
    for e, chain in gc.edge_chains.items():
        out = [chain[0]]
        for i in range(1, len(chain) - 1):
            c = chain[i]
            out.append(lift(c, chain[i - 1]))
            out.append(lift(c, chain[i + 1]))
        out.append(chain[-1])
        chains[e] = tuple(out)
    aux = frozenset(split.values())
    return SubdividedGraph(
        base=gc,
        num_vertices=total,
        rotation=tuple(rotation),
        lies_on=lies_on,
        edge_chains=chains,
        seg_lies_on=seg,
        auxiliary=aux,
        split=split,
        part=part,
    )


def planarize(d: ConvexDrawing) -> tuple[CrossingGraph, SubdividedGraph]:
    gc = build_crossing_graph(d)
    return gc, subdivide(gc)


# ---------------------------------------------------------------------------
# Faces and dual
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceStructure:
    """Faces of a plane graph given by its rotation system.

    ``faces[i]`` is the boundary walk of face ``i`` as directed edges; each
    directed edge has its face on the left. ``edges`` lists the undirected
    primal edges; dual edge ``i`` joins ``dual_edges[i]`` and crosses
    ``edges[i]``.
    """

    faces: tuple[tuple[tuple[int, int], ...], ...]
    outer_face: int
    face_of: Mapping[tuple[int, int], int] = field(repr=False)
    edges: tuple[Edge, ...] = field(repr=False)
    dual_edges: tuple[tuple[int, int], ...] = field(repr=False)
    dual_of: Mapping[Edge, int] = field(repr=False)
    dual_adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def face_vertices(self, f: int) -> list[int]:
        return [u for u, _ in self.faces[f]]

    def faces_at(self, v: int, rotation: Sequence[Sequence[int]]) -> set[int]:
        return {self.face_of[(v, w)] for w in rotation[v]}


def compute_faces(g: PlaneGraph) -> FaceStructure:
    rot = g.rotation
    nv = g.num_vertices
    if not _connected(rot, nv):
        raise PreconditionError("face computation requires a connected plane graph")
    index: dict[tuple[int, int], int] = {}
    for v in range(nv):
        for i, w in enumerate(rot[v]):
            index[(v, w)] = i

    def next_dart(u: int, v: int) -> tuple[int, int]:
        r = rot[v]
        return (v, r[index[(v, u)] - 1])

    d = g.drawing
    start_u = 0
    start_v = d.succ(0)
    darts = [(start_u, start_v)] + [(v, w) for v in range(nv) for w in rot[v]]
    face_of: dict[tuple[int, int], int] = {}
    faces: list[tuple[tuple[int, int], ...]] = []
    for dart in darts:
        if dart in face_of:
            continue
        fid = len(faces)
        walk = []
        cur = dart
        while cur not in face_of:
            face_of[cur] = fid
            walk.append(cur)
            cur = next_dart(*cur)
        if cur != dart:
            raise AssertionError("inconsistent rotation system")
        faces.append(tuple(walk))

    outer = face_of[(d.succ(0), 0)]
    edges = tuple(g.edges)
    dual_edges = tuple((face_of[(u, v)], face_of[(v, u)]) for u, v in edges)
    dual_of = {e: i for i, e in enumerate(edges)}
    adj: list[list[tuple[int, int]]] = [[] for _ in faces]
    for i, (f1, f2) in enumerate(dual_edges):
        adj[f1].append((f2, i))
        if f2 != f1:
            adj[f2].append((f1, i))
    return FaceStructure(
        faces=tuple(faces),
        outer_face=outer,
        face_of=face_of,
        edges=edges,
        dual_edges=dual_edges,
        dual_of=dual_of,
        dual_adjacency=tuple(tuple(sorted(a)) for a in adj),
    )


def _connected(rot: Sequence[Sequence[int]], nv: int) -> bool:
    if nv == 0:
        return True
    seen = [False] * nv
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == nv


def euler_characteristic(g: PlaneGraph, faces: FaceStructure) -> int:
    return g.num_vertices - g.num_edges + faces.num_faces
