"""Tree decompositions of outer min-k-planar drawings from paired spanning trees.

Pipeline for a drawing ``d`` and parameter ``k``::

    hull_complete -> expand -> build_crossing_graph -> subdivide -> compute_faces
        -> build_tree_pair -> orient_edges -> build_bags -> contract_bags

The decomposition tree is the primal spanning tree of the subdivided crossing
graph; its complement dualizes to a BFS tree of the dual rooted at the outer
face, whose depth is at most ``k // 2 + 1``. The resulting width is at most
``3 * (k // 2) + 4``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .drawing import (
    ConvexDrawing,
    Edge,
    ExpansionResult,
    Graph,
    compute_crossings,
    expand,
    hull_complete,
    min_k_violation,
    norm_edge,
)
from .errors import (
    BoundViolated,
    DepthBoundViolated,
    InternalError,
    NotMinKPlanar,
    PreconditionError,
)
from .planarize import (
    CrossingGraph,
    FaceStructure,
    SubdividedGraph,
    build_crossing_graph,
    compute_faces,
    subdivide,
)


def depth_bound(k: int) -> int:
    return k // 2 + 1


def width_bound(k: int) -> int:
    return 3 * (k // 2) + 4


# ---------------------------------------------------------------------------
# Tree decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by tree nodes ``0..len(bags)-1``; bags are sorted tuples."""

    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[Edge, ...]

    @classmethod
    def from_sets(cls, bags: Sequence[Iterable[int]], tree_edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
        return cls(
            bags=tuple(tuple(sorted(set(b))) for b in bags),
            tree_edges=tuple(sorted(norm_edge(a, b) for a, b in tree_edges)),
        )

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    @property
    def max_tree_degree(self) -> int:
        return max((len(a) for a in self.tree_adjacency()), default=0)


def single_bag(n: int) -> TreeDecomposition:
    return TreeDecomposition(bags=(tuple(range(n)),), tree_edges=())


def validate_td(td: TreeDecomposition, g: Graph) -> list[str]:
    """Every violated tree-decomposition condition, as messages (empty if valid)."""
    problems: list[str] = []
    nb = td.num_nodes
    if nb == 0:
        problems.append("decomposition has no bags")
        return problems
    adj: list[list[int]] = [[] for _ in range(nb)]
    for a, b in td.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            problems.append(f"tree edge ({a}, {b}) is invalid")
            continue
        adj[a].append(b)
        adj[b].append(a)
    if len(set(td.tree_edges)) != len(td.tree_edges):
        problems.append("tree has repeated edges")
    if len(td.tree_edges) != nb - 1:
        problems.append(f"tree has {len(td.tree_edges)} edges, expected {nb - 1}")
    seen = [False] * nb
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    if not all(seen):
        problems.append("tree is not connected")

    occ: list[list[int]] = [[] for _ in range(g.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            if 0 <= v < g.n:
                occ[v].append(x)
            else:
                problems.append(f"bag {x} contains unknown vertex {v}")
    for v in range(g.n):
        if not occ[v]:
            problems.append(f"vertex {v} is in no bag")
            continue
        nodes = set(occ[v])
        start = occ[v][0]
        reached = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in reached:
                    reached.add(y)
                    stack.append(y)
        if reached != nodes:
            problems.append(f"bags containing vertex {v} do not induce a subtree")
    bagsets = [set(b) for b in td.bags]
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in (bagsets[x] for x in occ[u])):
            problems.append(f"edge ({u}, {v}) is in no bag")
    return problems


# ---------------------------------------------------------------------------
# Spanning tree pair
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanningTreePair:
    """Primal spanning tree of G_S and the rooted dual tree of its complement.

    ``dual_parent[f] = (parent face, G_S edge crossed)``; the root is the outer
    face and has no entry.
    """

    primal_edges: frozenset[Edge]
    dual_parent: Mapping[int, tuple[int, Edge]] = field(repr=False)
    dual_depth: Mapping[int, int] = field(repr=False)
    root: int

    @property
    def max_depth(self) -> int:
        return max(self.dual_depth.values(), default=0)


def build_tree_pair(gs: SubdividedGraph, faces: FaceStructure, k: int) -> SpanningTreePair:
    """BFS the dual of the crossing graph from the outer face and lift it to G_S.

    Faces are explored in ascending id and parallel dual edges by ascending
    primal edge, so the result is deterministic.
    """
    report = compute_crossings(gs.drawing)
    bad = min_k_violation(report, k)
    if bad is not None:
        raise NotMinKPlanar(k, *bad)

    gc = gs.base
    fc = compute_faces(gc)
    parent_c: dict[int, tuple[int, int]] = {}
    depth_c = {fc.outer_face: 0}
    queue = deque([fc.outer_face])
    while queue:
        f = queue.popleft()
        for g, i in fc.dual_adjacency[f]:
            if g not in depth_c:
                depth_c[g] = depth_c[f] + 1
                parent_c[g] = (f, i)
                queue.append(g)

    # face bijection through corresponding darts
    fmap = {}
    for f, walk in enumerate(fc.faces):
        a, b = walk[0]
        fmap[f] = faces.face_of[(gs.part.get((a, b), a), gs.part.get((b, a), b))]
    if len(set(fmap.values())) != faces.num_faces or faces.num_faces != fc.num_faces:
        raise InternalError("subdivision did not preserve the faces")

    dual_parent: dict[int, tuple[int, Edge]] = {}
    dual_depth: dict[int, int] = {}
    dual_tree: set[Edge] = set()
    for f, dep in depth_c.items():
        dual_depth[fmap[f]] = dep
    for g, (f, i) in parent_c.items():
        e = gs.lift_edge(fc.edges[i])
        dual_parent[fmap[g]] = (fmap[f], e)
        dual_tree.add(e)

    primal = frozenset(e for e in faces.edges if e not in dual_tree)
    if not _is_spanning_tree(gs.num_vertices, primal):
        raise InternalError("complement of the dual BFS tree is not a spanning tree")
    if not gs.auxiliary <= primal:
        raise InternalError("an auxiliary edge is missing from the primal tree")
    cap = depth_bound(k)
    worst = max(dual_depth.values(), default=0)
    if worst > cap:
        raise DepthBoundViolated(f"dual depth {worst} exceeds {cap} for k={k}")
    return SpanningTreePair(
        primal_edges=primal,
        dual_parent=dual_parent,
        dual_depth=dual_depth,
        root=faces.outer_face,
    )


def _is_spanning_tree(nv: int, edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    if len(edges) != nv - 1:
        return False
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


# ---------------------------------------------------------------------------
# Orientation and bags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeOrientation:
    dir: Mapping[Edge, tuple[int, int]]

    def tail(self, e: Edge) -> int:
        return self.dir[e][0]


def orient_edges(d: ConvexDrawing) -> EdgeOrientation:
    """Hull edges follow increasing position; chords go from lower to higher position."""
    if not d.is_hull_complete():
        raise PreconditionError("orientation requires a hull-complete drawing")
    if d.graph.max_degree > 3:
        raise PreconditionError("orientation requires maximum degree 3")
    pos = d.position
    n = d.n
    out: dict[Edge, tuple[int, int]] = {}
    for u, v in d.edges:
        pu, pv = pos[u], pos[v]
        if (pv - pu) % n == 1:
            out[(u, v)] = (u, v)
        elif (pu - pv) % n == 1:
            out[(u, v)] = (v, u)
        else:
            out[(u, v)] = (u, v) if pu < pv else (v, u)
    return EdgeOrientation(out)


def build_bags(
    gs: SubdividedGraph,
    faces: FaceStructure,
    pair: SpanningTreePair,
    orient: EdgeOrientation,
    k: int,
) -> TreeDecomposition:
    """Bags on the vertices of G_S, joined along the primal tree.

    1. an outer vertex is in its own bag;
    2. the tail of every oriented edge is in the bag of its head;
    3. an inner vertex holds the tails of the edges it lies on;
    4. a vertex holds, for every adjacent non-outer face, the tails of the
       edges crossed by that face's dual-tree path to the outer face.
    """
    nv = gs.num_vertices
    bags: list[set[int]] = [set() for _ in range(nv)]
    for v in range(gs.num_outer):
        bags[v].add(v)
    for x, y in orient.dir.values():
        bags[y].add(x)
    for v, (e, f) in gs.lies_on.items():
        bags[v].add(orient.tail(e))
        bags[v].add(orient.tail(f))

    # tails along each face's root path, memoized top-down by depth
    tails: dict[int, frozenset[int]] = {pair.root: frozenset()}
    for f in sorted(pair.dual_depth, key=lambda f: pair.dual_depth[f]):
        if f == pair.root:
            continue
        parent, e = pair.dual_parent[f]
        tails[f] = tails[parent] | {orient.tail(gs.seg_lies_on[e])}

    rot = gs.rotation
    outer = faces.outer_face
    for v in range(nv):
        for w in rot[v]:
            f = faces.face_of[(v, w)]
            if f != outer:
                bags[v] |= tails[f]

    h = depth_bound(k)
    inner_cap = 2 + 3 * h
    outer_cap = 3 + 2 * h
    for v in range(nv):
        cap = outer_cap if gs.is_outer(v) else inner_cap
        if len(bags[v]) > cap:
            raise BoundViolated(f"bag of node {v} has {len(bags[v])} > {cap} vertices")
    td = TreeDecomposition.from_sets(bags, pair.primal_edges)
    if td.max_tree_degree > 3:
        raise BoundViolated("decomposition tree has a node of degree > 3")
    return td


def contract_bags(td: TreeDecomposition, origin: Sequence[int]) -> TreeDecomposition:
    """Replace every vertex in every bag by its origin; the tree is unchanged."""
    return TreeDecomposition(
        bags=tuple(tuple(sorted({origin[v] for v in b})) for b in td.bags),
        tree_edges=td.tree_edges,
    )


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    """All intermediate objects of one pipeline run (``None`` for trivial inputs)."""

    drawing: ConvexDrawing
    k: int
    decomposition: TreeDecomposition
    completed: ConvexDrawing | None = None
    expansion: ExpansionResult | None = None
    crossing_graph: CrossingGraph | None = None
    subdivided: SubdividedGraph | None = None
    faces: FaceStructure | None = None
    tree_pair: SpanningTreePair | None = None
    orientation: EdgeOrientation | None = None
    expanded_decomposition: TreeDecomposition | None = None

    @property
    def trivial(self) -> bool:
        return self.expansion is None


def check_min_k(d: ConvexDrawing, k: int) -> None:
    if k < 0:
        raise PreconditionError("k must be non-negative")
    bad = min_k_violation(compute_crossings(d), k)
    if bad is not None:
        raise NotMinKPlanar(k, *bad)


def run_pipeline(d: ConvexDrawing, k: int) -> PipelineResult:
    check_min_k(d, k)
    if d.n <= 2:
        return PipelineResult(drawing=d, k=k, decomposition=single_bag(d.n))
    full = hull_complete(d)
    exp = expand(full)
    gc = build_crossing_graph(exp.expanded)
    gs = subdivide(gc)
    faces = compute_faces(gs)
    pair = build_tree_pair(gs, faces, k)
    orient = orient_edges(exp.expanded)
    td_exp = build_bags(gs, faces, pair, orient, k)
    td = contract_bags(td_exp, exp.origin)
    if td.width > width_bound(k):
        raise BoundViolated(f"width {td.width} exceeds {width_bound(k)} for k={k}")
    return PipelineResult(
        drawing=d,
        k=k,
        decomposition=td,
        completed=full,
        expansion=exp,
        crossing_graph=gc,
        subdivided=gs,
        faces=faces,
        tree_pair=pair,
        orientation=orient,
        expanded_decomposition=td_exp,
    )


def decompose(d: ConvexDrawing, k: int) -> TreeDecomposition:
    """Tree decomposition of ``d``'s graph of width at most ``3 * (k // 2) + 4``."""
    return run_pipeline(d, k).decomposition
