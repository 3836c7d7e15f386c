"""Graph families with prescribed drawings, brambles, and random test drawings.

Vertex numbering is stable so that generated files are portable:

* grid ``X_{m,n}``: ``x(i, j) = (i-1)*n + (j-1)``;
* ``G_k``: the ``2k x 2k`` grid ``Q`` first, then the ``2k(k+1) x k`` grid ``R``;
* ``F_k``: the ``Q`` block, the ``R`` block, then the paths ``Z_1..Z_2k``,
  then the paths ``W_1..W_2k``;
* stacked prism ``Y_{m,n}``: row by row, ``y(i, j) = (i-1)*n + (j-1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .drawing import ConvexDrawing, Edge, Graph, norm_edge
from .errors import PreconditionError

Label = tuple  # ("v", i, j), ("u", i, j), ("z", i, j) or ("w", i, j)


# ---------------------------------------------------------------------------
# Grids and G_k
# ---------------------------------------------------------------------------


def _grid_edges(m: int, n: int, at) -> list[Edge]:
    out = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if j < n:
                out.append(norm_edge(at(i, j), at(i, j + 1)))
            if i < m:
                out.append(norm_edge(at(i, j), at(i + 1, j)))
    return out


def gen_grid(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise PreconditionError("grid dimensions must be positive")
    return Graph.from_edges(m * n, _grid_edges(m, n, lambda i, j: (i - 1) * n + (j - 1)))


def gk_q(k: int, i: int, j: int) -> int:
    return (i - 1) * 2 * k + (j - 1)


def gk_r(k: int, i: int, j: int) -> int:
    return 4 * k * k + (i - 1) * k + (j - 1)


def gk_rows(k: int) -> int:
    """Number of rows of the ``R`` grid."""
    return 2 * k * (k + 1)


def gen_Gk(k: int) -> Graph:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    n = 4 * k * k + gk_rows(k) * k
    edges = _grid_edges(2 * k, 2 * k, lambda i, j: gk_q(k, i, j))
    edges += _grid_edges(gk_rows(k), k, lambda i, j: gk_r(k, i, j))
    for i in range(1, 2 * k + 1):
        for j in range(1, k + 2):
            edges.append(norm_edge(gk_q(k, i, 2 * k), gk_r(k, (i - 1) * (k + 1) + j, 1)))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# F_k and its drawing
# ---------------------------------------------------------------------------


def fk_path_length(k: int, i: int) -> int:
    """Length of the path ``Z_i``."""
    return (k - i) * (k + 1) if i <= k else (i - k - 1) * (k + 1)


def fk_vertex_count(k: int) -> int:
    return 4 * k * k + 2 * k * k * (k + 1) + k * (k + 1) * (k - 1) + 2 * k + 2 * k * (k + 1)


@dataclass(frozen=True)
class FkLayout:
    k: int
    ids: Mapping[Label, int] = field(repr=False)
    labels: tuple[Label, ...] = field(repr=False)
    drawing: ConvexDrawing = field(repr=False)

    def ell(self, i: int) -> int:
        return fk_path_length(self.k, i)

    def id(self, kind: str, i: int, j: int) -> int:
        return self.ids[(kind, i, j)]


def fk_layout(k: int) -> FkLayout:
    """``F_k`` with its outer ``(2k-1)``-planar cyclic order."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    labels: list[Label] = []
    for i in range(1, 2 * k + 1):
        for j in range(1, 2 * k + 1):
            labels.append(("v", i, j))
    for i in range(1, gk_rows(k) + 1):
        for j in range(1, k + 1):
            labels.append(("u", i, j))
    for i in range(1, 2 * k + 1):
        for j in range(fk_path_length(k, i) + 1):
            labels.append(("z", i, j))
    for i in range(1, 2 * k + 1):
        for j in range(1, k + 2):
            labels.append(("w", i, j))
    ids = {lab: x for x, lab in enumerate(labels)}
    assert len(labels) == fk_vertex_count(k)

    def at(kind: str, i: int, j: int) -> int:
        return ids[(kind, i, j)]

    ell = lambda i: fk_path_length(k, i)  # noqa: E731
    edges = _grid_edges(2 * k, 2 * k, lambda i, j: at("v", i, j))
    edges += _grid_edges(gk_rows(k), k, lambda i, j: at("u", i, j))
    for i in range(1, 2 * k + 1):
        edges.append((at("v", i, 2 * k), at("z", i, 0)))
        edges += [(at("z", i, j), at("z", i, j + 1)) for j in range(ell(i))]
        edges += [(at("w", i, j), at("w", i, j + 1)) for j in range(1, k + 1)]
        end = at("w", i, k + 1) if i <= k else at("w", i, 1)
        edges.append((at("z", i, ell(i)), end))
        for j in range(1, k + 2):
            edges.append((at("w", i, j), at("u", (i - 1) * (k + 1) + j, 1)))

    upper: list[Label] = []
    for j in range(1, 2 * k + 1):
        upper += [("v", i, j) for i in range(k, 0, -1)]
    upper += [("z", i, 0) for i in range(k, 0, -1)]
    for i in range(k, 1, -1):
        for r in range(1, k + 2):
            upper.append(("w", i, k + 2 - r))
            upper += [("z", a, (k - i) * (k + 1) + r) for a in range(i - 1, 0, -1)]
    upper += [("w", 1, j) for j in range(k + 1, 0, -1)]
    middle = [("u", i, j) for i in range(1, gk_rows(k) + 1) for j in range(1, k + 1)]

    def mirror(lab: Label) -> Label:
        kind, i, j = lab
        if kind == "w":
            return ("w", 2 * k - i + 1, k - j + 2)
        return (kind, 2 * k - i + 1, j)

    lower = [mirror(lab) for lab in reversed(upper)]
    order = tuple(ids[lab] for lab in upper + middle + lower)
    drawing = ConvexDrawing.from_edges(len(labels), edges, order)
    return FkLayout(k=k, ids=ids, labels=tuple(labels), drawing=drawing)


def gen_Fk(k: int) -> ConvexDrawing:
    return fk_layout(k).drawing


def fk_edge_types(layout: FkLayout) -> dict[Edge, tuple[int, int]]:
    """Classify every edge of ``F_k`` into one of 11 types with its crossing cap.

    Returns ``edge -> (type, cap)``. Types: 1 ``Q`` columns within a half,
    2 ``Q`` columns between the halves, 3 ``Q`` rows, 4 ``v_{i,2k} z_{i,0}``,
    5 ``Z``-to-``W`` links, 6 first edges of ``Z_i`` with ``i`` not in
    ``{k, k+1}``, 7 other ``Z`` edges, 8 ``W`` edges, 9 ``W``-to-``R`` links,
    10 ``R`` rows, 11 ``R`` columns.
    """
    k = layout.k
    caps = {
        1: 0, 2: 2 * (k - 1), 3: 2 * k - 1, 4: 2 * (k - 1), 5: 2 * (k - 1),
        6: 2 * (k - 2) + 3, 7: 2 * (k - 2) + 3, 8: 2 * (k - 1), 9: 2 * (k - 1),
        10: 0, 11: 2 * k - 1,
    }
    out: dict[Edge, tuple[int, int]] = {}
    for e in layout.drawing.edges:
        (ka, ia, ja), (kb, ib, jb) = sorted((layout.labels[e[0]], layout.labels[e[1]]))
        kinds = ka + kb
        if kinds == "vv":
            if ja == jb:
                t = 2 if min(ia, ib) == k else 1
            else:
                t = 3
        elif kinds == "vz":
            t = 4
        elif kinds == "wz":
            t = 5
        elif kinds == "zz":
            t = 6 if {ja, jb} == {0, 1} and ia not in (k, k + 1) else 7
        elif kinds == "ww":
            t = 8
        elif kinds == "uw":
            t = 9
        elif kinds == "uu":
            t = 10 if ia == ib else 11
        else:
            raise AssertionError(f"unexpected edge kinds {kinds}")
        cap = 0 if t == 2 and ja == 1 else caps[t]
        out[e] = (t, cap)
    return out


def contract_fk_to_gk(layout: FkLayout) -> Graph:
    """Contract ``v_{i,2k}`` with ``Z_i`` and ``W_i`` for every ``i``.

    The merged vertex keeps the id of ``v_{i,2k}``; ``Q`` and ``R`` ids are the
    same in ``F_k`` and ``G_k``, so the result is directly comparable with
    :func:`gen_Gk`.
    """
    k = layout.k
    rep = {}
    for i in range(1, 2 * k + 1):
        target = layout.id("v", i, 2 * k)
        for j in range(fk_path_length(k, i) + 1):
            rep[layout.id("z", i, j)] = target
        for j in range(1, k + 2):
            rep[layout.id("w", i, j)] = target
    edges = set()
    for u, v in layout.drawing.edges:
        a, b = rep.get(u, u), rep.get(v, v)
        if a != b:
            edges.add(norm_edge(a, b))
    n = 4 * k * k + gk_rows(k) * k
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# Stacked prisms
# ---------------------------------------------------------------------------


def gen_stacked_prism(m: int, n: int) -> ConvexDrawing:
    """``Y_{m,n}``: the ``m x n`` grid plus first-to-last-row edges, rows placed consecutively."""
    if m < 3 or n < 1:
        raise PreconditionError("stacked prism needs m >= 3 and n >= 1")
    at = lambda i, j: (i - 1) * n + (j - 1)  # noqa: E731
    edges = _grid_edges(m, n, at)
    edges += [(at(1, j), at(m, j)) for j in range(1, n + 1)]
    return ConvexDrawing.from_edges(m * n, edges)


def prism_row_edges(m: int, n: int) -> set[Edge]:
    return {((i - 1) * n + j - 1, (i - 1) * n + j) for i in range(1, m + 1) for j in range(1, n)}


# ---------------------------------------------------------------------------
# Brambles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bramble:
    sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class BrambleViolation:
    kind: str  # "empty", "disconnected" or "not-touching"
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness}"


def gen_Gk_bramble(k: int) -> Bramble:
    """Extended row plus ``Q`` column, and ``R`` row plus ``R`` column."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    rows = gk_rows(k)
    first: list[frozenset[int]] = []
    for r in range(1, rows + 1):
        qrow = (r - 1) // (k + 1) + 1
        ext = {gk_r(k, r, j) for j in range(1, k + 1)} | {gk_q(k, qrow, j) for j in range(1, 2 * k + 1)}
        for c in range(1, 2 * k + 1):
            first.append(frozenset(ext | {gk_q(k, i, c) for i in range(1, 2 * k + 1)}))
    second: list[frozenset[int]] = []
    for r in range(1, rows + 1):
        for c in range(1, k + 1):
            cells = {gk_r(k, r, j) for j in range(1, k + 1)} | {gk_r(k, i, c) for i in range(1, rows + 1)}
            second.append(frozenset(cells))
    return Bramble(tuple(first + second))


def _connected(g: Graph, vs: frozenset[int]) -> bool:
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    adj = g.adjacency
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def verify_bramble(g: Graph, b: Bramble) -> BrambleViolation | None:
    """``None`` if ``b`` is a bramble of ``g``, else the first violation found."""
    adj = g.adjacency
    for i, s in enumerate(b.sets):
        if not s:
            return BrambleViolation("empty", (i,))
        if not all(0 <= v < g.n for v in s):
            return BrambleViolation("unknown-vertex", (i,))
        if not _connected(g, s):
            return BrambleViolation("disconnected", (i, tuple(sorted(s))))
    closed = [s.union(*(adj[v] for v in s)) for s in b.sets]
    for i in range(len(b.sets)):
        for j in range(i + 1, len(b.sets)):
            if not (closed[i] & b.sets[j]):
                return BrambleViolation("not-touching", (i, j))
    return None


# ---------------------------------------------------------------------------
# Random outer min-k-planar drawings
# ---------------------------------------------------------------------------


def random_outer_min_k_planar(
    n: int, k: int, seed: int, attempts: int | None = None, shuffle_ids: bool = True
) -> ConvexDrawing:
    """A random hull-complete outer min-k-planar drawing.

    Starting from the hull cycle, ``attempts`` (default ``4n``) random chords
    are tried; a chord is kept only if every crossing pair still has an edge
    crossed at most ``k`` times. With ``shuffle_ids`` the vertex ids are a
    random permutation of the cyclic positions.
    """
    if n < 3:
        raise PreconditionError("random drawings need n >= 3")
    rng = random.Random(seed)
    if attempts is None:
        attempts = 4 * n
    chords: list[tuple[int, int]] = []
    present: set[tuple[int, int]] = set()
    crossers: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for _ in range(attempts):
        a, b = sorted(rng.sample(range(n), 2))
        if b - a == 1 or (a == 0 and b == n - 1) or (a, b) in present:
            continue
        hits = [(c, d) for c, d in chords if a < c < b < d or c < a < d < b]
        new_count = len(hits)
        ok = True
        for h in hits:
            ch = len(crossers[h]) + 1
            if min(new_count, ch) > k:
                ok = False
                break
            for other in crossers[h]:
                if min(ch, len(crossers[other]) + (other in hits)) > k:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        chords.append((a, b))
        present.add((a, b))
        crossers[(a, b)] = hits
        for h in hits:
            crossers[h].append((a, b))

    order = list(range(n))
    if shuffle_ids:
        rng.shuffle(order)
    pos_edges = [(p, (p + 1) % n) for p in range(n)] + chords
    return ConvexDrawing.from_edges(n, [(order[p], order[q]) for p, q in pos_edges], order)
