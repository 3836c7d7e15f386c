"""Balanced separations from tree decompositions, plus a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .decomp import TreeDecomposition, run_pipeline
from .drawing import ConvexDrawing, Edge, Graph, norm_edge
from .errors import InternalError, PreconditionError, TooLarge


def separation_bound(k: int) -> int:
    return 2 * (k // 2) + 4


@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    B: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    @property
    def separator(self) -> frozenset[int]:
        return self.A & self.B

    def is_balanced(self, n: int) -> bool:
        return 3 * len(self.A - self.B) <= 2 * n and 3 * len(self.B - self.A) <= 2 * n


def verify_separation(sep: Separation, g: Graph, balanced: bool = True) -> list[str]:
    """Independent check of the separation conditions with integer arithmetic."""
    problems = []
    if sep.A | sep.B != frozenset(range(g.n)):
        problems.append("A and B do not cover the vertex set")
    only_a, only_b = sep.A - sep.B, sep.B - sep.A
    for u, v in sorted(g.edges):
        if (u in only_a and v in only_b) or (u in only_b and v in only_a):
            problems.append(f"edge ({u}, {v}) joins A\\B and B\\A")
            break
    if balanced and not sep.is_balanced(g.n):
        problems.append(f"unbalanced: |A\\B|={len(only_a)}, |B\\A|={len(only_b)}, n={g.n}")
    return problems


def _bits(s) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def extract_balanced_separation(td: TreeDecomposition, g: Graph) -> tuple[Separation, Edge]:
    """Balanced separation ``(S_xy, S_yx)`` of minimum order over the tree edges.

    ``S_xy`` is the union of the bags on ``x``'s side of tree edge ``xy``. The
    decomposition tree must have maximum degree 3 and every vertex must occur
    in at least two bags; then some tree edge is balanced.
    """
    n = g.n
    adj = td.tree_adjacency()
    for x, a in enumerate(adj):
        if len(a) > 3:
            raise PreconditionError(f"tree node {x} has degree {len(a)} > 3")
    occurrences = [0] * n
    for b in td.bags:
        for v in b:
            occurrences[v] += 1
    for v in range(n):
        if occurrences[v] < 2:
            raise PreconditionError(f"vertex {v} occurs in {occurrences[v]} bag(s), need 2")

    masks = [_bits(b) for b in td.bags]
    full = (1 << n) - 1
    # subtree unions in one post-order pass from node 0
    parent = [-1] * td.num_nodes
    order = [0]
    seen = [False] * td.num_nodes
    seen[0] = True
    for x in order:
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                order.append(y)
    down = masks[:]
    for x in reversed(order[1:]):
        down[parent[x]] |= down[x]

    best: tuple[int, Edge, int] | None = None
    heavy: dict[Edge, int] = {}
    for a, b in td.tree_edges:
        child = b if parent[b] == a else a
        inter = masks[a] & masks[b]
        below = down[child]
        # outside the child's subtree is exactly the parent side's strict part
        strict_child = _popcount(below & ~inter)
        strict_parent = n - _popcount(below)
        if 3 * strict_child <= 2 * n and 3 * strict_parent <= 2 * n:
            size = _popcount(inter)
            if best is None or size < best[0]:
                best = (size, (a, b), child)
        else:
            heavy[(a, b)] = child if 3 * strict_child > 2 * n else parent[child]
    if best is None:
        sink = next(
            (x for x in range(td.num_nodes) if all(heavy[norm_edge(x, y)] == x for y in adj[x])),
            None,
        )
        raise InternalError(f"no balanced tree edge; node {sink} has every edge oriented toward it")
    _, (a, b), child = best
    inter = masks[a] & masks[b]
    child_side = down[child]
    parent_side = (full & ~child_side) | inter
    if child == b:
        return Separation(A=_members(parent_side), B=_members(child_side)), (a, b)
    return Separation(A=_members(child_side), B=_members(parent_side)), (a, b)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def trivial_separation(n: int) -> Separation:
    everything = frozenset(range(n))
    return Separation(everything, everything)


def separate(d: ConvexDrawing, k: int) -> Separation:
    """Balanced separation of order at most ``2 * (k // 2) + 4``."""
    result = run_pipeline(d, k)
    if result.trivial:
        return trivial_separation(d.n)
    sep, _ = extract_balanced_separation(result.decomposition, d.graph)
    return sep


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------


def brute_force_min_balanced_separation(g: Graph, cap: int = 16) -> int:
    """Minimum order of a balanced separation, by exhaustive search.

    Separator candidates are tried by increasing size; for each, the
    components of the remainder are split into two sides with a subset-sum
    check.
    """
    n = g.n
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds the oracle cap of {cap}")
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    limit = 2 * n  # sides must satisfy 3 * size <= 2n
    for s in range(n + 1):
        for sep in combinations(range(n), s):
            removed = _bits(sep)
            sizes = _component_sizes(adj, n, removed)
            rest = n - s
            reach = 1
            for c in sizes:
                reach |= reach << c
            for x in range(rest + 1):
                if reach >> x & 1 and 3 * x <= limit and 3 * (rest - x) <= limit:
                    return s
    raise InternalError("unreachable: the full vertex set is always a separator")


def _component_sizes(adj: list[int], n: int, removed: int) -> list[int]:
    left = ((1 << n) - 1) & ~removed
    sizes = []
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = adj[v] & left & ~comp
            comp |= new
            frontier |= new
        left &= ~comp
        sizes.append(_popcount(comp))
    return sizes
