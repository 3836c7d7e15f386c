"""Exact small-instance oracles: treewidth and minimum bramble hitting sets."""

from __future__ import annotations

from typing import Sequence

from .drawing import Graph
from .errors import BudgetExceeded, TooLarge
from .families import Bramble


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Treewidth
# ---------------------------------------------------------------------------


def exact_treewidth(g: Graph, cap: int = 22) -> int:
    """Exact treewidth by dynamic programming over eliminated vertex sets.

    Decides ``tw <= w`` for increasing ``w`` between a minor-min-width lower
    bound and a min-fill upper bound. A state is the set ``S`` of eliminated
    vertices; eliminating ``v`` next costs the number of vertices outside
    ``S + v`` reachable from ``v`` through ``S``. Simplicial and
    almost-simplicial vertices of low degree are eliminated without branching.
    The empty graph has treewidth 0 by convention here.
    """
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds the treewidth oracle cap of {cap}")
    best = 0
    for comp in _components(g):
        if len(comp) <= 1:
            continue
        adj = _local_adjacency(g, comp)
        best = max(best, _component_treewidth(adj))
    return best


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for x in comp:
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        out.append(sorted(comp))
    return out


def _local_adjacency(g: Graph, comp: list[int]) -> list[int]:
    index = {v: i for i, v in enumerate(comp)}
    adj = [0] * len(comp)
    for v in comp:
        for w in g.adjacency[v]:
            adj[index[v]] |= 1 << index[w]
    return adj


def _component_treewidth(adj: list[int]) -> int:
    lo = _minor_min_width(adj)
    hi = _min_fill_width(adj)
    for w in range(lo, hi):
        if _decide(adj, w):
            return w
    return hi


def _minor_min_width(adj: list[int]) -> int:
    n = len(adj)
    nb = {v: set(_bits_of(adj[v])) for v in range(n)}
    lb = 0
    while len(nb) > 1:
        v = min(nb, key=lambda x: (len(nb[x]), x))
        lb = max(lb, len(nb[v]))
        if not nb[v]:
            del nb[v]
            continue
        u = min(nb[v], key=lambda x: (len(nb[x]), x))
        # contract v into u
        for w in nb[v]:
            nb[w].discard(v)
            if w != u:
                nb[w].add(u)
                nb[u].add(w)
        del nb[v]
    return lb


def _min_fill_width(adj: list[int]) -> int:
    nb = {v: set(_bits_of(adj[v])) for v in range(len(adj))}
    width = 0
    while nb:
        def fill(v: int) -> int:
            ns = list(nb[v])
            return sum(1 for i, a in enumerate(ns) for b in ns[i + 1 :] if b not in nb[a])

        v = min(nb, key=lambda x: (fill(x), len(nb[x]), x))
        ns = nb.pop(v)
        width = max(width, len(ns))
        for a in ns:
            nb[a].discard(v)
            nb[a] |= ns - {a}
    return width


def _decide(adj: list[int], w: int) -> bool:
    n = len(adj)
    full = (1 << n) - 1
    level = {0}
    seen: set[int] = set()
    while level:
        nxt: set[int] = set()
        for S in level:
            if n - _popcount(S) <= w + 1:
                return True
            q = _eliminated_neighbourhoods(adj, S, full)
            forced = _forced_vertex(q, w)
            if forced == -2:
                continue
            if forced >= 0:
                cand = [forced]
            else:
                cand = [v for v, nv in q.items() if _popcount(nv) <= w]
            for v in cand:
                T = S | (1 << v)
                if T not in seen:
                    seen.add(T)
                    nxt.add(T)
        level = nxt
    return False


def _eliminated_neighbourhoods(adj: list[int], S: int, full: int) -> dict[int, int]:
    """Neighbourhood of every remaining vertex in the graph with ``S`` eliminated."""
    comps: list[tuple[int, int]] = []
    left = S
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            new = adj[v] & S & ~comp
            comp |= new
            frontier |= new
        left &= ~comp
        border = 0
        for v in _bits_of(comp):
            border |= adj[v]
        comps.append((comp, border & ~S))
    out = {}
    for v in _bits_of(full & ~S):
        bit = 1 << v
        nv = adj[v] & ~S
        for _, border in comps:
            if border & bit:
                nv |= border
        out[v] = nv & ~bit
    return out


def _forced_vertex(q: dict[int, int], w: int) -> int:
    """A vertex that can safely be eliminated next, ``-1`` if none, ``-2`` if ``tw > w`` here."""
    for v, nv in q.items():
        missing = _missing_partner(q, nv)
        if missing == 0:
            if _popcount(nv) > w:
                return -2
            return v
        if missing == 1 and _popcount(nv) <= w:
            return v
    return -1


def _missing_partner(q: dict[int, int], nv: int) -> int:
    """0 if ``nv`` is a clique, 1 if it is a clique after removing one vertex, else 2."""
    bad = [a for a in _bits_of(nv) if (nv & ~(1 << a)) & ~q[a]]
    if not bad:
        return 0
    for x in bad:
        rest = nv & ~(1 << x)
        if all((rest & ~(1 << a)) & ~q[a] == 0 for a in _bits_of(rest)):
            return 1
    return 2


# ---------------------------------------------------------------------------
# Bramble order (minimum hitting set)
# ---------------------------------------------------------------------------


def bramble_order(g: Graph, b: Bramble, max_universe: int = 64, max_sets: int = 512) -> int:
    """Size of a smallest set of vertices meeting every set of the bramble."""
    universe = frozenset().union(*b.sets) if b.sets else frozenset()
    if len(universe) > max_universe or len(b.sets) > max_sets:
        raise BudgetExceeded(
            f"bramble with {len(universe)} vertices and {len(b.sets)} sets exceeds the budget"
        )
    return len(min_hitting_set(b.sets))


def min_hitting_set(sets: Sequence[frozenset[int]], node_budget: int = 5_000_000) -> frozenset[int]:
    """Exact minimum hitting set by branch and bound.

    Branches on the elements of an unhit set with the fewest candidates, with
    the greedy solution as the initial incumbent and a coverage bound for
    pruning. Earlier siblings are excluded from later branches.
    """
    if not sets:
        return frozenset()
    if any(not s for s in sets):
        raise ValueError("an empty set cannot be hit")
    # a superset is hit whenever one of its subsets is
    unique = sorted(set(sets), key=len)
    kept: list[frozenset[int]] = []
    for s in unique:
        if not any(t <= s for t in kept):
            kept.append(s)
    m = len(kept)
    elems = sorted(frozenset().union(*kept))
    cover = {v: 0 for v in elems}
    members = []
    for i, s in enumerate(kept):
        for v in s:
            cover[v] |= 1 << i
        members.append(sorted(s))

    incumbent = _greedy(kept, cover)
    best = [len(incumbent), incumbent]
    nodes = [0]

    def lower_bound(unhit: int, allowed: list[int]) -> int:
        top = max((_popcount(cover[v] & unhit) for v in allowed), default=0)
        if top == 0:
            return 1 << 30
        return -(-_popcount(unhit) // top)

    def search(unhit: int, chosen: list[int], banned: frozenset[int]) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetExceeded("hitting-set search exceeded its node budget")
        if unhit == 0:
            if len(chosen) < best[0]:
                best[0] = len(chosen)
                best[1] = frozenset(chosen)
            return
        allowed = [v for v in elems if v not in banned and cover[v] & unhit]
        if len(chosen) + lower_bound(unhit, allowed) >= best[0]:
            return
        cands = None
        for i in _bits_of(unhit):
            c = [v for v in members[i] if v not in banned]
            if not c:
                return
            if cands is None or len(c) < len(cands):
                cands = c
        cands.sort(key=lambda v: -_popcount(cover[v] & unhit))
        excluded = set(banned)
        for v in cands:
            chosen.append(v)
            search(unhit & ~cover[v], chosen, frozenset(excluded))
            chosen.pop()
            excluded.add(v)

    full = (1 << m) - 1
    search(full, [], frozenset())
    return best[1]


def _greedy(sets: Sequence[frozenset[int]], cover: dict[int, int]) -> frozenset[int]:
    unhit = (1 << len(sets)) - 1
    chosen = []
    while unhit:
        v = max(cover, key=lambda x: (_popcount(cover[x] & unhit), -x))
        chosen.append(v)
        unhit &= ~cover[v]
    return frozenset(chosen)
