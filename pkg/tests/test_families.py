from __future__ import annotations

import networkx as nx
import pytest
from builders import to_nx
from hypothesis import given, settings
from hypothesis import strategies as st

from convexwidth.drawing import Graph, compute_crossings, is_outer_k_planar, is_outer_min_k_planar
from convexwidth.families import (
    Bramble,
    contract_fk_to_gk,
    fk_edge_types,
    fk_layout,
    fk_path_length,
    fk_vertex_count,
    gen_Fk,
    gen_Gk,
    gen_Gk_bramble,
    gen_grid,
    gen_stacked_prism,
    prism_row_edges,
    random_outer_min_k_planar,
    verify_bramble,
)


def test_grid_2x2_is_c4() -> None:
    assert nx.is_isomorphic(to_nx(gen_grid(2, 2)), nx.cycle_graph(4))


@pytest.mark.parametrize(("m", "n"), [(1, 1), (3, 4), (5, 2)])
def test_grid_matches_networkx(m: int, n: int) -> None:
    assert nx.is_isomorphic(to_nx(gen_grid(m, n)), nx.grid_2d_graph(m, n))


def test_g1_counts() -> None:
    g = gen_Gk(1)
    assert (g.n, len(g.edges)) == (8, 11)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gk_counts(k: int) -> None:
    g = gen_Gk(k)
    rows = 2 * k * (k + 1)
    q_edges = 2 * (2 * k) * (2 * k - 1)
    r_edges = rows * (k - 1) + (rows - 1) * k
    assert g.n == 4 * k * k + rows * k
    assert len(g.edges) == q_edges + r_edges + 2 * k * (k + 1)


def test_fk_path_lengths() -> None:
    assert [fk_path_length(3, i) for i in range(1, 7)] == [8, 4, 0, 0, 4, 8]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fk_vertex_count_and_kvalue(k: int) -> None:
    d = gen_Fk(k)
    assert d.n == fk_vertex_count(k)
    assert compute_crossings(d).k_value <= 2 * k - 1


def test_f1() -> None:
    d = gen_Fk(1)
    assert d.n == 14
    assert is_outer_k_planar(d, 1)


def test_fk_order_starts_at_v_k1_and_is_mirror_symmetric() -> None:
    k = 3
    lay = fk_layout(k)
    order = lay.drawing.order
    assert lay.labels[order[0]] == ("v", k, 1)
    assert lay.labels[order[-1]] == ("v", k + 1, 1)
    r_block = 2 * k * (k + 1) * k
    upper = (len(order) - r_block) // 2
    assert all(lay.labels[x][0] == "u" for x in order[upper : upper + r_block])
    for p in range(upper):
        kind, i, j = lay.labels[order[p]]
        mk, mi, mj = lay.labels[order[-1 - p]]
        assert (mk, mi) == (kind, 2 * k - i + 1)
        assert mj == (k - j + 2 if kind == "w" else j)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fk_per_type_caps(k: int) -> None:
    lay = fk_layout(k)
    counts = compute_crossings(lay.drawing).per_edge
    types = fk_edge_types(lay)
    assert set(types) == set(lay.drawing.edges)
    for e, (t, cap) in types.items():
        assert counts[e] <= cap, (t, e)
    present = {t for t, _ in types.values()}
    assert present == (set(range(1, 12)) if k >= 2 else {2, 3, 4, 5, 8, 9, 11})


@pytest.mark.parametrize("k", [2, 3])
def test_fk_exact_counts_for_fixed_types(k: int) -> None:
    lay = fk_layout(k)
    counts = compute_crossings(lay.drawing).per_edge
    for e, (t, _) in fk_edge_types(lay).items():
        if t in (1, 10):
            assert counts[e] == 0
        if t == 5:
            i = min(lay.labels[e[0]][1], lay.labels[e[1]][1])
            if i <= k:
                assert counts[e] == 2 * (i - 1)


@pytest.mark.parametrize("k", [1, 2])
def test_fk_contracts_to_gk(k: int) -> None:
    c = contract_fk_to_gk(fk_layout(k))
    gk = gen_Gk(k)
    assert c == gk
    assert nx.is_isomorphic(to_nx(c), to_nx(gk))


def test_prism_y_m1_is_a_cycle() -> None:
    d = gen_stacked_prism(5, 1)
    assert nx.is_isomorphic(to_nx(d.graph), nx.cycle_graph(5))
    assert compute_crossings(d).k_value == 0


@pytest.mark.parametrize(("m", "n"), [(4, 2), (6, 3), (8, 3), (5, 4)])
def test_prism_counts(m: int, n: int) -> None:
    d = gen_stacked_prism(m, n)
    r = compute_crossings(d)
    rows = prism_row_edges(m, n)
    assert len(d.edges) == m * (n - 1) + m * n
    for e, c in r.per_edge.items():
        assert c == (0 if e in rows else 2 * n - 2)
    assert r.k_value == r.min_k_value == 2 * n - 2


def test_y42_is_min_2_planar() -> None:
    d = gen_stacked_prism(4, 2)
    assert compute_crossings(d).min_k_value == 2
    assert is_outer_min_k_planar(d, 2)


def test_bramble_sizes_k1() -> None:
    b = gen_Gk_bramble(1)
    assert len(b.sets) == 12
    assert sum(1 for s in b.sets if s & {0, 1, 2, 3}) == 8


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gk_bramble_is_valid(k: int) -> None:
    assert verify_bramble(gen_Gk(k), gen_Gk_bramble(k)) is None


def test_verify_bramble_small_cases() -> None:
    edge = Graph.from_edges(2, [(0, 1)])
    assert verify_bramble(edge, Bramble((frozenset({0}), frozenset({1})))) is None
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    v = verify_bramble(p3, Bramble((frozenset({0}), frozenset({2}))))
    assert v is not None and v.kind == "not-touching"
    v = verify_bramble(p3, Bramble((frozenset({0, 2}),)))
    assert v is not None and v.kind == "disconnected"
    v = verify_bramble(p3, Bramble((frozenset(),)))
    assert v is not None and v.kind == "empty"


def test_random_k0_is_crossing_free() -> None:
    for seed in range(5):
        assert compute_crossings(random_outer_min_k_planar(15, 0, seed)).min_k_value == 0


def test_random_example() -> None:
    d = random_outer_min_k_planar(12, 2, 7)
    assert is_outer_min_k_planar(d, 2)
    assert d.is_hull_complete()


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 40), st.integers(0, 6), st.integers(0, 2**32))
def test_random_generator_contract(n: int, k: int, seed: int) -> None:
    d = random_outer_min_k_planar(n, k, seed)
    assert d.n == n
    assert is_outer_min_k_planar(d, k)
    assert random_outer_min_k_planar(n, k, seed) == d
