from __future__ import annotations

import time

import networkx as nx
import pytest
from builders import complete, cycle, graph, naive_hitting_set, naive_treewidth
from hypothesis import given, settings
from hypothesis import strategies as st

from convexwidth.drawing import Graph
from convexwidth.errors import BudgetExceeded, TooLarge
from convexwidth.families import Bramble, gen_Fk, gen_Gk, gen_Gk_bramble, gen_grid
from convexwidth.oracles import bramble_order, exact_treewidth, min_hitting_set


def _from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges)


def test_trees_have_treewidth_one() -> None:
    for seed in range(5):
        assert exact_treewidth(_from_nx(nx.random_labeled_tree(12, seed=seed))) == 1


def test_small_known_values() -> None:
    assert exact_treewidth(complete(4).graph) == 3
    assert exact_treewidth(cycle(9).graph) == 2
    assert exact_treewidth(Graph.from_edges(5, [])) == 0
    assert exact_treewidth(gen_grid(4, 4)) == 4
    assert exact_treewidth(_from_nx(nx.petersen_graph())) == 4


def test_g1_treewidth() -> None:
    assert exact_treewidth(gen_Gk(1)) == 2


def test_f1_treewidth_lower_bound() -> None:
    assert exact_treewidth(gen_Fk(1).graph) >= 2


def test_treewidth_cap() -> None:
    with pytest.raises(TooLarge):
        exact_treewidth(cycle(23).graph)
    assert exact_treewidth(cycle(23).graph, cap=23) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.data())
def test_treewidth_matches_elimination_bruteforce(n: int, data) -> None:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = graph(n, edges)
    assert exact_treewidth(g) == naive_treewidth(g)


def test_hitting_set_trivial() -> None:
    assert bramble_order(graph(3, []), Bramble((frozenset({0, 1, 2}),))) == 1
    assert min_hitting_set([]) == frozenset()


@pytest.mark.parametrize(("k", "expected"), [(1, 3), (2, 6)])
def test_gk_bramble_order(k: int, expected: int) -> None:
    start = time.perf_counter()
    assert bramble_order(gen_Gk(k), gen_Gk_bramble(k)) == expected
    assert time.perf_counter() - start < 30


def test_bramble_budget() -> None:
    with pytest.raises(BudgetExceeded):
        bramble_order(gen_Gk(3), gen_Gk_bramble(3))
    b = gen_Gk_bramble(1)
    with pytest.raises(BudgetExceeded):
        bramble_order(gen_Gk(1), b, max_sets=5)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 9), min_size=1, max_size=4), min_size=1, max_size=12))
def test_hitting_set_matches_bruteforce(sets) -> None:
    hit = min_hitting_set(sets)
    assert all(hit & s for s in sets)
    assert len(hit) == naive_hitting_set(sets)
