from __future__ import annotations

from itertools import product

import pytest
from builders import complete, cycle, drawings, edgeless, graph
from hypothesis import given, settings
from hypothesis import strategies as st

from convexwidth.decomp import TreeDecomposition, run_pipeline
from convexwidth.drawing import ConvexDrawing, compute_crossings
from convexwidth.errors import PreconditionError, TooLarge
from convexwidth.families import gen_Fk, gen_stacked_prism
from convexwidth.separate import (
    Separation,
    brute_force_min_balanced_separation,
    extract_balanced_separation,
    separate,
    separation_bound,
    verify_separation,
)


def test_bound() -> None:
    assert [separation_bound(k) for k in range(5)] == [4, 4, 6, 6, 8]


def test_path_with_duplicated_leaves() -> None:
    p3 = graph(3, [(0, 1), (1, 2)])
    td = TreeDecomposition.from_sets([[0, 1], [1, 2], [0, 1], [1, 2]], [(0, 1), (0, 2), (1, 3)])
    sep, edge = extract_balanced_separation(td, p3)
    assert edge == (0, 1)
    assert sep == Separation(frozenset({0, 1}), frozenset({1, 2}))
    assert sep.order == 1 and sep.is_balanced(3)


def test_preconditions() -> None:
    p3 = graph(3, [(0, 1), (1, 2)])
    once = TreeDecomposition.from_sets([[0, 1], [1, 2]], [(0, 1)])
    with pytest.raises(PreconditionError):
        extract_balanced_separation(once, p3)
    star = TreeDecomposition.from_sets([[0, 1, 2]] * 5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    with pytest.raises(PreconditionError):
        extract_balanced_separation(star, p3)


def test_order_is_the_bag_intersection() -> None:
    d = gen_Fk(2)
    td = run_pipeline(d, 3).decomposition
    sep, (a, b) = extract_balanced_separation(td, d.graph)
    assert sep.separator == set(td.bags[a]) & set(td.bags[b])


@pytest.mark.parametrize(
    ("d", "k"),
    [(cycle(5), 0), (cycle(6), 0), (complete(4), 1), (gen_Fk(2), 3), (gen_stacked_prism(8, 3), 4)],
)
def test_separate_meets_bound(d: ConvexDrawing, k: int) -> None:
    sep = separate(d, k)
    assert verify_separation(sep, d.graph) == []
    assert 1 <= sep.order <= separation_bound(k)


def test_verifier_catches_problems() -> None:
    p3 = graph(3, [(0, 1), (1, 2)])
    bad = Separation(frozenset({0}), frozenset({1, 2}))
    assert any("joins" in p for p in verify_separation(bad, p3))
    uncovered = Separation(frozenset({0}), frozenset({2}))
    assert any("cover" in p for p in verify_separation(uncovered, p3))
    lopsided = Separation(frozenset(range(6)), frozenset({5}))
    assert any("unbalanced" in p for p in verify_separation(lopsided, edgeless(6).graph))


def test_bruteforce_oracle_values() -> None:
    assert brute_force_min_balanced_separation(cycle(6).graph) == 2
    assert brute_force_min_balanced_separation(complete(4).graph) == 2
    assert brute_force_min_balanced_separation(edgeless(6).graph) == 0
    with pytest.raises(TooLarge):
        brute_force_min_balanced_separation(cycle(17).graph)


def _naive_min_separation(g) -> int:
    """Enumerate every (A, B) assignment: each vertex is in A only, B only, or both."""
    best = g.n
    for labels in product((0, 1, 2), repeat=g.n):
        a = {v for v in range(g.n) if labels[v] != 1}
        b = {v for v in range(g.n) if labels[v] != 0}
        sep = Separation(frozenset(a), frozenset(b))
        if not verify_separation(sep, g):
            best = min(best, sep.order)
    return best


@settings(max_examples=40, deadline=None)
@given(drawings(min_n=3, max_n=7))
def test_bruteforce_matches_exhaustive_assignment(d: ConvexDrawing) -> None:
    assert brute_force_min_balanced_separation(d.graph) == _naive_min_separation(d.graph)


@settings(max_examples=80, deadline=None)
@given(drawings(max_n=12))
def test_separation_sandwich(d: ConvexDrawing) -> None:
    k = compute_crossings(d).min_k_value
    sep = separate(d, k)
    assert verify_separation(sep, d.graph) == []
    assert brute_force_min_balanced_separation(d.graph) <= sep.order <= separation_bound(k)


@settings(max_examples=30, deadline=None)
@given(drawings(min_n=4, max_n=9), st.integers(0, 10**6))
def test_subgraphs_stay_within_bound(d: ConvexDrawing, pick: int) -> None:
    k = compute_crossings(d).min_k_value
    if not d.edges:
        return
    drop = sorted(d.edges)[pick % len(d.edges)]
    sub = ConvexDrawing(d.n, d.edges - {drop}, d.order)
    sep = separate(sub, k)
    assert verify_separation(sep, sub.graph) == []
    assert sep.order <= separation_bound(k)
