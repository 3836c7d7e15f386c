from __future__ import annotations

import pytest
from builders import complete, cycle, drawings, edgeless, graph
from hypothesis import given, settings

from convexwidth.decomp import (
    TreeDecomposition,
    contract_bags,
    decompose,
    depth_bound,
    orient_edges,
    run_pipeline,
    single_bag,
    validate_td,
    width_bound,
)
from convexwidth.drawing import ConvexDrawing, compute_crossings, expand
from convexwidth.errors import NotMinKPlanar
from convexwidth.families import gen_Fk, gen_stacked_prism
from convexwidth.oracles import exact_treewidth


def test_bounds() -> None:
    assert [width_bound(k) for k in range(6)] == [4, 4, 7, 7, 10, 10]
    assert [depth_bound(k) for k in range(6)] == [1, 1, 2, 2, 3, 3]


def test_validator_accepts_single_bag() -> None:
    g = complete(5).graph
    td = single_bag(5)
    assert validate_td(td, g) == []
    assert td.width == 4


def test_validator_reports_uncovered_edges() -> None:
    tri = graph(3, [(0, 1), (1, 2), (0, 2)])
    td = TreeDecomposition.from_sets([[0, 1], [2]], [(0, 1)])
    problems = validate_td(td, tri)
    assert "edge (1, 2) is in no bag" in problems
    assert "edge (0, 2) is in no bag" in problems
    assert len(problems) == 2


def test_validator_reports_broken_subtree_and_tree() -> None:
    p3 = graph(3, [(0, 1), (1, 2)])
    td = TreeDecomposition.from_sets([[0, 1], [1, 2], [0]], [(0, 1), (1, 2)])
    assert any("vertex 0" in p for p in validate_td(td, p3))
    cyclic = TreeDecomposition.from_sets([[0, 1], [1, 2], [1]], [(0, 1), (1, 2), (0, 2)])
    assert any("expected 2" in p for p in validate_td(cyclic, p3))


def test_cycle_pipeline() -> None:
    r = run_pipeline(cycle(6), 0)
    assert r.faces.num_faces == 2
    assert r.tree_pair.max_depth == 1
    assert len(r.tree_pair.primal_edges) == 5
    assert validate_td(r.decomposition, cycle(6).graph) == []
    assert r.decomposition.width <= 2


def test_k4_pipeline() -> None:
    r = run_pipeline(complete(4), 1)
    pair = r.tree_pair
    assert set(pair.dual_depth.values()) == {0, 1}
    assert r.subdivided.auxiliary <= pair.primal_edges
    td = r.decomposition
    assert validate_td(td, complete(4).graph) == []
    assert 3 <= td.width <= 4


def test_orientation_of_k4() -> None:
    orient = orient_edges(complete(4))
    indeg = [0] * 4
    for _, head in orient.dir.values():
        indeg[head] += 1
    assert max(indeg) <= 2
    c5 = orient_edges(cycle(5))
    assert sorted(h for _, h in c5.dir.values()) == list(range(5))


def test_expanded_k5_has_outgoing_hull_edges() -> None:
    ex = expand(complete(5)).expanded
    orient = orient_edges(ex)
    tails = {orient.dir[e][0] for e in ex.hull_edges()}
    assert tails == set(range(ex.n))


def test_k5_width_between_treewidth_and_bound() -> None:
    td = decompose(complete(5), 2)
    assert validate_td(td, complete(5).graph) == []
    assert 4 <= td.width <= 7


def test_fk2_width_between_lower_bound_and_bound() -> None:
    d = gen_Fk(2)
    r = run_pipeline(d, 3)
    assert r.tree_pair.max_depth <= 2
    assert validate_td(r.decomposition, d.graph) == []
    assert validate_td(r.expanded_decomposition, r.expansion.expanded.graph) == []
    assert 5 <= r.decomposition.width <= 7
    assert r.expanded_decomposition.width <= 7


def test_prism_width() -> None:
    d = gen_stacked_prism(8, 3)
    assert decompose(d, 4).width <= 10


def test_contract_identity() -> None:
    td = TreeDecomposition.from_sets([[0, 1], [1, 2]], [(0, 1)])
    assert contract_bags(td, (0, 1, 2)) == td


def test_degenerate_inputs_get_one_bag() -> None:
    for n in (0, 1, 2):
        r = run_pipeline(edgeless(n), 0)
        assert r.trivial and r.decomposition == single_bag(n)
    one_edge = ConvexDrawing.from_edges(2, [(0, 1)])
    assert validate_td(decompose(one_edge, 0), one_edge.graph) == []


def test_rejects_drawings_that_are_not_min_k_planar() -> None:
    with pytest.raises(NotMinKPlanar) as info:
        decompose(gen_stacked_prism(6, 3), 3)
    assert min(info.value.counts) == 4


def _check_pipeline(d: ConvexDrawing, k: int) -> None:
    r = run_pipeline(d, k)
    td = r.decomposition
    assert validate_td(td, d.graph) == []
    assert td.width <= width_bound(k)
    if r.trivial:
        return
    pair, gs, faces = r.tree_pair, r.subdivided, r.faces
    # complementary spanning trees
    assert len(pair.primal_edges) == gs.num_vertices - 1
    assert gs.num_edges - len(pair.primal_edges) == faces.num_faces - 1
    assert gs.auxiliary <= pair.primal_edges
    assert pair.max_depth <= depth_bound(k)
    h = depth_bound(k)
    exp_td = r.expanded_decomposition
    for v, bag in enumerate(exp_td.bags):
        assert len(bag) <= (3 + 2 * h if gs.is_outer(v) else 2 + 3 * h)
    for x, y in r.orientation.dir.values():
        assert {x, y} <= set(exp_td.bags[y])
    assert td.max_tree_degree <= 3
    occ = [0] * d.n
    for bag in td.bags:
        for v in bag:
            occ[v] += 1
    assert min(occ) >= 2


@settings(max_examples=80, deadline=None)
@given(drawings(max_n=11))
def test_pipeline_on_arbitrary_drawings(d: ConvexDrawing) -> None:
    _check_pipeline(d, compute_crossings(d).min_k_value)


@settings(max_examples=40, deadline=None)
@given(drawings(max_n=9))
def test_width_is_at_least_treewidth(d: ConvexDrawing) -> None:
    k = compute_crossings(d).min_k_value
    assert exact_treewidth(d.graph) <= decompose(d, k).width
