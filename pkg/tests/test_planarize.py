from __future__ import annotations

from fractions import Fraction

import networkx as nx
import pytest
from builders import complete, cycle, drawings
from hypothesis import given, settings

from convexwidth.drawing import ConvexDrawing, compute_crossings, expand, hull_complete
from convexwidth.errors import PreconditionError
from convexwidth.planarize import (
    angle_less,
    build_crossing_graph,
    compute_faces,
    euler_characteristic,
    place_on_circle,
    planarize,
    subdivide,
)


def _embedding(g) -> nx.PlanarEmbedding:
    emb = nx.PlanarEmbedding()
    for v in range(g.num_vertices):
        emb.add_node(v)
    for v in range(g.num_vertices):
        rot = g.rotation[v]
        for i, w in enumerate(rot):
            if i == 0:
                emb.add_half_edge(v, w)
            else:
                emb.add_half_edge(v, w, ccw=rot[i - 1])
    return emb


def test_four_points_are_the_axis_points() -> None:
    pl = place_on_circle(4)
    assert set(pl.points) == {
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(-1), Fraction(0)),
        (Fraction(0), Fraction(-1)),
    }


@pytest.mark.parametrize("n", [3, 5, 7, 12, 40])
def test_points_on_circle_in_angular_order(n: int) -> None:
    pl = place_on_circle(n)
    assert len(set(pl.points)) == n
    for x, y in pl.points:
        assert x * x + y * y == 1
    for a, b in zip(pl.homogeneous, pl.homogeneous[1:]):
        assert angle_less(a, b)


def test_k4_crossing_graph() -> None:
    gc, gs = planarize(complete(4))
    assert (gc.num_vertices, gc.num_edges) == (5, 8)
    assert gc.lies_on[4] == ((0, 2), (1, 3))
    assert len(compute_faces(gc).faces) == 5
    assert (gs.num_vertices, gs.num_edges, len(gs.auxiliary)) == (6, 9, 1)
    faces = compute_faces(gs)
    assert faces.num_faces == 5
    assert len(faces.dual_edges) == 9


def test_cycle_crossing_graph_is_the_cycle() -> None:
    gc = build_crossing_graph(cycle(6))
    assert gc.num_vertices == 6
    assert sorted(gc.edges) == sorted(cycle(6).edges)
    assert all(len(ch) == 2 for ch in gc.edge_chains.values())
    faces = compute_faces(gc)
    assert faces.num_faces == 2
    assert len(faces.dual_edges) == 6
    assert all(set(e) == {0, 1} for e in faces.dual_edges)
    assert subdivide(gc).num_vertices == 6


def test_k5_pentagram() -> None:
    gc, gs = planarize(complete(5))
    assert gc.num_vertices == 10
    for e in [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]:
        assert len(gc.edge_chains[e]) == 4
    assert (gs.num_vertices, len(gs.auxiliary)) == (15, 5)
    assert euler_characteristic(gs, compute_faces(gs)) == 2


def test_k6_needs_a_retry_and_still_resolves() -> None:
    # the regular hexagon has three concurrent long diagonals
    gc = build_crossing_graph(complete(6))
    assert gc.num_vertices - 6 == len(compute_crossings(complete(6)).pairs)


def test_faces_reject_disconnected_input() -> None:
    d = ConvexDrawing.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        compute_faces(build_crossing_graph(d))


def test_inner_vertices_alternate_edges() -> None:
    gc, _ = planarize(complete(6))
    for v, (e, f) in gc.lies_on.items():
        rot = gc.rotation[v]
        assert len(rot) == 4
        on = [gc.seg_lies_on[(min(v, w), max(v, w))] for w in rot]
        assert on[0] == on[2] and on[1] == on[3] and {on[0], on[1]} == {e, f}


@settings(max_examples=60, deadline=None)
@given(drawings(max_n=10))
def test_planarization_invariants(d: ConvexDrawing) -> None:
    exp = expand(hull_complete(d)).expanded
    counts = compute_crossings(exp).per_edge
    gc, gs = planarize(exp)
    for e, chain in gc.edge_chains.items():
        assert len(chain) == 2 + counts[e]
    fc, fs = compute_faces(gc), compute_faces(gs)
    assert euler_characteristic(gc, fc) == 2
    assert euler_characteristic(gs, fs) == 2
    assert fc.num_faces == fs.num_faces
    outer_c = {v for v in fc.face_vertices(fc.outer_face)}
    outer_s = {v for v in fs.face_vertices(fs.outer_face)}
    assert outer_c == outer_s == set(range(exp.n))
    assert all(len(r) == 3 for r in gs.rotation[gs.num_outer:])
    for g in (gc, gs):
        _embedding(g).check_structure()
