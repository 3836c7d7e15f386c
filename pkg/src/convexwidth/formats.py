"""Text formats: ``.cvx`` drawings, PACE ``.gr`` graphs and ``.td`` decompositions,
``.sep`` separations, and the ``pl`` planarization dump.

All formats use 1-based vertex ids on disk and 0-based ids in memory. Lines
starting with ``c`` are comments everywhere.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable, Iterator

from .decomp import TreeDecomposition
from .drawing import ConvexDrawing, Graph
from .errors import DrawingError, ParseError
from .planarize import CrossingGraph, SubdividedGraph
from .separate import Separation


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield no, tokens


def _ints(tokens: list[str], no: int, path: str | None) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no, path) from None


def _vertex(x: int, n: int, no: int, path: str | None) -> int:
    if not 1 <= x <= n:
        raise ParseError(f"vertex {x} out of range 1..{n}", no, path)
    return x - 1


def _header(lines: list[tuple[int, list[str]]], tag: str, path: str | None, arity: int) -> list[int]:
    if not lines:
        raise ParseError("empty input", None, path)
    no, tokens = lines[0]
    if tokens[:2] != tag.split() or len(tokens) != 2 + arity:
        raise ParseError(f"expected header '{tag}' with {arity} integers", no, path)
    values = _ints(tokens[2:], no, path)
    if any(v < 0 for v in values):
        raise ParseError("header values must be non-negative", no, path)
    return values


def _edge_lines(
    body: Iterable[tuple[int, list[str]]], n: int, m: int, path: str | None, header_no: int
) -> list[tuple[int, int]]:
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, tokens in body:
        if tokens[0] != "e" or len(tokens) != 3:
            raise ParseError(f"expected 'e u v', got {' '.join(tokens)!r}", no, path)
        u, v = (_vertex(x, n, no, path) for x in _ints(tokens[1:], no, path))
        if u == v:
            raise ParseError(f"self-loop at vertex {u + 1}", no, path)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u + 1} {v + 1}", no, path)
        seen.add(key)
        edges.append(key)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", header_no, path)
    return edges


# ---------------------------------------------------------------------------
# .cvx
# ---------------------------------------------------------------------------


def parse_cvx(text: str, path: str | None = None) -> ConvexDrawing:
    lines = list(_lines(text))
    n, m = _header(lines, "p cvx", path, 2)
    body = lines[1:]
    order = None
    if body and body[0][1][0] == "o":
        no, tokens = body[0]
        perm = [_vertex(x, n, no, path) for x in _ints(tokens[1:], no, path)]
        if sorted(perm) != list(range(n)):
            raise ParseError(f"order line is not a permutation of 1..{n}", no, path)
        order = perm
        body = body[1:]
    edges = _edge_lines(body, n, m, path, lines[0][0])
    try:
        return ConvexDrawing.from_edges(n, edges, order)
    except DrawingError as exc:
        raise ParseError(str(exc), None, path) from exc


def format_cvx(d: ConvexDrawing) -> str:
    out = [f"p cvx {d.n} {len(d.edges)}"]
    if tuple(d.order) != tuple(range(d.n)):
        out.append("o " + " ".join(str(v + 1) for v in d.order))
    out += [f"e {u + 1} {v + 1}" for u, v in sorted(d.edges)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .gr
# ---------------------------------------------------------------------------


def parse_gr(text: str, path: str | None = None) -> Graph:
    lines = list(_lines(text))
    n, m = _header(lines, "p tw", path, 2)
    # PACE omits the "e" prefix; accept both spellings
    body = [(no, t if t[0] == "e" else ["e", *t]) for no, t in lines[1:]]
    return Graph.from_edges(n, _edge_lines(body, n, m, path, lines[0][0]))


def format_gr(g: Graph) -> str:
    out = [f"p tw {g.n} {len(g.edges)}"]
    out += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(out) + "\n"


def parse_graph(text: str, path: str | None = None) -> Graph:
    """A ``.cvx`` or ``.gr`` file, detected from its header."""
    for _, tokens in _lines(text):
        if tokens[:2] == ["p", "cvx"]:
            return parse_cvx(text, path).graph
        return parse_gr(text, path)
    raise ParseError("empty input", None, path)


# ---------------------------------------------------------------------------
# .td
# ---------------------------------------------------------------------------


def parse_td(text: str, path: str | None = None) -> tuple[TreeDecomposition, int]:
    """Returns the decomposition and the vertex count from the header."""
    lines = list(_lines(text))
    nb, max_size, n = _header(lines, "s td", path, 3)
    bags: list[list[int] | None] = [None] * nb
    tree: list[tuple[int, int]] = []
    for no, tokens in lines[1:]:
        if tokens[0] == "b":
            vals = _ints(tokens[1:], no, path)
            if not vals:
                raise ParseError("bag line without an id", no, path)
            bid = vals[0]
            if not 1 <= bid <= nb:
                raise ParseError(f"bag id {bid} out of range 1..{nb}", no, path)
            if bags[bid - 1] is not None:
                raise ParseError(f"bag {bid} defined twice", no, path)
            members = [_vertex(x, n, no, path) for x in vals[1:]]
            if len(set(members)) != len(members):
                raise ParseError(f"bag {bid} repeats a vertex", no, path)
            bags[bid - 1] = members
        else:
            if len(tokens) != 2:
                raise ParseError(f"expected a tree edge 'i j', got {' '.join(tokens)!r}", no, path)
            a, b = _ints(tokens, no, path)
            if not (1 <= a <= nb and 1 <= b <= nb):
                raise ParseError(f"tree edge {a} {b} refers to a missing bag", no, path)
            tree.append((a - 1, b - 1))
    missing = [i + 1 for i, b in enumerate(bags) if b is None]
    if missing:
        raise ParseError(f"bag {missing[0]} is never defined", lines[0][0], path)
    largest = max((len(b) for b in bags if b is not None), default=0)
    if largest != max_size:
        raise ParseError(f"header max bag size {max_size} but largest bag has {largest}", lines[0][0], path)
    return TreeDecomposition.from_sets([b for b in bags if b is not None], tree), n


def format_td(td: TreeDecomposition, n: int) -> str:
    largest = max((len(b) for b in td.bags), default=0)
    out = [f"s td {td.num_nodes} {largest} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        out.append(" ".join(["b", str(i), *(str(v + 1) for v in bag)]))
    out += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .sep
# ---------------------------------------------------------------------------


def parse_sep(text: str, path: str | None = None) -> tuple[Separation, int]:
    lines = list(_lines(text))
    order, n = _header(lines, "s sep", path, 2)
    parts: dict[str, list[int]] = {}
    for no, tokens in lines[1:]:
        tag = tokens[0]
        if tag not in ("S", "A", "B"):
            raise ParseError(f"expected an S, A or B line, got {tag!r}", no, path)
        if tag in parts:
            raise ParseError(f"{tag} line given twice", no, path)
        parts[tag] = [_vertex(x, n, no, path) for x in _ints(tokens[1:], no, path)]
    for tag in ("S", "A", "B"):
        if tag not in parts:
            raise ParseError(f"missing {tag} line", None, path)
    s, a, b = (frozenset(parts[t]) for t in ("S", "A", "B"))
    if len(s) != order:
        raise ParseError(f"header order {order} but S has {len(s)} vertices", lines[0][0], path)
    if (a & b) or (a & s) or (b & s):
        raise ParseError("S, A and B must be disjoint", None, path)
    return Separation(A=a | s, B=b | s), n


def format_sep(sep: Separation, n: int) -> str:
    def row(tag: str, vs: Iterable[int]) -> str:
        return " ".join([tag, *(str(v + 1) for v in sorted(vs))])

    return "\n".join(
        [
            f"s sep {sep.order} {n}",
            row("S", sep.separator),
            row("A", sep.A - sep.B),
            row("B", sep.B - sep.A),
        ]
    ) + "\n"


# ---------------------------------------------------------------------------
# Planarization dump
# ---------------------------------------------------------------------------


def format_planarization(gc: CrossingGraph, gs: SubdividedGraph) -> str:
    """Annotated vertex and edge lists of both planarizations (0-based, debug only).

    Each section starts with ``pl <name> <#vertices> <#edges>``. Vertex lines
    are ``v <id> orig <drawing vertex>`` or ``v <id> cross <e> <f>`` with the
    two drawing edges written ``u-v``; edge lines are ``e <a> <b> on <u-v>`` or
    ``e <a> <b> aux``.
    """

    def tag(e: tuple[int, int]) -> str:
        return f"{e[0]}-{e[1]}"

    out: list[str] = []
    for name, g in (("GC", gc), ("GS", gs)):
        edges = g.edges
        out.append(f"pl {name} {g.num_vertices} {len(edges)}")
        for v in range(g.num_vertices):
            if g.is_outer(v):
                out.append(f"v {v} orig {v}")
            else:
                e, f = g.lies_on[v]
                out.append(f"v {v} cross {tag(e)} {tag(f)}")
        aux = getattr(g, "auxiliary", frozenset())
        for a, b in edges:
            if (a, b) in aux:
                out.append(f"e {a} {b} aux")
            else:
                out.append(f"e {a} {b} on {tag(g.seg_lies_on[(a, b)])}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def read_text(path: str | os.PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from exc
    except UnicodeDecodeError:
        raise ParseError("file is not valid text", None, str(path)) from None


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory and rename into place."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
