"""Text and JSON formats for graphs, hypergraphs and colorings.

Text formats, one record per file::

    n=4 r=3          # hypergraph header; r is optional
    0 1 2            # one edge per line, ascending vertex indices
    -                # the empty edge (non-uniform hosts only)

    n=4              # graph header
    0 1              # one edge per line

    n=5 r=3 k=4      # coloring header; k is required, n and r optional
    0 1 2 : 0        # <edge> : <color>

``#`` starts a comment; blank lines are ignored.  JSON records carry a
``schema`` version and a ``type`` tag.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Union

from .core import EdgeColoring, Graph, Hypergraph, members, vmask

SCHEMA_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(line: str, no: int, allowed: set[str], required: set[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep or key not in allowed:
            raise ParseError(f"bad header field {tok!r}; expected {sorted(allowed)}", no)
        if key in out:
            raise ParseError(f"header field {key!r} repeated", no)
        try:
            out[key] = int(val)
        except ValueError:
            raise ParseError(f"header field {key!r} is not an integer: {val!r}", no) from None
    missing = required - out.keys()
    if missing:
        raise ParseError(f"header is missing {sorted(missing)}", no)
    return out


def _vertex_set(text: str, no: int, n: Optional[int]) -> int:
    if text == "-":
        return 0
    try:
        verts = [int(t) for t in text.split()]
    except ValueError:
        raise ParseError(f"edge {text!r} is not a list of integers", no) from None
    if len(set(verts)) != len(verts):
        raise ParseError(f"edge {text!r} repeats a vertex", no)
    if verts != sorted(verts):
        raise ParseError(f"edge {text!r} is not in ascending order", no)
    for v in verts:
        if v < 0 or (n is not None and v >= n):
            raise ParseError(f"vertex {v} outside 0..{'' if n is None else n - 1}", no)
    return vmask(verts)


def _edge_text(e: int) -> str:
    return " ".join(map(str, members(e))) if e else "-"


def parse_hypergraph(text: str) -> Hypergraph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    h = _header(head, no, {"n", "r"}, {"n"})
    n, r = h["n"], h.get("r")
    seen: dict[int, int] = {}
    edges = []
    for no, line in lines[1:]:
        e = _vertex_set(line, no, n)
        if e in seen:
            raise ParseError(f"duplicate edge (first on line {seen[e]})", no)
        if r is not None and len(members(e)) != r:
            raise ParseError(f"edge has {len(members(e))} vertices, header says r={r}", no)
        seen[e] = no
        edges.append(e)
    try:
        return Hypergraph(n, tuple(edges), r)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_hypergraph(H: Hypergraph) -> str:
    head = f"n={H.n}" + (f" r={H.r}" if H.r is not None else "")
    return "\n".join([head, *(_edge_text(e) for e in H.edges)]) + "\n"


def parse_graph(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    n = _header(head, no, {"n"}, {"n"})["n"]
    seen: dict[tuple[int, int], int] = {}
    for no, line in lines[1:]:
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"graph edge must be two vertices, got {line!r}", no)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"graph edge {line!r} is not two integers", no) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", no)
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(f"vertex {x} outside 0..{n - 1}", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge (first on line {seen[e]})", no)
        seen[e] = no
    return Graph(n, tuple(seen))


def serialize_graph(G: Graph) -> str:
    return "\n".join([f"n={G.n}", *(f"{u} {v}" for u, v in G.edges)]) + "\n"


def parse_coloring(text: str) -> tuple[Hypergraph, EdgeColoring]:
    """Parse a coloring file into its host and the coloring.

    Without ``n`` in the header the host order is one past the largest vertex.
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    h = _header(head, no, {"n", "r", "k"}, {"k"})
    n, r, k = h.get("n"), h.get("r"), h["k"]
    seen: dict[int, int] = {}
    edges, colors = [], []
    for no, line in lines[1:]:
        left, sep, right = line.rpartition(":")
        if not sep:
            raise ParseError(f"expected '<edge> : <color>', got {line!r}", no)
        e = _vertex_set(left.strip(), no, n)
        try:
            c = int(right)
        except ValueError:
            raise ParseError(f"color {right.strip()!r} is not an integer", no) from None
        if not 0 <= c < k:
            raise ParseError(f"color {c} outside 0..{k - 1}", no)
        if e in seen:
            raise ParseError(f"duplicate edge (first on line {seen[e]})", no)
        if r is not None and len(members(e)) != r:
            raise ParseError(f"edge has {len(members(e))} vertices, header says r={r}", no)
        seen[e] = no
        edges.append(e)
        colors.append(c)
    if n is None:
        n = max((max(members(e)) + 1 for e in edges if e), default=0)
    try:
        return Hypergraph(n, tuple(edges), r), EdgeColoring(k, tuple(colors))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_coloring(H: Hypergraph, c: EdgeColoring) -> str:
    c.check_total(H)
    head = f"n={H.n}" + (f" r={H.r}" if H.r is not None else "") + f" k={c.k}"
    body = (f"{_edge_text(e)} : {col}" for e, col in zip(H.edges, c.colors))
    return "\n".join([head, *body]) + "\n"


# ---------------------------------------------------------------------------
# JSON records


def to_record(obj: Union[Graph, Hypergraph], coloring: Optional[EdgeColoring] = None) -> dict:
    if isinstance(obj, Graph):
        return {"schema": SCHEMA_VERSION, "type": "graph", "n": obj.n, "edges": [list(e) for e in obj.edges]}
    rec: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "type": "hypergraph" if coloring is None else "coloring",
        "n": obj.n,
        "r": obj.r,
        "edges": [list(members(e)) for e in obj.edges],
    }
    if coloring is not None:
        coloring.check_total(obj)
        rec["k"] = coloring.k
        rec["colors"] = list(coloring.colors)
    return rec


def from_record(rec: dict):
    """Inverse of :func:`to_record`; colorings come back as ``(host, coloring)``."""
    try:
        kind = rec["type"]
        if kind == "graph":
            return Graph(rec["n"], tuple(tuple(e) for e in rec["edges"]))
        H = Hypergraph(rec["n"], tuple(vmask(e) for e in rec["edges"]), rec.get("r"))
        if kind == "hypergraph":
            return H
        if kind == "coloring":
            return H, EdgeColoring(rec["k"], tuple(rec["colors"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed record: {exc}") from None
    raise ParseError(f"unknown record type {kind!r}")


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True)
