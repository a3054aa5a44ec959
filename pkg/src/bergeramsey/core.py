"""Graphs, hypergraphs and colorings over dense vertex labels ``0..n-1``.

Vertex sets are Python ints used as bitmasks, so ``n`` is capped at 64 and
every set fits one 64-bit word when handed to the compiled kernels (vertex 63
lands on the sign bit; see :func:`as_int64`).
"""

from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

MAX_VERTICES = 64
MAX_POWERSET = 20
MAX_CANONICAL = 12


def vmask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def as_int64(masks: Iterable[int]) -> np.ndarray:
    """Pack non-negative masks below ``2**64`` into two's-complement int64."""
    return np.array([m - (1 << 64) if m >> 63 else m for m in masks], dtype=np.int64)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple labeled graph; ``edges`` is normalized to sorted ``(u, v)`` with ``u < v``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"graph order {self.n} outside 0..{MAX_VERTICES}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def adj(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return members(self.adj[v])

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, tuple(vmask(e) for e in self.edges), 2)

    def remove_vertex(self, v: int) -> tuple[Graph, tuple[int, ...]]:
        """Delete ``v``; returns the relabeled graph and the old label of each new vertex."""
        keep = tuple(u for u in range(self.n) if u != v)
        new = {old: i for i, old in enumerate(keep)}
        edges = tuple((new[a], new[b]) for a, b in self.edges if v not in (a, b))
        return Graph(self.n - 1, edges), keep


@dataclass(frozen=True)
class Hypergraph:
    """A set of distinct hyperedges (bitmasks) on ``n`` vertices.

    With ``r`` set, every edge has exactly ``r`` vertices.  The empty edge is
    only admitted in non-uniform hosts (the powerset host contains it).
    """

    n: int
    edges: tuple[int, ...]
    r: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"hypergraph order {self.n} outside 0..{MAX_VERTICES}")
        edges = tuple(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(set(edges)) != len(edges):
            raise ValueError("repeated hyperedge")
        full = (1 << self.n) - 1
        for e in edges:
            if e < 0 or e & ~full:
                raise ValueError(f"hyperedge {members(e)} leaves the vertex set 0..{self.n - 1}")
            if e == 0 and self.r is not None:
                raise ValueError("empty hyperedge in a uniform hypergraph")
            if self.r is not None and popcount(e) != self.r:
                raise ValueError(f"hyperedge {members(e)} does not have {self.r} vertices")

    def __len__(self) -> int:
        return len(self.edges)

    def sub(self, indices: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.n, tuple(self.edges[i] for i in indices), self.r)

    def index_of(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.edges)}


@dataclass(frozen=True)
class EdgeColoring:
    """Total map from edge index to a color in ``0..k-1``."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.k < 1:
            raise ValueError("a coloring needs at least one color")
        for i, c in enumerate(self.colors):
            if not 0 <= c < self.k:
                raise ValueError(f"edge {i} has color {c} outside 0..{self.k - 1}")

    def check_total(self, host: Union[Hypergraph, Graph]) -> None:
        if len(self.colors) != len(host.edges):
            raise ValueError(
                f"coloring covers {len(self.colors)} edges but the host has {len(host.edges)}"
            )

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for i, c in enumerate(self.colors):
            out[c].append(i)
        return out

    def used_colors(self) -> int:
        return len(set(self.colors))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    """All ``r``-subsets of ``0..n-1`` in increasing bitmask order."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if n > MAX_VERTICES:
        raise ValueError(f"n={n} exceeds {MAX_VERTICES}")
    edges = sorted(vmask(c) for c in itertools.combinations(range(n), r))
    return Hypergraph(n, tuple(edges), r)


def powerset_hypergraph(n: int) -> Hypergraph:
    if not 1 <= n <= MAX_POWERSET:
        raise ValueError(f"powerset host needs 1 <= n <= {MAX_POWERSET}, got {n}")
    return Hypergraph(n, tuple(range(1 << n)), None)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def matching_graph(t: int) -> Graph:
    return Graph(2 * t, tuple((2 * i, 2 * i + 1) for i in range(t)))


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    n: int
    edge_sizes: tuple[int, ...] = field(default=())

    def hex(self) -> str:
        return self.code.hex()


def _refine(n: int, edges: Sequence[int], colors: list[int]) -> list[int]:
    """Colour refinement; colour ids are ranks of invariant values, never of labels."""
    incident: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        for v in members(e):
            incident[v].append(e)
    while True:
        sig = []
        for v in range(n):
            around = sorted(
                (popcount(e), tuple(sorted(colors[w] for w in members(e) if w != v)))
                for e in incident[v]
            )
            sig.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _relabelled(edges: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sorted(vmask(pos[v] for v in members(e)) for e in edges))


def _search_min(n: int, edges: Sequence[int], colors: list[int], best: list) -> None:
    colors = _refine(n, edges, colors)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
    if target is None:
        order = sorted(range(n), key=lambda v: colors[v])
        code = _relabelled(edges, order)
        if best[0] is None or code < best[0]:
            best[0] = code
        return
    for v in cells[target]:
        # individualize v: it becomes the first vertex of its cell
        split = [2 * c + (0 if c < target or w == v else 1) for w, c in enumerate(colors)]
        _search_min(n, edges, split, best)


def canonical_code(obj: Union[Graph, Hypergraph]) -> CanonicalCode:
    """Isomorphism-invariant code: the lexicographically least relabelled edge list.

    Individualization-refinement search over the vertex orderings compatible
    with colour refinement; exact (equal codes iff isomorphic) for ``n <= 12``.
    """
    if isinstance(obj, Graph):
        n, edges = obj.n, [vmask(e) for e in obj.edges]
        kind = 0
    else:
        n, edges = obj.n, list(obj.edges)
        kind = 1
    if n > MAX_CANONICAL:
        raise ValueError(f"canonical forms are limited to n <= {MAX_CANONICAL}, got {n}")
    if n == 0:
        best = [tuple(sorted(edges))]
    else:
        best: list = [None]
        _search_min(n, edges, [0] * n, best)
    code = struct.pack(f">BBH{len(best[0])}Q", kind, n, len(best[0]), *best[0])
    return CanonicalCode(code, n, tuple(sorted(popcount(e) for e in edges)))
