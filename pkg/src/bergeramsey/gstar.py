"""Extension families of a graph and the shadow argument that lifts graph
Ramsey copies back to Berge copies in uniform hypergraphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .berge import BergeWitness
from .core import EdgeColoring, Graph, Hypergraph, canonical_code, complete_hypergraph, vmask


@dataclass(frozen=True)
class ExtensionSpec:
    """``G - v`` plus one new edge ``q r`` per former neighbour ``q`` of ``v``.

    ``pairs`` uses labels of ``base``; a label ``>= base.n`` is a fresh
    vertex.  ``labels[i]`` is the base (or fresh) label of vertex ``i`` of
    ``result``.
    """

    base: Graph
    v: int
    pairs: tuple[tuple[int, int], ...]
    result: Graph
    labels: tuple[int, ...]

    def index(self, label: int) -> int:
        return self.labels.index(label)

    @property
    def rebuilds_base(self) -> bool:
        """True when all new edges go to one fresh vertex, i.e. the result is ``G`` itself."""
        ends = {r for _, r in self.pairs}
        return len(ends) == 1 and next(iter(ends)) >= self.base.n


def _extensions(G: Graph, v: int) -> Iterable[ExtensionSpec]:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} not in graph of order {G.n}")
    nbrs = G.neighbors(v)
    if not nbrs:
        raise ValueError(f"vertex {v} is isolated")
    t = len(nbrs)
    old = [u for u in range(G.n) if u != v]
    old_edges = {e for e in G.edges if v not in e}
    fresh = [G.n + j for j in range(t)]
    options = []
    for q in nbrs:
        opts = [u for u in old if u != q and (min(q, u), max(q, u)) not in old_edges]
        options.append(opts + fresh)
    for choice in itertools.product(*options):
        # fresh vertices are interchangeable: only first-appearance order
        used_fresh = []
        for r in choice:
            if r >= G.n and r not in used_fresh:
                used_fresh.append(r)
        if used_fresh != fresh[: len(used_fresh)]:
            continue
        new_edges = {(min(q, r), max(q, r)) for q, r in zip(nbrs, choice)}
        if len(new_edges) != t:
            continue
        labels = tuple(old + used_fresh)
        pos = {lab: i for i, lab in enumerate(labels)}
        edges = tuple((pos[a], pos[b]) for a, b in sorted(old_edges | new_edges))
        yield ExtensionSpec(G, v, tuple(zip(nbrs, choice)), Graph(len(labels), edges), labels)


def gstar_family(G: Graph, v: int) -> list[ExtensionSpec]:
    """One extension per isomorphism class, in enumeration order.

    The class of ``G`` itself is represented by the spec that rebuilds it
    (all new edges to one fresh vertex), which is the one a lift over an
    empty ``X`` can use.
    """
    seen = set()
    out = []
    specs = sorted(_extensions(G, v), key=lambda s: not s.rebuilds_base)
    for spec in specs:
        code = canonical_code(spec.result).code
        if code not in seen:
            seen.add(code)
            out.append(spec)
    return out


def gstar_union(G: Graph) -> list[ExtensionSpec]:
    if not G.edges:
        raise ValueError("graph has no edges")
    seen = set()
    out = []
    for v in range(G.n):
        if G.degree(v) == 0:
            continue
        for spec in gstar_family(G, v):
            code = canonical_code(spec.result).code
            if code not in seen:
                seen.add(code)
                out.append(spec)
    return out


@dataclass(frozen=True)
class ShadowColoring:
    """Pair coloring on ``vertices``; pair ``{i, j}`` of local indices is
    ``host.edges`` entry with color ``coloring.colors`` at the same index."""

    vertices: tuple[int, ...]
    host: Hypergraph
    coloring: EdgeColoring


def shadow_coloring(H: Hypergraph, c: EdgeColoring, X: Iterable[int]) -> ShadowColoring:
    """Color each pair ``xy`` outside ``X`` by the color of ``X + {x, y}``."""
    c.check_total(H)
    X = tuple(sorted(set(X)))
    if H.r is None:
        raise ValueError("shadow colorings need a uniform host")
    if len(X) != H.r - 2:
        raise ValueError(f"|X| must be r-2 = {H.r - 2}, got {len(X)}")
    if any(not 0 <= x < H.n for x in X):
        raise ValueError("X leaves the host vertex set")
    index = H.index_of()
    xm = vmask(X)
    verts = tuple(u for u in range(H.n) if u not in X)
    pairs = complete_hypergraph(len(verts), 2) if len(verts) >= 2 else Hypergraph(len(verts), (), 2)
    colors = []
    for e in pairs.edges:
        i, j = (t for t in range(len(verts)) if (e >> t) & 1)
        h = index.get(xm | vmask((verts[i], verts[j])))
        if h is None:
            raise ValueError("host is not complete: a shadow pair has no hyperedge")
        colors.append(c.colors[h])
    return ShadowColoring(verts, pairs, EdgeColoring(c.k, tuple(colors)))


def shadow_lift(
    H: Hypergraph,
    c: EdgeColoring,
    X: Iterable[int],
    spec: ExtensionSpec,
    mono_copy: tuple[int, ...],
) -> BergeWitness:
    """Turn a monochromatic copy of ``spec.result`` in the shadow over ``X``
    into a Berge copy of ``spec.base`` in ``H`` of the same color.

    ``mono_copy[i]`` is the host vertex of result vertex ``i``.  The removed
    vertex ``v`` goes to the least vertex ``x`` of ``X``; the new edge ``q r``
    stands in for ``x q`` and is covered by ``X + {q, r}``.
    """
    c.check_total(H)
    X = tuple(sorted(set(X)))
    G = spec.base
    if len(mono_copy) != spec.result.n or len(set(mono_copy)) != len(mono_copy):
        raise ValueError("mono_copy must embed every result vertex injectively")
    if set(mono_copy) & set(X):
        raise ValueError("mono_copy meets X")
    index = H.index_of()
    xm = vmask(X)

    def cover(a: int, b: int) -> int:
        h = index.get(xm | vmask((a, b)))
        if h is None:
            raise ValueError(f"no hyperedge X + {{{a}, {b}}} in the host")
        return h

    shades = {c.colors[cover(mono_copy[a], mono_copy[b])] for a, b in spec.result.edges}
    if len(shades) != 1:
        raise ValueError("mono_copy is not monochromatic")

    end = dict(spec.pairs)
    phi: list[Optional[int]] = [None] * G.n
    for u in range(G.n):
        if u != spec.v:
            phi[u] = mono_copy[spec.index(u)]
    if X:
        phi[spec.v] = X[0]
    elif spec.rebuilds_base:
        phi[spec.v] = mono_copy[spec.index(spec.pairs[0][1])]
    else:
        raise ValueError("with X empty only the extension rebuilding G lifts")

    assignment = []
    for a, b in G.edges:
        if spec.v in (a, b):
            q = b if a == spec.v else a
            assignment.append(cover(mono_copy[spec.index(q)], mono_copy[spec.index(end[q])]))
        else:
            assignment.append(cover(phi[a], phi[b]))
    return BergeWitness(tuple(phi), tuple(assignment))


def acyclic_reducible(G: Graph) -> Optional[int]:
    """Least vertex whose removal leaves a forest."""
    for v in range(G.n):
        parent = list(range(G.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in G.edges:
            if v in (a, b):
                continue
            ra, rb = find(a), find(b)
            if ra == rb:
                break
            parent[ra] = rb
        else:
            return v
    return None
