"""Explicit colorings that avoid monochromatic Berge copies.

Each generator returns a :class:`ConstructionOutput`.  Large instances of
the two recursive families skip materializing edges and only report the
color count, which is computed by the same recursion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

from .core import EdgeColoring, Hypergraph, complete_graph, complete_hypergraph, powerset_hypergraph, vmask

RECURSIVE_TRIANGLE_MATERIALIZE = 24
TRIPARTITE_MATERIALIZE = 64

FIXED_NAMES = ("K4_3_2COL", "K5_3_4COL", "K6_3_5COL", "K7_3_6COL", "K5_3_BK4_2COL", "K6_GRAPH_K33")


class ConstructionError(ValueError):
    """A listed coloring failed to partition its host."""


@dataclass(frozen=True)
class ConstructionOutput:
    family_tag: str
    n: int
    declared_colors: int
    host: Optional[Hypergraph] = None
    coloring: Optional[EdgeColoring] = None
    # tripartite cover only: per color, three pairwise disjoint vertex masks
    parts: Optional[tuple[tuple[int, int, int], ...]] = None

    @property
    def materialized(self) -> bool:
        return self.coloring is not None


def _renumber(keys: list) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(k, len(ids)) for k in keys)


def pair_complement_coloring(n: int) -> ConstructionOutput:
    """Every class of ``2^[n]`` is a set together with its complement."""
    if not 2 <= n <= 20:
        raise ValueError(f"pair_complement_coloring needs 2 <= n <= 20, got {n}")
    host = powerset_hypergraph(n)
    full = (1 << n) - 1
    colors = _renumber([min(e, full ^ e) for e in host.edges])
    return ConstructionOutput("pair_complement", n, 2 ** (n - 1), host, EdgeColoring(2 ** (n - 1), colors))


def quad_class_coloring(n: int) -> ConstructionOutput:
    """Classes ``{A, L-A, [n]-A, A+last}`` for ``A`` inside ``L = [n-1]``; ``2^(n-2)`` colors."""
    if not 3 <= n <= 16:
        raise ValueError(f"quad_class_coloring needs 3 <= n <= 16, got {n}")
    host = powerset_hypergraph(n)
    low = (1 << (n - 1)) - 1
    colors = _renumber([min(e & low, low ^ (e & low)) for e in host.edges])
    k = 2 ** (n - 2)
    return ConstructionOutput("quad_class", n, k, host, EdgeColoring(k, colors))


def two_k2_colors(n: int) -> int:
    return 2**n - comb(n, 2) - n - 1


def two_k2_coloring(n: int) -> ConstructionOutput:
    """Sets of size >= 3 get their own color; a smaller set borrows the color of
    its lexicographically least 3-element superset."""
    if not 3 <= n <= 16:
        raise ValueError(f"two_k2_coloring needs 3 <= n <= 16, got {n}")
    host = powerset_hypergraph(n)
    big = [e for e in host.edges if bin(e).count("1") >= 3]
    color_of = {e: i for i, e in enumerate(big)}
    colors = []
    for e in host.edges:
        if e not in color_of:
            sup = e
            for v in range(n):
                if bin(sup).count("1") == 3:
                    break
                sup |= 1 << v
            colors.append(color_of[sup])
        else:
            colors.append(color_of[e])
    k = two_k2_colors(n)
    assert k == len(big)
    return ConstructionOutput("two_k2", n, k, host, EdgeColoring(k, tuple(colors)))


def round_robin(m: int) -> dict[tuple[int, int], int]:
    """Proper edge coloring of ``K_m`` on ``0..m-1``: ``m-1`` colors for even ``m``,
    ``m`` for odd ``m`` (circle method, with a bye vertex when ``m`` is odd)."""
    if m < 2:
        return {}
    size = m if m % 2 == 0 else m + 1
    rounds = size - 1
    out: dict[tuple[int, int], int] = {}
    for r in range(rounds):
        pairs = [(r, size - 1)]
        pairs += [((r + j) % rounds, (r - j) % rounds) for j in range(1, size // 2)]
        for a, b in pairs:
            if a < m and b < m:
                out[(min(a, b), max(a, b))] = r
    return out


def chromatic_index(m: int) -> int:
    if m < 2:
        return 0
    return m - 1 if m % 2 == 0 else m


def _halves(vertices: list[int]) -> tuple[list[int], list[int]]:
    a = (len(vertices) + 1) // 2
    return vertices[:a], vertices[a:]


def recursive_triangle_count(n: int) -> int:
    if n < 3:
        return 0
    a, b = (n + 1) // 2, n // 2
    return chromatic_index(a) + chromatic_index(b) + max(recursive_triangle_count(a), recursive_triangle_count(b))


def recursive_triangle_coloring(n: int) -> ConstructionOutput:
    """Split into halves A, B; triples with a pair in A are colored by a proper
    edge coloring of that pair (and symmetrically for B); triples inside a half
    are colored recursively, both halves drawing on one shared fresh pool."""
    if not 3 <= n <= 1024:
        raise ValueError(f"recursive_triangle_coloring needs 3 <= n <= 1024, got {n}")
    k = recursive_triangle_count(n)
    if n > RECURSIVE_TRIANGLE_MATERIALIZE:
        return ConstructionOutput("recursive_triangle", n, k)
    color: dict[int, int] = {}

    def paint(verts: list[int], offset: int) -> None:
        if len(verts) < 3:
            return
        A, B = _halves(verts)
        shift_b = offset + chromatic_index(len(A))
        for side, other, base in ((A, B, offset), (B, A, shift_b)):
            for (i, j), c in round_robin(len(side)).items():
                for z in other:
                    color[vmask((side[i], side[j], z))] = base + c
        nxt = shift_b + chromatic_index(len(B))
        paint(A, nxt)
        paint(B, nxt)

    paint(list(range(n)), 0)
    host = complete_hypergraph(n, 3)
    return ConstructionOutput("recursive_triangle", n, k, host, EdgeColoring(k, tuple(color[e] for e in host.edges)))


def bit_pair_color(i: int, j: int) -> int:
    """Index of the most significant bit where ``i`` and ``j`` differ."""
    return (i ^ j).bit_length() - 1


def _bits(m: int) -> int:
    return (m - 1).bit_length() if m > 1 else 0


def tripartite_count(n: int) -> int:
    if n < 3:
        return 0
    a, b = (n + 1) // 2, n // 2
    return _bits(a) + _bits(b) + max(tripartite_count(a), tripartite_count(b))


def tripartite_cover_coloring(n: int) -> ConstructionOutput:
    """Cover ``K_n^3`` by 3-partite classes.

    A triple with two vertices in half A takes the bit color of that pair
    inside A (parts: the A-vertices with that bit 0, with it 1, and B); the
    mirror rule handles two vertices in B.  Triples inside a half recurse with
    a shared fresh pool.  Each class carries its parts in ``parts``.
    """
    if not 4 <= n <= 256:
        raise ValueError(f"tripartite_cover_coloring needs 4 <= n <= 256, got {n}")
    k = tripartite_count(n)
    if n > TRIPARTITE_MATERIALIZE:
        return ConstructionOutput("tripartite_cover", n, k)
    color: dict[int, int] = {}
    parts = [[0, 0, 0] for _ in range(k)]

    def paint(verts: list[int], offset: int) -> None:
        if len(verts) < 3:
            return
        A, B = _halves(verts)
        base_b = offset + _bits(len(A))
        for side, other, base in ((A, B, offset), (B, A, base_b)):
            for i, j in itertools.combinations(range(len(side)), 2):
                bit = bit_pair_color(i, j)
                c = base + bit
                for z in other:
                    color[vmask((side[i], side[j], z))] = c
            other_mask = vmask(other)
            for bit in range(_bits(len(side))):
                c = base + bit
                parts[c][0] |= vmask(v for t, v in enumerate(side) if not (t >> bit) & 1)
                parts[c][1] |= vmask(v for t, v in enumerate(side) if (t >> bit) & 1)
                parts[c][2] |= other_mask
        nxt = base_b + _bits(len(B))
        paint(A, nxt)
        paint(B, nxt)

    paint(list(range(n)), 0)
    host = complete_hypergraph(n, 3)
    return ConstructionOutput(
        "tripartite_cover",
        n,
        k,
        host,
        EdgeColoring(k, tuple(color[e] for e in host.edges)),
        tuple(tuple(p) for p in parts),
    )


# ---------------------------------------------------------------------------
# fixed small colorings


def _from_classes(tag: str, host: Hypergraph, classes: list[list[tuple[int, ...]]]) -> ConstructionOutput:
    color: dict[int, int] = {}
    for c, cls in enumerate(classes):
        for edge in cls:
            e = vmask(edge)
            if e in color:
                raise ConstructionError(f"{tag}: edge {edge} listed in colors {color[e]} and {c}")
            color[e] = c
    missing = [e for e in host.edges if e not in color]
    extra = set(color) - set(host.edges)
    if missing or extra:
        raise ConstructionError(f"{tag}: {len(missing)} host edges uncolored, {len(extra)} foreign edges")
    k = len(classes)
    return ConstructionOutput(tag, host.n, k, host, EdgeColoring(k, tuple(color[e] for e in host.edges)))


def _cyclic(edge: tuple, shift: int, inf: tuple[int, ...]) -> tuple[int, ...]:
    # labels 0..4 rotate, points at infinity stay put
    return tuple(sorted(v if v in inf else (v + shift) % 5 for v in edge))


def fixed_coloring(name: str) -> ConstructionOutput:
    if name == "K4_3_2COL":
        host = complete_hypergraph(4, 3)
        lex = list(itertools.combinations(range(4), 3))
        return _from_classes(name, host, [lex[:2], lex[2:]])
    if name == "K5_3_4COL":
        # 1-based listing shifted down by one
        classes = [
            ["123", "124", "125"],
            ["134", "234", "345"],
            ["135", "145"],
            ["235", "245"],
        ]
        return _from_classes(
            name,
            complete_hypergraph(5, 3),
            [[tuple(int(ch) - 1 for ch in e) for e in cls] for cls in classes],
        )
    if name == "K6_3_5COL":
        inf = 5
        first = [(inf, 0, 1), (inf, 0, 2), (2, 3, 4), (1, 3, 4)]
        classes = [[_cyclic(e, s, (inf,)) for e in first] for s in range(5)]
        return _from_classes(name, complete_hypergraph(6, 3), classes)
    if name == "K7_3_6COL":
        i1, i2 = 5, 6
        star = [(i1, i2, v) for v in range(5)]
        second = [(0, 1, 4), (0, 2, 3), (i1, 1, 4), (i2, 1, 4), (i1, 2, 3), (i2, 2, 3)]
        classes = [star] + [[_cyclic(e, s, (i1, i2)) for e in second] for s in range(5)]
        return _from_classes(name, complete_hypergraph(7, 3), classes)
    if name == "K5_3_BK4_2COL":
        lex = list(itertools.combinations(range(5), 3))
        return _from_classes(name, complete_hypergraph(5, 3), [lex[:5], lex[5:]])
    if name == "K6_GRAPH_K33":
        host = complete_graph(6).as_hypergraph()
        left = {0, 1, 2}
        red = [e for e in itertools.combinations(range(6), 2) if (e[0] in left) != (e[1] in left)]
        blue = [e for e in itertools.combinations(range(6), 2) if (e[0] in left) == (e[1] in left)]
        return _from_classes(name, host, [red, blue])
    raise ValueError(f"unknown fixed coloring {name!r}; choose from {', '.join(FIXED_NAMES)}")


def threshold_family(n: int, s: int) -> Hypergraph:
    """All subsets of ``[n]`` with at least ``s`` elements, in bitmask order."""
    if not 1 <= s <= n <= 20:
        raise ValueError(f"threshold_family needs 1 <= s <= n <= 20, got n={n}, s={s}")
    return Hypergraph(n, tuple(e for e in range(1 << n) if bin(e).count("1") >= s))
