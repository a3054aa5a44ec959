"""Berge-G containment: search, brute-force oracle, certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels
from .core import EdgeColoring, Graph, Hypergraph, as_int64, vmask

ORACLE_MAX_HOST_EDGES = 12
ORACLE_MAX_PATTERN_EDGES = 6
ORACLE_MAX_VERTICES = 8


@dataclass(frozen=True)
class BergeWitness:
    """``phi[u]`` is the host vertex of pattern vertex ``u``; ``assignment[j]``
    is the host hyperedge index covering pattern edge ``G.edges[j]``."""

    phi: tuple[int, ...]
    assignment: tuple[int, ...]

    def to_record(self) -> dict:
        return {"phi": list(self.phi), "assignment": list(self.assignment)}


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class _Plan:
    eu: np.ndarray
    ev: np.ndarray
    order: np.ndarray
    back_start: np.ndarray
    back: np.ndarray


@lru_cache(maxsize=256)
def _plan(G: Graph) -> _Plan:
    """Placement order: highest degree first, then greedily the vertex with the
    most already-placed neighbours (ties: higher degree, lower label)."""
    adj = G.adj
    deg = [bin(a).count("1") for a in adj]
    placed: list[int] = []
    pmask = 0
    remaining = set(range(G.n))
    while remaining:
        u = min(remaining, key=lambda x: (-bin(adj[x] & pmask).count("1"), -deg[x], x))
        placed.append(u)
        pmask |= 1 << u
        remaining.remove(u)
    back_start = [0]
    back: list[int] = []
    for i, u in enumerate(placed):
        back.extend(w for w in placed[:i] if (adj[u] >> w) & 1)
        back_start.append(len(back))
    i64 = np.int64
    return _Plan(
        np.array([u for u, _ in G.edges], i64),
        np.array([v for _, v in G.edges], i64),
        np.array(placed, i64),
        np.array(back_start, i64),
        np.array(back, i64),
    )


def _check_pattern(G: Graph) -> None:
    if not G.edges:
        raise ValueError("the pattern graph needs at least one edge")


def find_berge(H: Hypergraph, G: Graph, anchor: Optional[int] = None) -> Optional[BergeWitness]:
    """Return a Berge-G witness inside ``H`` or ``None``.

    With ``anchor`` set, only witnesses with some pattern edge inside
    ``H.edges[anchor]`` are looked for.  That is complete exactly when
    ``H`` minus the anchor edge is already known to be Berge-G-free.
    """
    _check_pattern(G)
    if len(H.edges) < len(G.edges) or G.n > H.n:
        return None
    plan = _plan(G)
    hedges = as_int64(H.edges)
    phi = np.zeros(G.n, np.int64)
    assign = np.zeros(len(G.edges), np.int64)
    found = _kernels.berge_search(
        hedges, H.n, plan.eu, plan.ev, plan.order, plan.back_start, plan.back,
        -1 if anchor is None else anchor, phi, assign,
    )
    if not found:
        return None
    return BergeWitness(tuple(int(x) for x in phi), tuple(int(x) for x in assign))


def has_subgraph(
    adj: Union[Sequence[int], np.ndarray], n: int, G: Graph, anchor: Optional[tuple[int, int]] = None
) -> Optional[tuple[int, ...]]:
    """Ordinary subgraph containment in a graph given by neighbour masks.

    Berge containment in a 2-uniform host is exactly this.  Returns the
    embedding (host vertex per pattern vertex) or ``None``.
    """
    _check_pattern(G)
    if G.n > n:
        return None
    plan = _plan(G)
    phi = np.zeros(G.n, np.int64)
    a, b = anchor if anchor is not None else (-1, -1)
    ok = _kernels.subgraph_search(
        adj if isinstance(adj, np.ndarray) else as_int64(adj), n, plan.eu, plan.ev, plan.order, plan.back_start,
        plan.back, a, b, phi,
    )
    return tuple(int(x) for x in phi) if ok else None


def find_berge_oracle(H: Hypergraph, G: Graph) -> Optional[BergeWitness]:
    """Exhaustive reference: every injection, every injective edge assignment."""
    _check_pattern(G)
    if (
        len(H.edges) > ORACLE_MAX_HOST_EDGES
        or len(G.edges) > ORACLE_MAX_PATTERN_EDGES
        or H.n > ORACLE_MAX_VERTICES
    ):
        raise ValueError(
            f"oracle caps: |E(H)| <= {ORACLE_MAX_HOST_EDGES}, |E(G)| <= "
            f"{ORACLE_MAX_PATTERN_EDGES}, n(H) <= {ORACLE_MAX_VERTICES}"
        )
    for phi in itertools.permutations(range(H.n), G.n):
        options = [
            [h for h, e in enumerate(H.edges) if (e >> phi[u]) & 1 and (e >> phi[v]) & 1]
            for u, v in G.edges
        ]
        assignment = _first_injective_choice(options)
        if assignment is not None:
            return BergeWitness(tuple(phi), assignment)
    return None


def _first_injective_choice(
    options: list[list[int]], chosen: tuple[int, ...] = ()
) -> Optional[tuple[int, ...]]:
    if len(chosen) == len(options):
        return chosen
    for h in options[len(chosen)]:
        if h not in chosen:
            found = _first_injective_choice(options, chosen + (h,))
            if found is not None:
                return found
    return None


def verify_witness(H: Hypergraph, G: Graph, w: BergeWitness) -> WitnessCheck:
    if len(w.phi) != G.n:
        return WitnessCheck(False, "phi length")
    if len(w.assignment) != len(G.edges):
        return WitnessCheck(False, "assignment length")
    if any(not 0 <= x < H.n for x in w.phi):
        return WitnessCheck(False, "phi range")
    if len(set(w.phi)) != len(w.phi):
        return WitnessCheck(False, "phi not injective")
    if any(not 0 <= h < len(H.edges) for h in w.assignment):
        return WitnessCheck(False, "assignment range")
    if len(set(w.assignment)) != len(w.assignment):
        return WitnessCheck(False, "assignment not injective")
    for (u, v), h in zip(G.edges, w.assignment):
        pair = vmask((w.phi[u], w.phi[v]))
        if H.edges[h] & pair != pair:
            return WitnessCheck(False, "containment")
    return WitnessCheck(True)


def mono_berge_in_coloring(
    H: Hypergraph, c: EdgeColoring, G: Graph
) -> Optional[tuple[int, BergeWitness]]:
    """Least color whose class contains Berge-G, with a witness indexed into ``H``."""
    c.check_total(H)
    for color, idx in enumerate(c.classes()):
        if len(idx) < len(G.edges):
            continue
        w = find_berge(H.sub(idx), G)
        if w is not None:
            return color, BergeWitness(w.phi, tuple(idx[h] for h in w.assignment))
    return None


def mono_family_in_coloring(
    H: Hypergraph, c: EdgeColoring, family: Sequence[Graph]
) -> Optional[tuple[int, int, BergeWitness]]:
    """Like :func:`mono_berge_in_coloring` for a family; returns ``(color, member, witness)``."""
    c.check_total(H)
    for color, idx in enumerate(c.classes()):
        sub = H.sub(idx)
        for i, G in enumerate(family):
            if len(idx) < len(G.edges):
                continue
            w = find_berge(sub, G)
            if w is not None:
                return color, i, BergeWitness(w.phi, tuple(idx[h] for h in w.assignment))
    return None
