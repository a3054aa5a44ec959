"""Exact small Berge Turán numbers by branch and bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .berge import _plan
from .core import Graph, Hypergraph, as_int64, complete_hypergraph

MAX_N = 8
MAX_PATTERN_EDGES = 6
DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class TuranResult:
    n: int
    r: int
    pattern: Graph
    value: int
    witness: Hypergraph
    exhausted: bool
    nodes: int

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "value": self.value,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "witness": [sorted(i for i in range(self.n) if (e >> i) & 1) for e in self.witness.edges],
        }


def gyori_bound(n: int, r: int) -> Fraction:
    """Upper bound ``n^2 / (8 (r-2))`` on the Berge-triangle Turán number."""
    if r < 3:
        raise ValueError(f"the bound needs r >= 3, got {r}")
    return Fraction(n * n, 8 * (r - 2))


def turan_exact(n: int, r: int, G: Graph, budget: Optional[int] = None) -> TuranResult:
    """Largest Berge-G-free subfamily of ``K_n^r``.

    Edges are added in increasing index order; a branch is cut when even
    taking every remaining edge cannot beat the incumbent.  The lowest edge
    ``{0..r-1}`` is forced first: any nonempty hypergraph has a relabelling
    containing it.  Each new edge is tested only against witnesses that use
    it, the rest of the family being free already.

    Within the size caps the default budget is unlimited.  Beyond them the
    search still runs, but under ``DEFAULT_BUDGET`` nodes unless ``budget``
    says otherwise; ``exhausted`` reports whether it finished.
    """
    if not G.edges:
        raise ValueError("the pattern graph needs at least one edge")
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    within_caps = n <= MAX_N and len(G.edges) <= MAX_PATTERN_EDGES
    if budget is None and not within_caps:
        budget = DEFAULT_BUDGET

    K = complete_hypergraph(n, r)
    cand = as_int64(K.edges)
    M = len(cand)
    plan = _plan(G)
    phi = np.zeros(G.n, np.int64)
    assign = np.zeros(len(G.edges), np.int64)
    work = np.zeros(M, np.int64)

    best = [0, ()]
    nodes = 0
    out_of_budget = False

    def free_with(depth: int) -> bool:
        return not _kernels.berge_search(
            work[: depth + 1], n, plan.eu, plan.ev, plan.order, plan.back_start, plan.back,
            depth, phi, assign,
        )

    stack_idx: list[int] = []

    def extend(start: int) -> None:
        nonlocal nodes, out_of_budget
        depth = len(stack_idx)
        for j in range(start, M):
            if depth + (M - j) <= best[0]:
                return
            if budget is not None and nodes >= budget:
                out_of_budget = True
                return
            nodes += 1
            work[depth] = cand[j]
            if not free_with(depth):
                continue
            stack_idx.append(j)
            if depth + 1 > best[0]:
                best[0], best[1] = depth + 1, tuple(stack_idx)
            extend(j + 1)
            stack_idx.pop()
            if out_of_budget:
                return

    if M:
        nodes += 1
        work[0] = cand[0]
        if free_with(0):
            stack_idx.append(0)
            best[0], best[1] = 1, (0,)
            extend(1)
            stack_idx.pop()

    witness = Hypergraph(n, tuple(K.edges[i] for i in best[1]), r)
    return TuranResult(n, r, G, best[0], witness, not out_of_budget, nodes)
