"""Ramsey bounds for Berge patterns and the exhaustive coloring search."""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .berge import _plan, find_berge, mono_family_in_coloring
from .constructions import (
    FIXED_NAMES,
    fixed_coloring,
    quad_class_coloring,
    recursive_triangle_count,
    threshold_family,
    tripartite_count,
    two_k2_colors,
)
from .core import (
    EdgeColoring,
    Graph,
    Hypergraph,
    as_int64,
    canonical_code,
    complete_graph,
    complete_hypergraph,
    matching_graph,
    members,
    popcount,
    powerset_hypergraph,
)
from .gstar import acyclic_reducible, gstar_family
from .turan import gyori_bound, turan_exact

Pattern = Union[Graph, Sequence[Graph]]

# R(K4*(v), 2), established by exists_good_coloring (7 vertices UNSAT, 6 SAT)
KSTAR_RAMSEY_2 = 7


def _family(G: Pattern) -> tuple[Graph, ...]:
    return (G,) if isinstance(G, Graph) else tuple(G)


def _same(G: Graph, H: Graph) -> bool:
    return G.n == H.n and len(G.edges) == len(H.edges) and canonical_code(G) == canonical_code(H)


def kstar_family() -> tuple[Graph, ...]:
    return tuple(s.result for s in gstar_family(complete_graph(4), 0))


# ---------------------------------------------------------------------------
# bound formulas


def counting_upper_bound(k: int, r: int, turan_fn: Callable[[int], Fraction], n_max: int = 1 << 20) -> int:
    """Least ``n`` with ``C(n, r) > k * turan_fn(n)``; exact rational comparison."""
    for n in range(r, n_max + 1):
        if comb(n, r) > k * Fraction(turan_fn(n)):
            return n
    raise ValueError(f"no n <= {n_max} beats the Turán bound")


def shadow_upper_bound(graph_ramsey_value: int, r: int) -> int:
    if graph_ramsey_value < 1:
        raise ValueError("graph Ramsey value must be positive")
    return graph_ramsey_value + r - 2


def acyclic_upper_bound(G: Graph, k: int, r: int) -> Optional[int]:
    if acyclic_reducible(G) is None:
        return None
    return 4 * k * G.n + r - 2


def kstar_bound(k: int, epsilon) -> Fraction:
    """``(1 + eps)^k / eps * k!`` for ``0 < eps < 1/4``."""
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 4):
        raise ValueError(f"epsilon must lie strictly between 0 and 1/4, got {eps}")
    if k < 1:
        raise ValueError("k must be positive")
    return (1 + eps) ** k / eps * factorial(k)


def kstar_bound_opt(k: int) -> tuple[Fraction, Fraction]:
    """Minimize over the grid ``eps = i/1000``, ``1 <= i <= 249``; first minimizer wins."""
    best = None
    for i in range(1, 250):
        eps = Fraction(i, 1000)
        val = kstar_bound(k, eps)
        if best is None or val < best[1]:
            best = (eps, val)
    return best


# ---------------------------------------------------------------------------
# exhaustive coloring search


class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass
class SearchResult:
    status: Status
    nodes: int
    coloring: Optional[EdgeColoring] = None
    host: Optional[Hypergraph] = None
    # sampled prune points: (color, class edge masks, family member index)
    prune_samples: list = field(default_factory=list)

    def to_record(self) -> dict:
        rec = {"status": self.status.value, "nodes": self.nodes}
        if self.coloring is not None:
            rec["k"] = self.coloring.k
            rec["colors"] = list(self.coloring.colors)
        return rec


class _Searcher:
    """Backtracking over host edges in lexicographic vertex-tuple order.

    A color index is tried only if every smaller index is already in use,
    so color permutations are explored once.  After each assignment only the
    class that grew is tested, and only for copies through the new edge.
    Edges with fewer than two vertices never cover a pattern edge; they are
    left on color 0 without branching.
    """

    def __init__(self, host: Hypergraph, k: int, family: tuple[Graph, ...], budget: Optional[int], samples: int = 64):
        self.host = host
        self.k = k
        self.family = family
        self.budget = budget
        self.graph_mode = host.r == 2
        self.n = host.n
        edges = host.edges
        live = [i for i, e in enumerate(edges) if popcount(e) >= 2]
        self.order = sorted(live, key=lambda i: members(edges[i]))
        self.masks = as_int64(edges)
        M = len(edges)
        self.colors = np.zeros(M, np.int64)
        self.cls = np.zeros((k, max(M, 1)), np.int64)
        self.cnt = np.zeros(k, np.int64)
        self.adj = np.zeros((k, max(self.n, 1)), np.int64)
        self.plans = [_plan(G) for G in family]
        self.phi = [np.zeros(G.n, np.int64) for G in family]
        self.assign = [np.zeros(len(G.edges), np.int64) for G in family]
        self.nodes = 0
        self.out_of_budget = False
        self.samples: list = []
        self.sample_cap = samples
        self.prunes = 0
        self.rng = random.Random(0)

    def _hit(self, c: int, e: int) -> int:
        """Index of a family member present in class ``c`` through edge ``e``, else -1."""
        if self.graph_mode:
            a, b = members(self.host.edges[e])
            for t, plan in enumerate(self.plans):
                if _kernels.subgraph_search(
                    self.adj[c], self.n, plan.eu, plan.ev, plan.order, plan.back_start, plan.back,
                    a, b, self.phi[t],
                ):
                    return t
            return -1
        size = int(self.cnt[c])
        hedges = self.cls[c, :size]
        for t, plan in enumerate(self.plans):
            if plan.eu.shape[0] > size:
                continue
            if _kernels.berge_search(
                hedges, self.n, plan.eu, plan.ev, plan.order, plan.back_start, plan.back,
                size - 1, self.phi[t], self.assign[t],
            ):
                return t
        return -1

    def _push(self, c: int, e: int) -> None:
        self.colors[e] = c
        self.cls[c, self.cnt[c]] = self.masks[e]
        self.cnt[c] += 1
        if self.graph_mode:
            a, b = members(self.host.edges[e])
            self.adj[c, a] |= np.int64(1) << b
            self.adj[c, b] |= np.int64(1) << a

    def _pop(self, c: int, e: int) -> None:
        self.cnt[c] -= 1
        if self.graph_mode:
            a, b = members(self.host.edges[e])
            self.adj[c, a] &= ~(np.int64(1) << b)
            self.adj[c, b] &= ~(np.int64(1) << a)

    def _record_prune(self, c: int, t: int) -> None:
        self.prunes += 1
        item = (c, tuple(int(x) for x in self.cls[c, : self.cnt[c]]), t)
        if len(self.samples) < self.sample_cap:
            self.samples.append(item)
        else:
            j = self.rng.randrange(self.prunes)
            if j < self.sample_cap:
                self.samples[j] = item

    def apply_prefix(self, prefix: Sequence[int]) -> bool:
        """Replay a color prefix along the search order; False if it already fails."""
        for pos, c in enumerate(prefix):
            e = self.order[pos]
            self._push(c, e)
            if self._hit(c, e) >= 0:
                return False
        return True

    def run(self, start: int = 0, max_used: int = -1) -> bool:
        if start == len(self.order):
            return True
        e = self.order[start]
        for c in range(min(max_used + 2, self.k)):
            if self.budget is not None and self.nodes >= self.budget:
                self.out_of_budget = True
                return False
            self.nodes += 1
            self._push(c, e)
            t = self._hit(c, e)
            if t < 0:
                if self.run(start + 1, max(max_used, c)):
                    return True
            else:
                self._record_prune(c, t)
            self._pop(c, e)
            if self.out_of_budget:
                return False
        return False

    def result(self, found: bool) -> SearchResult:
        if found:
            col = EdgeColoring(self.k, tuple(int(x) for x in self.colors))
            if mono_family_in_coloring(self.host, col, self.family) is not None:
                raise AssertionError("search produced a coloring with a monochromatic copy")
            return SearchResult(Status.SAT, self.nodes, col, self.host, self.samples)
        status = Status.UNKNOWN if self.out_of_budget else Status.UNSAT
        return SearchResult(status, self.nodes, None, self.host, self.samples)


def _prefixes(searcher: _Searcher, depth: int) -> list[tuple[int, ...]]:
    out = [()]
    for pos in range(min(depth, len(searcher.order))):
        nxt = []
        for p in out:
            used = max(p, default=-1)
            nxt.extend(p + (c,) for c in range(min(used + 2, searcher.k)))
        out = nxt
    return out


def _run_branch(args) -> tuple[str, int, Optional[tuple[int, ...]], list]:
    host, k, family, budget, prefix = args
    s = _Searcher(host, k, family, budget)
    if not s.apply_prefix(prefix):
        return Status.UNSAT.value, len(prefix), None, []
    found = s.run(len(prefix), max(prefix, default=-1))
    status = Status.SAT if found else (Status.UNKNOWN if s.out_of_budget else Status.UNSAT)
    colors = tuple(int(x) for x in s.colors) if found else None
    return status.value, s.nodes + len(prefix), colors, s.samples


def search_good_coloring(
    host: Hypergraph,
    k: int,
    pattern: Pattern,
    budget: Optional[int] = None,
    workers: int = 1,
) -> SearchResult:
    """Decide whether ``host`` has a ``k``-coloring with no monochromatic
    Berge copy of any family member.

    ``budget`` caps search nodes (with ``workers > 1`` it caps each branch).
    Branches are split on the colors of the first few edges and combined in
    branch order, so the result does not depend on scheduling.
    """
    if k < 1:
        raise ValueError("k must be positive")
    family = _family(pattern)
    if not family or any(not G.edges for G in family):
        raise ValueError("every pattern needs at least one edge")
    if workers <= 1:
        s = _Searcher(host, k, family, budget)
        return s.result(s.run())

    probe = _Searcher(host, k, family, budget)
    depth = 1
    while depth < len(probe.order) and len(_prefixes(probe, depth)) < 4 * workers:
        depth += 1
    branches = _prefixes(probe, depth)
    nodes = 0
    samples: list = []
    unknown = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for status, n_nodes, colors, smp in pool.map(
            _run_branch, [(host, k, family, budget, p) for p in branches]
        ):
            nodes += n_nodes
            samples.extend(smp[:8])
            if status == Status.SAT.value:
                col = EdgeColoring(k, colors)
                if mono_family_in_coloring(host, col, family) is not None:
                    raise AssertionError("search produced a coloring with a monochromatic copy")
                return SearchResult(Status.SAT, nodes, col, host, samples)
            unknown = unknown or status == Status.UNKNOWN.value
    return SearchResult(Status.UNKNOWN if unknown else Status.UNSAT, nodes, None, host, samples)


def exists_good_coloring(
    n: int, r: int, k: int, G: Pattern, budget: Optional[int] = None, workers: int = 1
) -> SearchResult:
    return search_good_coloring(complete_hypergraph(n, r), k, G, budget, workers)


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    lower: Optional[int] = None
    lower_provenance: Optional[str] = None
    upper: Optional[int] = None
    upper_provenance: Optional[str] = None
    exact: Optional[int] = None
    provenance: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def offer_lower(self, value: int, how: str, note: str = "") -> None:
        if self.lower is None or value > self.lower:
            self.lower, self.lower_provenance = value, how
        self._log(how, note)

    def offer_upper(self, value: int, how: str, note: str = "") -> None:
        if self.upper is None or value < self.upper:
            self.upper, self.upper_provenance = value, how
        self._log(how, note)

    def _log(self, how: str, note: str) -> None:
        if how not in self.provenance:
            self.provenance.append(how)
        if note:
            self.notes.append(note)

    def settle(self) -> BoundReport:
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper:
                raise AssertionError(f"inconsistent bounds: lower {self.lower} > upper {self.upper}")
            if self.lower == self.upper:
                self.exact = self.lower
        return self

    def to_record(self) -> dict:
        return {
            "lower": self.lower,
            "lower_provenance": self.lower_provenance,
            "upper": self.upper,
            "upper_provenance": self.upper_provenance,
            "exact": self.exact,
            "provenance": list(self.provenance),
            "notes": list(self.notes),
        }


def threshold_triples_ok(n: int, exhaustive: bool = True) -> Optional[tuple[int, int, int]]:
    """Check that every three sets of size >= (n+1)/2 carry a Berge triangle.

    Returns ``None`` on success, else the offending triple as masks.  The
    non-exhaustive mode fixes one member to an initial segment ``{0..s-1}``,
    which covers every triple up to a vertex permutation.
    """
    fam = threshold_family(n, (n + 2) // 2)
    sets = as_int64(fam.edges)
    if exhaustive:
        i, j, t = _kernels.first_triangle_free_triple(sets)
    else:
        index = fam.index_of()
        reps = np.array([index[(1 << s) - 1] for s in range((n + 2) // 2, n + 1)], np.int64)
        i, j, t = _kernels.first_triangle_free_triple_from(sets, reps)
    if i < 0:
        return None
    return fam.edges[i], fam.edges[j], fam.edges[t]


def _nonuniform_report(n: int, G: Graph, search_budget: int) -> BoundReport:
    rep = BoundReport()
    p, nv = len(G.edges), G.n
    is_k3 = _same(G, complete_graph(3))
    is_2k2 = _same(G, matching_graph(2))
    if p < 2:
        raise ValueError("the dual function needs a pattern with at least two edges")

    if is_2k2:
        if 3 <= n <= 16:
            rep.offer_upper(two_k2_colors(n), "construction", "sets of size >= 3 distinct, small sets absorbed")
        if n <= 10:
            big = Hypergraph(n, tuple(e for e in range(1 << n) if popcount(e) >= 3))
            pairs_ok = all(
                find_berge(big.sub((i, j)), G) is not None
                for i in range(len(big.edges))
                for j in range(i + 1, len(big.edges))
            )
            if pairs_ok:
                rep.offer_lower(len(big.edges), "counting", "any two sets of size >= 3 form Berge-2K2")
    else:
        if is_k3 and 3 <= n <= 16:
            verified = n <= 12 and _classes_free(quad_class_coloring(n), G)
            rep.offer_upper(2 ** (n - 2), "construction",
                            f"quad classes{' verified Berge-K3-free' if verified else ''}")
        if 2 <= n <= 20:
            rep.offer_upper(2 ** (n - 1), "construction", "set / complement pairs")
        if n >= nv:
            rep.offer_lower(-(-(2 ** (n - nv)) // (p - 1)), "formula", "supersets of a fixed |V(G)|-set")
        if is_k3 and n % 2 == 1 and n >= 7:
            bad = threshold_triples_ok(n, exhaustive=n <= 9)
            if bad is None:
                rep.offer_lower(2 ** (n - 2), "counting", "at most two large sets per color")
            else:
                rep.notes.append(f"threshold triple fails: {[members(b) for b in bad]}")

    if n <= 4:
        # tiny hosts: certify from one color upwards, independently of the formulas
        _search_exact(rep, powerset_hypergraph(n), G, search_budget, start=1)
    return rep.settle()


def _classes_free(out, G: Graph) -> bool:
    for idx in out.coloring.classes():
        if len(idx) >= len(G.edges) and find_berge(out.host.sub(idx), G) is not None:
            return False
    return True


def _search_exact(rep: BoundReport, host: Hypergraph, G: Graph, budget: int, start: Optional[int] = None) -> None:
    """Tighten bounds on the least number of colors by search, bottom up."""
    k = start if start is not None else max(rep.lower or 1, 1)
    top = rep.upper if rep.upper is not None else len(host.edges)
    while k <= top:
        res = search_good_coloring(host, k, G, budget)
        if res.status is Status.SAT:
            rep.offer_upper(k, "search", f"good {k}-coloring found ({res.nodes} nodes)")
            return
        if res.status is Status.UNKNOWN:
            rep.notes.append(f"search for {k} colors ran out of budget")
            return
        rep.offer_lower(k + 1, "search", f"no good {k}-coloring ({res.nodes} nodes)")
        k += 1


def _uniform_report(n: int, r: int, G: Graph, search_budget: int) -> BoundReport:
    rep = BoundReport()
    is_k3 = _same(G, complete_graph(3))
    is_k4 = _same(G, complete_graph(4))
    if len(G.edges) >= 2:
        rep.offer_upper(comb(n, r), "construction", "every edge its own color")
    if r == 3 and is_k3 and n >= 3:
        rep.offer_upper(recursive_triangle_count(n), "construction", "recursive halving")
    if r == 3 and is_k4 and n >= 4:
        rep.offer_upper(tripartite_count(n), "construction", "3-partite cover")
    for name in FIXED_NAMES:
        out = fixed_coloring(name)
        if out.host.n == n and out.host.r == r and _classes_free(out, G):
            rep.offer_upper(out.declared_colors, "construction", name)
    if n <= 8 and len(G.edges) <= 6:
        ex = turan_exact(n, r, G).value
        if ex > 0:
            rep.offer_lower(-(-comb(n, r) // ex), "search", f"exact Turán number {ex}")
    elif is_k3 and r >= 3:
        ex = int(gyori_bound(n, r))
        if ex > 0:
            rep.offer_lower(-(-comb(n, r) // ex), "formula", "Turán bound n^2/(8(r-2))")
    if comb(n, r) <= 20 and rep.lower != rep.upper:
        _search_exact(rep, complete_hypergraph(n, r), G, search_budget)
    return rep.settle()


def dual_f_report(n: int, G: Graph, mode: Union[int, str] = "non-uniform", search_budget: int = 2_000_000) -> BoundReport:
    """Bounds on the least number of colors of ``2^[n]`` (``mode="non-uniform"``)
    or of ``K_n^r`` (``mode=r``) avoiding a monochromatic Berge-G."""
    if mode == "non-uniform":
        return _nonuniform_report(n, G, search_budget)
    return _uniform_report(n, int(mode), G, search_budget)


def ramsey_report(G: Pattern, k: int, r: int, search_budget: Optional[int] = None) -> BoundReport:
    """Bounds on ``R_r(B(G), k)``.

    Lower bounds come from colorings with at most ``k`` colors and no
    monochromatic copy; upper bounds from the counting, shadow and acyclic
    formulas.  With ``search_budget`` the search tries to close the gap at
    the lower bound.
    """
    if k < 2 or r < 2:
        raise ValueError("need k >= 2 and r >= 2")
    rep = BoundReport()
    family = _family(G)
    single = family[0] if len(family) == 1 else None
    is_k3 = single is not None and _same(single, complete_graph(3))
    is_k4 = single is not None and _same(single, complete_graph(4))
    is_kstar = len(family) > 1 and {canonical_code(F) for F in family} == {canonical_code(F) for F in kstar_family()}

    for name in FIXED_NAMES:
        out = fixed_coloring(name)
        if out.host.r == r and out.declared_colors <= k:
            if mono_family_in_coloring(out.host, out.coloring, family) is None:
                rep.offer_lower(out.host.n + 1, "construction", name)
    if r == 3 and is_k3:
        n = 3
        while recursive_triangle_count(n + 1) <= k:
            n += 1
        rep.offer_lower(n + 1, "construction", f"recursive halving colors K_{n}^3 with {recursive_triangle_count(n)}")
        rep.offer_upper(counting_upper_bound(k, r, lambda m: gyori_bound(m, r)), "counting", "Turán bound n^2/(8(r-2))")
    if r == 3 and is_k4:
        n = 4
        while tripartite_count(n + 1) <= k and n < 256:
            n += 1
        rep.offer_lower(n + 1, "construction", f"3-partite cover of K_{n}^3 with {tripartite_count(n)} colors")
    if r >= 3 and is_k4:
        if k == 2:
            rep.offer_upper(shadow_upper_bound(KSTAR_RAMSEY_2, r), "formula", "R(K4*(v),2)+r-2")
        else:
            _, val = kstar_bound_opt(k)
            rep.offer_upper(shadow_upper_bound(int(val), r), "formula", "shadow bound with the K4* estimate")
    if r == 2 and is_kstar and k == 2:
        rep.offer_upper(KSTAR_RAMSEY_2, "search", "machine-checked")
    if single is not None and r >= 3:
        acyc = acyclic_upper_bound(single, k, r)
        if acyc is not None:
            rep.offer_upper(acyc, "formula", "4k|V(G)|+r-2")

    if search_budget is not None and rep.lower is not None and comb(rep.lower, r) <= 24:
        res = exists_good_coloring(rep.lower, r, k, family, search_budget)
        if res.status is Status.UNSAT:
            rep.offer_upper(rep.lower, "search", f"no good coloring of K_{rep.lower}^{r} ({res.nodes} nodes)")
        elif res.status is Status.SAT:
            rep.offer_lower(rep.lower + 1, "search", f"good coloring of K_{rep.lower}^{r}")
    return rep.settle()
