"""Acceptance criteria 1-11, each at its stated tolerance and time limit."""

import functools
import itertools
import random
import time
from fractions import Fraction
from math import comb, log2

import pytest

from bergeramsey.berge import find_berge, find_berge_oracle, has_subgraph, mono_berge_in_coloring, verify_witness
from bergeramsey.constructions import (
    FIXED_NAMES,
    bit_pair_color,
    fixed_coloring,
    quad_class_coloring,
    recursive_triangle_coloring,
    recursive_triangle_count,
    threshold_family,
    tripartite_count,
    tripartite_cover_coloring,
    two_k2_coloring,
)
from bergeramsey.core import (
    EdgeColoring,
    Graph,
    Hypergraph,
    complete_graph,
    complete_hypergraph,
    cycle_graph,
    matching_graph,
    members,
    path_graph,
    vmask,
)
from bergeramsey.gstar import gstar_family, shadow_coloring, shadow_lift
from bergeramsey.ramsey import (
    Status,
    acyclic_upper_bound,
    counting_upper_bound,
    dual_f_report,
    exists_good_coloring,
    kstar_bound,
    kstar_bound_opt,
    kstar_family,
    shadow_upper_bound,
    threshold_triples_ok,
)
from bergeramsey.turan import gyori_bound, turan_exact
from conftest import ACCEPTANCE
from oracles import has_berge, sets_of, turan_brute

K3, K4 = complete_graph(3), complete_graph(4)
K4E = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)))


def criterion(num, title, limit):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            start = time.perf_counter()
            ok = False
            try:
                fn(*a, **kw)
                secs = time.perf_counter() - start
                assert secs < limit, f"criterion {num} took {secs:.1f}s, limit {limit}s"
                ok = True
            finally:
                secs = time.perf_counter() - start
                ACCEPTANCE[num] = (ok, secs, title)
                print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {title}")

        return run

    return wrap


def gyori3(n):
    return gyori_bound(n, 3)


@criterion(1, "detector agrees with brute-force oracle", 30)
def test_c01_detector_soundness():
    rng = random.Random(1)
    patterns = [K3, K4, cycle_graph(4), path_graph(4), matching_graph(2)]
    found = 0
    for trial in range(240):
        n = rng.randint(3, 7)
        if rng.random() < 0.5:
            r = rng.randint(2, min(4, n))
            pool = [vmask(c) for c in itertools.combinations(range(n), r)]
        else:
            r, pool = None, list(range(1, 1 << n))
        H = Hypergraph(n, tuple(rng.sample(pool, rng.randint(0, min(8, len(pool))))), r)
        G = patterns[trial % len(patterns)]
        fast, slow = find_berge(H, G), find_berge_oracle(H, G)
        assert (fast is None) == (slow is None), (H, G)
        for w in (fast, slow):
            if w is not None:
                assert verify_witness(H, G, w)
        found += fast is not None
    assert 0 < found < 240


@criterion(2, "exact Turán values", 300)
def test_c02_turan():
    res = turan_exact(5, 3, K4)
    assert res.value == 5 and res.exhausted
    assert len(res.witness.edges) == 5 and find_berge(res.witness, K4) is None
    res = turan_exact(4, 3, K3)
    assert res.value == 2 and find_berge(res.witness, K3) is None
    assert turan_brute(4, 3, 3, K3.edges) == 2
    # every family of subsets of [4], kept only if all members are triples
    triples = {vmask(c) for c in itertools.combinations(range(4), 3)}
    best = 0
    for fam in range(1 << 16):
        chosen = [s for s in range(16) if (fam >> s) & 1]
        if len(chosen) <= best or any(s not in triples for s in chosen):
            continue
        if not has_berge(sets_of(chosen), 4, 3, K3.edges):
            best = len(chosen)
    assert best == 2
    for n in range(4, 8):
        res = turan_exact(n, 3, K3)
        assert res.exhausted and res.value <= n * n // 8


@criterion(3, "counting bound values with exact rationals", 10)
def test_c03_counting():
    got = {k: counting_upper_bound(k, 3, gyori3) for k in (2, 3, 4, 5, 6, 7, 8)}
    assert [got[k] for k in (2, 3, 4, 5, 6, 8)] == [5, 5, 6, 7, 8, 9]
    assert Fraction(comb(8, 3)) == 7 * gyori3(8)
    assert got[7] == 9


@criterion(4, "fixed colorings certify the triangle values", 60)
def test_c04_constructions():
    targets = {
        "K4_3_2COL": [K3], "K5_3_4COL": [K3], "K6_3_5COL": [K3], "K7_3_6COL": [K3],
        "K5_3_BK4_2COL": [K4], "K6_GRAPH_K33": [s.result for s in gstar_family(K4, 0)],
    }
    for name in FIXED_NAMES:
        out = fixed_coloring(name)
        out.coloring.check_total(out.host)
        assert sorted(set(out.coloring.colors)) == list(range(out.declared_colors))
        for G in targets[name]:
            assert mono_berge_in_coloring(out.host, out.coloring, G) is None, (name, G)
    # lower bound: largest host a construction colors with <= k colors, plus one
    for k, value in zip((2, 3, 4, 5, 6, 8), (5, 5, 6, 7, 8, 9)):
        best = 0
        for name in ("K4_3_2COL", "K5_3_4COL", "K6_3_5COL", "K7_3_6COL"):
            out = fixed_coloring(name)
            if out.declared_colors <= k:
                best = max(best, out.host.n)
        for n in range(3, 12):
            if recursive_triangle_count(n) <= k:
                best = max(best, n)
        assert best + 1 == value == counting_upper_bound(k, 3, gyori3)


@criterion(5, "exhaustive search values", 600)
def test_c05_search():
    fam = kstar_family()
    cases = [
        ((5, 3, 2, K3), Status.UNSAT), ((5, 3, 3, K3), Status.UNSAT), ((6, 3, 2, K4), Status.UNSAT),
        ((7, 2, 2, fam), Status.UNSAT), ((4, 3, 2, K3), Status.SAT), ((5, 3, 2, K4), Status.SAT),
        ((6, 2, 2, fam), Status.SAT),
    ]
    for (n, r, k, G), want in cases:
        res = exists_good_coloring(n, r, k, G)
        assert res.status is want, (n, r, k)
        if want is Status.SAT:
            family = (G,) if isinstance(G, Graph) else G
            for F in family:
                assert mono_berge_in_coloring(res.host, res.coloring, F) is None


@criterion(6, "recursive triangle coloring", 120)
def test_c06_recursive():
    for n in (8, 12, 16, 20):
        out = recursive_triangle_coloring(n)
        out.coloring.check_total(out.host)
        assert mono_berge_in_coloring(out.host, out.coloring, K3) is None
        assert out.coloring.used_colors() <= 2 * n + log2(n)
    for n in (64, 256, 1024):
        out = recursive_triangle_coloring(n)
        assert not out.materialized
        assert out.declared_colors == recursive_triangle_count(n) <= 2 * n + log2(n)


@criterion(7, "3-partite cover", 300)
def test_c07_tripartite():
    for n in (8, 16, 32, 64):
        out = tripartite_cover_coloring(n)
        out.coloring.check_total(out.host)
        for c, idx in enumerate(out.coloring.classes()):
            parts = out.parts[c]
            assert not (parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2])
            for i in idx:
                e = out.host.edges[i]
                assert all(bin(e & p).count("1") == 1 for p in parts)
        assert mono_berge_in_coloring(out.host, out.coloring, K4) is None
        f = tripartite_count(n)
        assert out.coloring.used_colors() <= f
        assert f <= 2 * log2(n) + tripartite_count(-(-n // 2))
        assert f <= 2 * log2(n) ** 2
    # every pair coloring on m <= 64 vertices is the restriction of m = 64
    for a, b, c in itertools.combinations(range(64), 3):
        assert len({bit_pair_color(a, b), bit_pair_color(a, c), bit_pair_color(b, c)}) > 1


def _two_k2_free(sets):
    for A, B in itertools.combinations(sets, 2):
        for p in itertools.combinations(members(A), 2):
            for q in itertools.combinations(members(B), 2):
                if not set(p) & set(q):
                    return False
    return True


def _colorable(sets, k):
    """Backtracking over the sets with least-index-first colors."""
    classes = [[] for _ in range(k)]

    def go(i, used):
        if i == len(sets):
            return True
        for c in range(min(used + 1, k)):
            classes[c].append(sets[i])
            if _two_k2_free(classes[c]) and go(i + 1, max(used, c + 1)):
                return True
            classes[c].pop()
        return False

    return go(0, 0)


@criterion(8, "non-uniform dual function results", 300)
def test_c08_nonuniform():
    for n in range(3, 13):
        out = quad_class_coloring(n)
        out.coloring.check_total(out.host)
        assert out.coloring.used_colors() == 2 ** (n - 2)
        for idx in out.coloring.classes():
            assert find_berge(out.host.sub(idx), K3) is None
    assert threshold_triples_ok(7) is None and threshold_triples_ok(9) is None
    triple = [vmask(t) for t in ((0, 1, 2), (0, 1, 3), (0, 1, 4))]
    assert all(e in threshold_family(5, 3).edges for e in triple)
    assert not has_berge(sets_of(triple), 5, 3, K3.edges)
    assert threshold_triples_ok(5) is not None
    for n in (7, 9, 11):
        assert dual_f_report(n, K3).exact == 2 ** (n - 2)
    for n in range(3, 11):
        out = two_k2_coloring(n)
        assert out.coloring.used_colors() == out.declared_colors == 2 ** n - comb(n, 2) - n - 1
    assert dual_f_report(4, matching_graph(2)).exact == 5
    relevant = [e for e in range(16) if bin(e).count("1") >= 2]
    assert len(relevant) == 11
    assert not _colorable(relevant, 4) and _colorable(relevant, 5)


@criterion(9, "extension family sizes", 10)
def test_c09_gstar():
    assert len(gstar_family(K4, 0)) == 3
    assert K4E.degree(0) == 3 and len(gstar_family(K4E, 0)) == 5


@criterion(10, "shadow lift yields valid monochromatic witnesses", 300)
def test_c10_shadow_lift():
    rng = random.Random(10)
    colorings = lifts = 0
    while colorings < 100:
        n, k = rng.randint(5, 8), rng.randint(1, 3)
        G = (K4, K3, K4E)[colorings % 3]
        v = max(range(G.n), key=G.degree)
        H = complete_hypergraph(n, 3)
        c = EdgeColoring(k, tuple(rng.randrange(k) for _ in H.edges))
        colorings += 1
        for X in itertools.combinations(range(n), 1):
            sh = shadow_coloring(H, c, X)
            m = len(sh.vertices)
            for color in range(k):
                adj = [0] * m
                for e, col in zip(sh.host.edges, sh.coloring.colors):
                    if col == color:
                        a, b = members(e)
                        adj[a] |= 1 << b
                        adj[b] |= 1 << a
                for spec in gstar_family(G, v):
                    emb = has_subgraph(adj, m, spec.result)
                    if emb is None:
                        continue
                    copy = tuple(sh.vertices[i] for i in emb)
                    w = shadow_lift(H, c, X, spec, copy)
                    assert verify_witness(H, G, w)
                    assert {c.colors[h] for h in w.assignment} == {color}
                    lifts += 1
    assert lifts > 100


@criterion(11, "formula evaluators", 10)
def test_c11_formulas():
    with pytest.raises(ValueError):
        kstar_bound(2, Fraction(1, 4))
    below = [kstar_bound(2, Fraction(1, 4) - Fraction(1, 10 ** m)) for m in range(3, 10)]
    assert all(isinstance(v, Fraction) and v > Fraction(25, 2) for v in below)
    assert below == sorted(below, reverse=True)
    assert below[-1] - Fraction(25, 2) < Fraction(1, 10 ** 7)
    eps, val = kstar_bound_opt(2)
    assert isinstance(eps, Fraction) and isinstance(val, Fraction)
    assert val == min(kstar_bound(2, Fraction(i, 1000)) for i in range(1, 250))
    eps1, val1 = kstar_bound_opt(1)
    assert eps1 == Fraction(249, 1000) and val1 == Fraction(1249, 249)
    assert acyclic_upper_bound(K4E, 3, 3) == 49
    assert acyclic_upper_bound(K4, 2, 3) is None
    assert acyclic_upper_bound(path_graph(4), 2, 4) == 34
    assert shadow_upper_bound(7, 3) == 8
    assert shadow_upper_bound(9, 2) == 9
    assert shadow_upper_bound(11, 5) == 14
