"""Time the compiled kernels against their interpreted sources.

    python benchmarks/bench_kernels.py [--repeat N]

Each row runs the same inputs through the numba dispatcher and through its
``.py_func``; both must return the same answer.
"""

import argparse
import itertools
import time

import numpy as np

from bergeramsey import _kernels
from bergeramsey.berge import _plan
from bergeramsey.core import as_int64, complete_graph, cycle_graph


def berge_case():
    # complete 3-partite triple system on parts of size 3: Berge-K4-free, so the search is exhaustive
    parts = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    hedges = as_int64(sum(1 << v for v in t) for t in itertools.product(*parts))
    G = complete_graph(4)
    plan = _plan(G)
    return lambda f: f(hedges, 9, plan.eu, plan.ev, plan.order, plan.back_start, plan.back, -1,
                       np.zeros(G.n, np.int64), np.zeros(len(G.edges), np.int64))


def subgraph_case():
    n = 12
    adj = [0] * n
    # bipartite host: no odd cycle, so the search for C5 is exhaustive
    for a, b in itertools.combinations(range(n), 2):
        if (a % 2) != (b % 2):
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    arr = as_int64(adj)
    G = cycle_graph(5)
    plan = _plan(G)
    return lambda f: f(arr, n, plan.eu, plan.ev, plan.order, plan.back_start, plan.back, -1, -1,
                       np.zeros(G.n, np.int64))


def triple_case():
    n = 9
    sets = as_int64(e for e in range(1 << n) if bin(e).count("1") >= (n + 1) // 2)
    return lambda f: f(sets)


CASES = {
    "berge_search (K4 in K(3,3,3))": (_kernels.berge_search, berge_case),
    "subgraph_search (C5 in K6,6)": (_kernels.subgraph_search, subgraph_case),
    "triple scan (n=9 threshold)": (_kernels.first_triangle_free_triple, triple_case),
}


def best_of(call, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = call()
        best = min(best, time.perf_counter() - t)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not hasattr(_kernels.berge_search, "py_func"):
        raise SystemExit(f"kernels are not compiled (backend: {_kernels.backend()}); nothing to compare")
    print(f"{'kernel':36s} {'numba':>10s} {'python':>10s} {'speedup':>8s}")
    for name, (kernel, make) in CASES.items():
        run = make()
        run(kernel)  # compile outside the timing
        fast, t_fast = best_of(lambda: run(kernel), args.repeat)
        slow, t_slow = best_of(lambda: run(kernel.py_func), 1)
        assert np.all(np.asarray(fast) == np.asarray(slow)), name
        print(f"{name:36s} {t_fast * 1e3:9.2f}ms {t_slow * 1e3:9.1f}ms {t_slow / t_fast:7.0f}x")


if __name__ == "__main__":
    main()
