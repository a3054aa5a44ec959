"""Command-line front end.

Exit codes: 0 success, 1 error (including a failed verification), 2 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence, Union

from . import __version__
from .berge import BergeWitness, find_berge, mono_family_in_coloring, verify_witness
from .cache import Cache
from .constructions import (
    FIXED_NAMES,
    fixed_coloring,
    pair_complement_coloring,
    quad_class_coloring,
    recursive_triangle_coloring,
    tripartite_cover_coloring,
    two_k2_coloring,
)
from .core import Graph, canonical_code, complete_graph, cycle_graph, matching_graph, path_graph
from .formats import (
    SCHEMA_VERSION,
    ParseError,
    from_record,
    parse_coloring,
    parse_graph,
    parse_hypergraph,
    serialize_coloring,
    serialize_graph,
    to_record,
)
from .gstar import gstar_family, gstar_union
from .ramsey import Status, dual_f_report, exists_good_coloring, kstar_family, ramsey_report
from .turan import turan_exact

EXIT_OK, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2

FAMILIES = {
    "pair_complement": pair_complement_coloring,
    "quad_class": quad_class_coloring,
    "two_k2": two_k2_coloring,
    "recursive_triangle": recursive_triangle_coloring,
    "tripartite_cover": tripartite_cover_coloring,
}


class CliError(Exception):
    pass


def named_pattern(name: str) -> Union[Graph, tuple[Graph, ...]]:
    builtin = {
        "k2": lambda: complete_graph(2),
        "k3": lambda: complete_graph(3),
        "k4": lambda: complete_graph(4),
        "k4e": lambda: Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))),
        "p3": lambda: path_graph(3),
        "p4": lambda: path_graph(4),
        "c4": lambda: cycle_graph(4),
        "c5": lambda: cycle_graph(5),
        "2k2": lambda: matching_graph(2),
        "k4star-family": kstar_family,
    }
    if name.lower() in builtin:
        return builtin[name.lower()]()
    path = Path(name)
    if not path.exists():
        raise CliError(f"unknown pattern {name!r}: not a built-in name ({', '.join(builtin)}) nor a file")
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        G = from_record(json.loads(text))
        if not isinstance(G, Graph):
            raise CliError(f"{name}: JSON record is not a graph")
        return G
    return parse_graph(text)


def _family(p) -> tuple[Graph, ...]:
    return (p,) if isinstance(p, Graph) else tuple(p)


def _pattern_key(p) -> list[str]:
    return sorted(canonical_code(G).hex() for G in _family(p))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _load_hypergraph(path: str):
    text = _read(path)
    if path.endswith(".json"):
        return from_record(json.loads(text))
    return parse_hypergraph(text)


def _load_coloring(path: str):
    text = _read(path)
    if path.endswith(".json"):
        out = from_record(json.loads(text))
        if not isinstance(out, tuple):
            raise CliError(f"{path}: JSON record is not a coloring")
        return out
    return parse_coloring(text)


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, result payload, human text)


def cmd_detect(args, cache):
    H = _load_hypergraph(args.host)
    fam = _family(named_pattern(args.pattern))
    for i, G in enumerate(fam):
        w = find_berge(H, G)
        if w is not None:
            assert verify_witness(H, G, w), "detector returned an invalid witness"
            payload = {"found": True, "member": i, "witness": w.to_record(), "verified": True}
            return EXIT_OK, payload, f"Berge-{args.pattern} found: phi={list(w.phi)} assignment={list(w.assignment)}"
    return EXIT_OK, {"found": False}, f"no Berge-{args.pattern}"


def cmd_construct(args, cache):
    if args.name in FIXED_NAMES:
        out = fixed_coloring(args.name)
    elif args.name in FAMILIES:
        if args.n is None:
            raise CliError(f"family {args.name} needs --n")
        out = FAMILIES[args.name](args.n)
    else:
        raise CliError(f"unknown construction {args.name!r}; choose from {', '.join((*FIXED_NAMES, *FAMILIES))}")
    payload = {"family_tag": out.family_tag, "n": out.n, "declared_colors": out.declared_colors,
               "materialized": out.materialized}
    if out.materialized:
        payload["coloring"] = to_record(out.host, out.coloring)
        payload["used_colors"] = out.coloring.used_colors()
        text = serialize_coloring(out.host, out.coloring).rstrip("\n")
    else:
        text = f"# {out.family_tag} n={out.n} declared_colors={out.declared_colors} (edges not materialized)"
    return EXIT_OK, payload, text


def cmd_gstar(args, cache):
    G = named_pattern(args.graph)
    if not isinstance(G, Graph):
        raise CliError("gstar needs a single graph")
    if args.union:
        specs = gstar_union(G)
    else:
        specs = gstar_family(G, args.vertex if args.vertex is not None else 0)
    members = [s.result for s in specs]
    payload = {"count": len(members), "members": [to_record(M) for M in members]}
    text = "\n".join([*(serialize_graph(M) for M in members), f"# {len(members)} graphs up to isomorphism"])
    return EXIT_OK, payload, text


def cmd_turan(args, cache):
    G = named_pattern(args.pattern)
    if not isinstance(G, Graph):
        raise CliError("turan needs a single graph pattern")
    key = {"op": "turan", "n": args.n, "r": args.r, "pattern": _pattern_key(G)}
    rec = cache.get(key)
    if rec is not None:
        value, provenance = rec["value"], "cached"
    else:
        res = turan_exact(args.n, args.r, G, budget=args.budget)
        value, provenance = res.to_record(), "search"
        if res.exhausted:
            cache.put(key, value)
    payload = dict(value, provenance=provenance)
    code = EXIT_OK if value["exhausted"] else EXIT_BUDGET
    tail = "" if value["exhausted"] else " (budget exhausted: lower bound only)"
    return code, payload, f"ex_{args.r}({args.n}, B({args.pattern})) = {value['value']}{tail} [{provenance}]"


def _decide(n, r, k, pattern, budget, threads, cache):
    key = {"op": "ramsey", "n": n, "r": r, "k": k, "pattern": _pattern_key(pattern)}
    rec = cache.get(key)
    if rec is not None:
        return rec["value"], "cached"
    res = exists_good_coloring(n, r, k, pattern, budget=budget, workers=threads)
    value = res.to_record()
    if res.status is not Status.UNKNOWN:
        cache.put(key, value)
    return value, "search"


def cmd_ramsey(args, cache):
    pattern = named_pattern(args.pattern)
    if args.n is not None:
        value, prov = _decide(args.n, args.r, args.k, pattern, args.budget, args.threads, cache)
        payload = dict(value, n=args.n, provenance=prov, verified=value["status"] != "UNKNOWN")
        code = EXIT_BUDGET if value["status"] == "UNKNOWN" else EXIT_OK
        return code, payload, f"n={args.n} r={args.r} k={args.k}: {value['status']} [{prov}, {value['nodes']} nodes]"
    # no n: walk up from r until every coloring has a monochromatic copy
    steps = []
    for n in range(args.r, 64):
        value, prov = _decide(n, args.r, args.k, pattern, args.budget, args.threads, cache)
        steps.append({"n": n, "status": value["status"], "nodes": value["nodes"], "provenance": prov})
        if value["status"] == "UNKNOWN":
            return EXIT_BUDGET, {"steps": steps, "ramsey": None}, f"budget exhausted at n={n}"
        if value["status"] == "UNSAT":
            return EXIT_OK, {"steps": steps, "ramsey": n}, f"R_{args.r}(B({args.pattern}), {args.k}) = {n}"
    raise CliError("no UNSAT host found below 64 vertices")


def cmd_bounds(args, cache):
    pattern = named_pattern(args.pattern)
    if args.dual_n is not None:
        if not isinstance(pattern, Graph):
            raise CliError("the dual function needs a single graph pattern")
        mode = "non-uniform" if args.mode == "non-uniform" else int(args.mode)
        rep = dual_f_report(args.dual_n, pattern, mode)
        label = f"f{'' if mode == 'non-uniform' else '_' + str(mode)}({args.dual_n}, B({args.pattern}))"
    else:
        if args.k is None or args.r is None:
            raise CliError("bounds needs --k and --r (or --dual-n)")
        rep = ramsey_report(pattern, args.k, args.r, search_budget=args.budget)
        label = f"R_{args.r}(B({args.pattern}), {args.k})"
    rec = rep.to_record()
    text = f"{label}: lower={rec['lower']} upper={rec['upper']} exact={rec['exact']} [{', '.join(rec['provenance'])}]"
    return EXIT_OK, rec, text


def cmd_verify(args, cache):
    fam = _family(named_pattern(args.pattern))
    if args.coloring:
        H, c = _load_coloring(args.coloring)
        c.check_total(H)
        hit = mono_family_in_coloring(H, c, fam)
        if hit is None:
            return EXIT_OK, {"valid": True}, f"no monochromatic Berge-{args.pattern}"
        color, member, w = hit
        payload = {"valid": False, "color": color, "member": member, "witness": w.to_record()}
        return EXIT_ERROR, payload, f"monochromatic Berge-{args.pattern} in color {color}: {w.to_record()}"
    if args.witness and args.host:
        H = _load_hypergraph(args.host)
        raw = json.loads(_read(args.witness))
        w = BergeWitness(tuple(raw["phi"]), tuple(raw["assignment"]))
        G = fam[raw.get("member", 0)]
        check = verify_witness(H, G, w)
        if check:
            return EXIT_OK, {"valid": True}, "witness verified"
        return EXIT_ERROR, {"valid": False, "reason": check.reason}, f"witness rejected: {check.reason}"
    raise CliError("verify needs --coloring, or --witness with --host")


COMMANDS = {
    "detect": cmd_detect,
    "construct": cmd_construct,
    "gstar": cmd_gstar,
    "turan": cmd_turan,
    "ramsey": cmd_ramsey,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON run report")
    common.add_argument("--cache-dir", help="cache directory (default $BERGERAMSEY_CACHE_DIR or .berge-cache)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=int, default=1, help="worker processes for searches")
    common.add_argument("--budget", type=int, default=None, help="search node limit")

    p = argparse.ArgumentParser(prog="bergeramsey", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("detect", parents=[common], help="find a Berge copy in a hypergraph file")
    s.add_argument("--host", required=True)
    s.add_argument("--pattern", required=True)

    s = sub.add_parser("construct", parents=[common], help="emit an explicit coloring")
    s.add_argument("name")
    s.add_argument("--n", type=int)

    s = sub.add_parser("gstar", parents=[common], help="list the extension family of a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--vertex", type=int)
    s.add_argument("--union", action="store_true")

    s = sub.add_parser("turan", parents=[common], help="exact Berge Turán number")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--pattern", required=True)

    s = sub.add_parser("ramsey", parents=[common], help="decide or compute small Ramsey numbers by search")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int)

    s = sub.add_parser("bounds", parents=[common], help="bound report for a Ramsey number or dual function")
    s.add_argument("--pattern", required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--dual-n", type=int, help="report the dual color function at this n instead")
    s.add_argument("--mode", default="non-uniform", help="'non-uniform' or a uniformity r (with --dual-n)")

    s = sub.add_parser("verify", parents=[common], help="replay a coloring or witness file")
    s.add_argument("--pattern", required=True)
    s.add_argument("--coloring")
    s.add_argument("--witness")
    s.add_argument("--host")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    cache = Cache(args.cache_dir, enabled=not args.no_cache)
    start = time.perf_counter()
    try:
        code, payload, text = COMMANDS[args.command](args, cache)
    except (CliError, ParseError, ValueError) as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA_VERSION, "command": args.command, "error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        inputs = {k: v for k, v in vars(args).items() if k not in ("json", "command")}
        report = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": args.command,
            "inputs": inputs,
            "result": payload,
            "nodes": payload.get("nodes") if isinstance(payload, dict) else None,
            "verified": payload.get("verified", code != EXIT_ERROR),
            "elapsed": round(time.perf_counter() - start, 6),
        }
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
