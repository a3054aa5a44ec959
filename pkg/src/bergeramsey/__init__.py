"""Ramsey and Turán problems for Berge-G hypergraphs at desk scale."""

__version__ = "0.1.0"

from .berge import (  # noqa: E402
    BergeWitness,
    find_berge,
    find_berge_oracle,
    mono_berge_in_coloring,
    verify_witness,
)
from .core import (  # noqa: E402
    CanonicalCode,
    EdgeColoring,
    Graph,
    Hypergraph,
    canonical_code,
    complete_graph,
    complete_hypergraph,
    powerset_hypergraph,
)

__all__ = [
    "BergeWitness",
    "CanonicalCode",
    "EdgeColoring",
    "Graph",
    "Hypergraph",
    "canonical_code",
    "complete_graph",
    "complete_hypergraph",
    "find_berge",
    "find_berge_oracle",
    "mono_berge_in_coloring",
    "powerset_hypergraph",
    "verify_witness",
]
