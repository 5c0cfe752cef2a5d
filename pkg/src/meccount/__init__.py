"""Exact counting of Markov equivalence classes of DAGs with a fixed skeleton."""
from .chordal_count import count_mec_chordal, count_rooted
from .counting import applicable_methods, count_mecs
from .errors import (
    Disagreement,
    InfeasibleSpec,
    MecCountError,
    NotATree,
    NotChordal,
    NotConnected,
    ParseError,
    TooLarge,
)
from .graph import MixedGraph, UndirectedGraph, build_clique_tree, is_chordal
from .oracle import count_mecs_bruteforce, enumerate_mecs
from .pdag import is_mec, is_partial_mec
from .tree_count import count_tree_rooted, count_tree_total

__all__ = [
    "Disagreement",
    "InfeasibleSpec",
    "MecCountError",
    "MixedGraph",
    "NotATree",
    "NotChordal",
    "NotConnected",
    "ParseError",
    "TooLarge",
    "UndirectedGraph",
    "applicable_methods",
    "build_clique_tree",
    "count_mec_chordal",
    "count_mecs",
    "count_mecs_bruteforce",
    "count_rooted",
    "count_tree_rooted",
    "count_tree_total",
    "enumerate_mecs",
    "is_chordal",
    "is_mec",
    "is_partial_mec",
]
