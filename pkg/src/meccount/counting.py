"""Method dispatch shared by the CLI and library users.

MEC counts multiply over connected components: orientations and
v-structures never span two components.  The tree and chordal counters run
per component; the brute-force oracle sees the whole graph so it checks that
product rule independently.
"""
from __future__ import annotations

import os
from math import prod

from .chordal_count import count_mec_chordal
from .errors import NotATree, NotChordal, TooLarge
from .graph import UndirectedGraph, is_chordal
from .oracle import DEFAULT_EDGE_LIMIT, count_mecs_bruteforce
from .tree_count import count_tree_total

METHODS = ("tree", "chordal", "brute")
ENV_EDGE_LIMIT = "MECCOUNT_BRUTE_EDGE_LIMIT"


def brute_edge_limit() -> int:
    raw = os.environ.get(ENV_EDGE_LIMIT)
    return int(raw) if raw else DEFAULT_EDGE_LIMIT


def _pieces(g: UndirectedGraph) -> list[UndirectedGraph]:
    return [g.induced(c)[0] for c in g.components()]


def applicable_methods(g: UndirectedGraph) -> list[str]:
    pieces = _pieces(g)
    out = []
    if all(p.is_tree() for p in pieces):
        out.append("tree")
    if all(is_chordal(p) for p in pieces):
        out.append("chordal")
    if g.m <= brute_edge_limit():
        out.append("brute")
    return out


def count_mecs(g: UndirectedGraph, method: str = "auto") -> tuple[int, str]:
    """Return ``(count, method actually used)``."""
    if method == "auto":
        usable = applicable_methods(g)
        if not usable:
            raise TooLarge(
                f"graph is not chordal and its {g.m} edges exceed the brute-force limit"
            )
        method = usable[0]
    if method == "tree":
        pieces = _pieces(g)
        for p in pieces:
            if not p.is_tree():
                raise NotATree("a connected component contains a cycle")
        return prod(count_tree_total(p) for p in pieces), method
    if method == "chordal":
        pieces = _pieces(g)
        for p in pieces:
            if not is_chordal(p):
                raise NotChordal("a connected component has a chordless cycle")
        return prod(count_mec_chordal(p) for p in pieces), method
    if method == "brute":
        return count_mecs_bruteforce(g, brute_edge_limit()), method
    raise ValueError(f"unknown method {method!r}")
