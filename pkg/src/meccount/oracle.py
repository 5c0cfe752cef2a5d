"""Brute-force ground truth: classify every acyclic orientation by its v-structures.

Nothing here shares code with the counters beyond the graph containers, so
agreement between the two is meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NoMatch, TooLarge
from .graph import BACKWARD, FORWARD, UNDIRECTED, MixedGraph, UndirectedGraph
from .pdag import v_structures

DEFAULT_EDGE_LIMIT = 24


@dataclass(frozen=True)
class MecClass:
    representative_dag: MixedGraph
    vstructs: frozenset[tuple[int, int, int]]
    cpdag: MixedGraph
    size: int


def acyclic_orientations(g: UndirectedGraph, max_edges: int = DEFAULT_EDGE_LIMIT):
    """Yield every acyclic orientation as a bitmask: bit ``i`` set means ``edges[i]`` points low -> high.

    Backtracks over the edges in order and drops a branch as soon as the
    newest arc closes a directed cycle, which filters the same 2**m space.
    """
    m = g.m
    if m > max_edges:
        raise TooLarge(f"{m} edges exceed the brute-force limit of {max_edges}")
    edges = g.edges
    out_adj = [0] * g.n

    def reaches(src, dst):
        seen = 1 << src
        frontier = 1 << src
        target = 1 << dst
        while frontier:
            if frontier & target:
                return True
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out_adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return False

    def rec(i, mask):
        if i == m:
            yield mask
            return
        u, v = edges[i]
        for fwd in (True, False):
            a, b = (u, v) if fwd else (v, u)
            if reaches(b, a):
                continue
            out_adj[a] |= 1 << b
            yield from rec(i + 1, mask | (1 << i) if fwd else mask)
            out_adj[a] &= ~(1 << b)

    yield from rec(0, 0)


def _vstructs_of(g: UndirectedGraph, mask: int) -> tuple[tuple[int, int, int], ...]:
    parents: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if mask >> i & 1:
            parents[v].append(u)
        else:
            parents[u].append(v)
    out = []
    for b, pa in enumerate(parents):
        pa.sort()
        for x in range(len(pa)):
            for y in range(x + 1, len(pa)):
                if not g.has_edge(pa[x], pa[y]):
                    out.append((pa[x], b, pa[y]))
    out.sort()
    return tuple(out)


def _dag(g: UndirectedGraph, mask: int) -> MixedGraph:
    marks = tuple(FORWARD if mask >> i & 1 else BACKWARD for i in range(g.m))
    return MixedGraph(tuple(range(g.n)), g.edges, marks)


def enumerate_mecs(g: UndirectedGraph, max_edges: int = DEFAULT_EDGE_LIMIT) -> list[MecClass]:
    """All Markov equivalence classes with skeleton ``g``, sorted by v-structure set."""
    full = (1 << g.m) - 1
    groups: dict[tuple, list[int]] = {}  # vstructs -> [first mask, and-forward, and-backward, size]
    for mask in acyclic_orientations(g, max_edges):
        key = _vstructs_of(g, mask)
        rec = groups.get(key)
        if rec is None:
            groups[key] = [mask, mask, full & ~mask, 1]
        else:
            rec[1] &= mask
            rec[2] &= full & ~mask
            rec[3] += 1
    classes = []
    for key in sorted(groups):
        first, all_fwd, all_bwd, size = groups[key]
        marks = tuple(
            FORWARD if all_fwd >> i & 1 else BACKWARD if all_bwd >> i & 1 else UNDIRECTED
            for i in range(g.m)
        )
        cpdag = MixedGraph(tuple(range(g.n)), g.edges, marks)
        classes.append(MecClass(_dag(g, first), frozenset(key), cpdag, size))
    return classes


def count_mecs_bruteforce(g: UndirectedGraph, max_edges: int = DEFAULT_EDGE_LIMIT) -> int:
    return len(enumerate_mecs(g, max_edges))


def count_mecs_with_image(
    g: UndirectedGraph,
    o: MixedGraph,
    x: Iterable[int],
    max_edges: int = DEFAULT_EDGE_LIMIT,
    classes: list[MecClass] | None = None,
) -> int:
    """Number of MECs of ``g`` whose induced subgraph on ``x`` is exactly ``o``."""
    x = g.check_vertices(x)
    if classes is None:
        classes = enumerate_mecs(g, max_edges)
    return sum(1 for c in classes if c.cpdag.restrict(x) == o)


def projection(m_cpdag: MixedGraph, y: Iterable[int], max_edges: int = DEFAULT_EDGE_LIMIT) -> MixedGraph:
    """The MEC of the induced skeleton on ``y`` sharing the v-structures of ``m[y]``.

    The result keeps the labels of ``m_cpdag``.
    """
    sub = m_cpdag.restrict(y)
    target = v_structures(sub)
    relabel = {v: i for i, v in enumerate(sub.nodes)}
    back = {i: v for v, i in relabel.items()}
    skel = UndirectedGraph(len(sub.nodes), [(relabel[u], relabel[v]) for u, v in sub.edges])
    hits = []
    for c in enumerate_mecs(skel, max_edges):
        cand = c.cpdag.relabel(back)
        if v_structures(cand) == target:
            hits.append(cand)
    if len(hits) != 1:
        raise NoMatch(f"expected one projection, found {len(hits)}")
    return hits[0]
