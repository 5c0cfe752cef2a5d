"""Predicates and constructions on partially directed graphs.

These functions work on :class:`~meccount.graph.MixedGraph` and are written
for clarity; the counting code in :mod:`meccount.chordal_count` carries its
own compact versions and is tested against these.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import NotADirectedEdge, NotSynchronous
from .graph import MixedGraph, UndirectedGraph, is_chordal

VStructure = tuple[int, int, int]


def v_structures(m: MixedGraph) -> frozenset[VStructure]:
    """Triples ``(a, b, c)`` with ``a -> b <- c``, ``a < c`` and ``a, c`` non-adjacent."""
    out = set()
    for b in m.nodes:
        pa = sorted(m.parents(b))
        for a, c in combinations(pa, 2):
            if not m.adjacent(a, c):
                out.add((a, b, c))
    return frozenset(out)


@dataclass(frozen=True)
class ChainComponents:
    components: tuple[tuple[int, ...], ...]
    index: Mapping[int, int]


def chain_components(m: MixedGraph) -> ChainComponents:
    """Connected components of the undirected part of ``m``."""
    index: dict[int, int] = {}
    comps = []
    for s in m.nodes:
        if s in index:
            continue
        k = len(comps)
        index[s] = k
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in m.undirected_neighbors(u):
                if w not in index:
                    index[w] = k
                    comp.append(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return ChainComponents(tuple(comps), index)


def _reaches(m: MixedGraph, src: int, dst: int) -> bool:
    # undirected edges both ways, directed edges forward only
    seen, stack = {src}, [src]
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for w in m.neighbors(u):
            if w not in seen and not m.is_directed(w, u):
                seen.add(w)
                stack.append(w)
    return False


def is_chain_graph(m: MixedGraph) -> bool:
    """No cycle that contains a directed edge traversed forward."""
    return not any(_reaches(m, v, u) for u, v in m.directed_edges())


def is_strongly_protected(m: MixedGraph, u: int, v: int) -> bool:
    """Whether ``u -> v`` sits in one of the four protecting configurations.

    (a) ``w -> u -> v`` with ``w, v`` non-adjacent; (b) ``u -> v <- w`` with
    ``u, w`` non-adjacent; (c) ``u -> w -> v``; (d) ``w - u - w'`` with
    ``w -> v <- w'`` and ``w, w'`` non-adjacent.
    """
    if not m.is_directed(u, v):
        raise NotADirectedEdge(f"{u}->{v} is not a directed edge")
    pa_u = m.parents(u)
    if any(not m.adjacent(w, v) for w in pa_u):
        return True
    pa_v = m.parents(v) - {u}
    if any(not m.adjacent(w, u) for w in pa_v):
        return True
    if any(m.is_directed(u, w) for w in pa_v):
        return True
    cand = sorted(w for w in pa_v if m.is_undirected(u, w))
    return any(not m.adjacent(w, x) for w, x in combinations(cand, 2))


def has_induced_arrow_line(m: MixedGraph) -> bool:
    """Whether some induced ``a -> b - c`` (``a, c`` non-adjacent) occurs."""
    for a, b in m.directed_edges():
        for c in m.undirected_neighbors(b):
            if c != a and not m.adjacent(a, c):
                return True
    return False


def _chain_components_chordal(m: MixedGraph) -> bool:
    for comp in chain_components(m).components:
        if len(comp) < 4:
            continue
        sub = m.restrict(comp)
        relabel = {v: i for i, v in enumerate(sub.nodes)}
        g = UndirectedGraph(
            len(sub.nodes), [(relabel[a], relabel[b]) for a, b in sub.undirected_edges()]
        )
        if not is_chordal(g):
            return False
    return True


def is_partial_mec(m: MixedGraph) -> bool:
    """Chain graph, chordal chain components, no induced ``a -> b - c``."""
    return is_chain_graph(m) and _chain_components_chordal(m) and not has_induced_arrow_line(m)


def is_mec(m: MixedGraph) -> bool:
    """Partial MEC in which every directed edge is strongly protected."""
    return is_partial_mec(m) and all(is_strongly_protected(m, u, v) for u, v in m.directed_edges())


def are_synchronous(g: MixedGraph, h: MixedGraph, shared: Mapping[int, int] | None = None) -> bool:
    """No shared pair is ``x -> y`` in ``g`` but ``y -> x`` in ``h``.

    ``shared`` maps vertices of ``g`` to their counterparts in ``h``; by
    default vertices with the same label correspond.
    """
    if shared is None:
        shared = {v: v for v in set(g.nodes) & set(h.nodes)}
    for x, y in g.directed_edges():
        if x in shared and y in shared and h.is_directed(shared[y], shared[x]):
            return False
    return True


def markov_union(graphs: Sequence[MixedGraph], universe: Iterable[int] | None = None) -> MixedGraph:
    """Union of skeletons where a directed edge beats an undirected one."""
    for g, h in combinations(graphs, 2):
        if not are_synchronous(g, h):
            raise NotSynchronous("inputs direct a shared edge in opposite ways")
    nodes = set(universe) if universe is not None else set()
    directed: set[tuple[int, int]] = set()
    undirected: set[tuple[int, int]] = set()
    for g in graphs:
        if universe is not None and not set(g.nodes) <= nodes:
            raise ValueError("input graph has vertices outside the universe")
        nodes.update(g.nodes)
        directed.update(g.directed_edges())
        undirected.update(g.undirected_edges())
    covered = {(min(e), max(e)) for e in directed}
    return MixedGraph.build(nodes, directed=directed, undirected=undirected - covered)
