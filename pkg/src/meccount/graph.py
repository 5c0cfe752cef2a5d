"""Undirected and mixed graphs plus the chordal machinery the counters need.

Vertices of an :class:`UndirectedGraph` are the dense integers ``0..n-1``.
A :class:`MixedGraph` may live on any set of integer labels, which lets a
window of a larger graph keep the labels of its parent.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    EdgeNotInTree,
    NotChordal,
    NotConnected,
    SeedNotClique,
    VertexOutOfRange,
)

UNDIRECTED = 0
FORWARD = 1  # low label -> high label
BACKWARD = 2  # high label -> low label


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class UndirectedGraph:
    """Immutable simple undirected graph on ``range(n)``."""

    __slots__ = ("n", "edges", "adj", "_adjset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("node count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside range(0, {n})")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._adjset: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(n) for v in self.adj[u] if u < v
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjset[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def check_vertices(self, xs: Iterable[int]) -> frozenset[int]:
        xs = frozenset(xs)
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < self.n):
                raise VertexOutOfRange(f"vertex {x!r} outside range(0, {self.n})")
        return xs

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_clique(self, xs: Iterable[int]) -> bool:
        return all(self.has_edge(u, v) for u, v in combinations(sorted(xs), 2))

    def induced(self, x: Iterable[int]) -> tuple["UndirectedGraph", dict[int, int]]:
        """Induced subgraph on ``x``, relabeled to ``range(len(x))`` in sorted order."""
        x = sorted(self.check_vertices(x))
        relabel = {v: i for i, v in enumerate(x)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel]
        return UndirectedGraph(len(x), edges), relabel

    def __eq__(self, other):
        return isinstance(other, UndirectedGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class MixedGraph:
    """Partially directed graph with one mark per skeleton edge.

    ``edges`` is sorted with ``u < v`` in each pair; ``marks[i]`` is one of
    :data:`UNDIRECTED`, :data:`FORWARD` (``u -> v``) or :data:`BACKWARD`
    (``v -> u``) for ``edges[i]``.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    marks: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != len(self.marks):
            raise ValueError("one mark per edge required")
        index = {e: i for i, e in enumerate(self.edges)}
        if len(index) != len(self.edges):
            raise ValueError("duplicate edge")
        nodeset = frozenset(self.nodes)
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            if not u < v:
                raise ValueError(f"edge ({u}, {v}) is not normalised")
            if u not in nodeset or v not in nodeset:
                raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside the node set")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", {v: frozenset(s) for v, s in adj.items()})

    @classmethod
    def build(
        cls,
        nodes: Iterable[int],
        directed: Iterable[tuple[int, int]] = (),
        undirected: Iterable[tuple[int, int]] = (),
    ) -> "MixedGraph":
        marks: dict[tuple[int, int], int] = {}
        for u, v in undirected:
            e = _norm(u, v)
            if e in marks:
                raise ValueError(f"edge {e} given twice")
            marks[e] = UNDIRECTED
        for u, v in directed:
            e = _norm(u, v)
            if e in marks:
                raise ValueError(f"edge {e} given twice")
            marks[e] = FORWARD if u < v else BACKWARD
        edges = tuple(sorted(marks))
        return cls(tuple(sorted(set(nodes))), edges, tuple(marks[e] for e in edges))

    @classmethod
    def from_skeleton(cls, g: UndirectedGraph, directed: Iterable[tuple[int, int]] = ()) -> "MixedGraph":
        """All edges of ``g`` undirected except those listed in ``directed``."""
        marks = dict.fromkeys(g.edges, UNDIRECTED)
        for u, v in directed:
            e = _norm(u, v)
            if e not in marks:
                raise ValueError(f"{(u, v)} is not an edge of the skeleton")
            marks[e] = FORWARD if u < v else BACKWARD
        return cls(tuple(range(g.n)), g.edges, tuple(marks[e] for e in g.edges))

    # -- queries ---------------------------------------------------------
    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def mark(self, u: int, v: int) -> int | None:
        """Mark of the edge seen from ``u``: FORWARD means ``u -> v``."""
        i = self._index.get(_norm(u, v))
        if i is None:
            return None
        m = self.marks[i]
        if m == UNDIRECTED or u < v:
            return m
        return FORWARD if m == BACKWARD else BACKWARD

    def is_directed(self, u: int, v: int) -> bool:
        return self.mark(u, v) == FORWARD

    def is_undirected(self, u: int, v: int) -> bool:
        return self.mark(u, v) == UNDIRECTED

    def directed_edges(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), m in zip(self.edges, self.marks):
            if m == FORWARD:
                out.append((u, v))
            elif m == BACKWARD:
                out.append((v, u))
        return out

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [e for e, m in zip(self.edges, self.marks) if m == UNDIRECTED]

    def parents(self, v: int) -> set[int]:
        return {w for w in self._adj[v] if self.is_directed(w, v)}

    def children(self, v: int) -> set[int]:
        return {w for w in self._adj[v] if self.is_directed(v, w)}

    def undirected_neighbors(self, v: int) -> set[int]:
        return {w for w in self._adj[v] if self.is_undirected(v, w)}

    # -- constructions ---------------------------------------------------
    def restrict(self, x: Iterable[int]) -> "MixedGraph":
        """Induced sub-mixed-graph on ``x`` keeping the original labels."""
        x = frozenset(x)
        missing = x.difference(self.nodes)
        if missing:
            raise VertexOutOfRange(f"vertices {sorted(missing)} not in graph")
        keep = [i for i, (u, v) in enumerate(self.edges) if u in x and v in x]
        return MixedGraph(
            tuple(sorted(x)),
            tuple(self.edges[i] for i in keep),
            tuple(self.marks[i] for i in keep),
        )

    def relabel(self, mapping: Mapping[int, int]) -> "MixedGraph":
        return MixedGraph.build(
            (mapping[v] for v in self.nodes),
            directed=[(mapping[u], mapping[v]) for u, v in self.directed_edges()],
            undirected=[(mapping[u], mapping[v]) for u, v in self.undirected_edges()],
        )

    def skeleton(self) -> UndirectedGraph:
        """Underlying undirected graph; requires labels ``0..n-1``."""
        if self.nodes != tuple(range(len(self.nodes))):
            raise ValueError("skeleton() needs dense labels; relabel first")
        return UndirectedGraph(len(self.nodes), self.edges)

    def key(self) -> bytes:
        """Canonical encoding: 2 bits per edge in edge order, node list prefixed."""
        packed = 0
        for i, m in enumerate(self.marks):
            packed |= m << (2 * i)
        nbytes = (2 * len(self.marks) + 7) // 8
        head = ",".join(map(str, self.nodes)).encode() + b"|"
        return head + packed.to_bytes(nbytes, "little")

    def __str__(self):
        parts = [f"{u}->{v}" for u, v in self.directed_edges()]
        parts += [f"{u}-{v}" for u, v in self.undirected_edges()]
        return "MixedGraph(" + ", ".join(sorted(parts)) + ")"


# ---------------------------------------------------------------------------
# neighbourhoods and induced subgraphs


def neighborhood(g: UndirectedGraph, x: Iterable[int]) -> frozenset[int]:
    """All vertices adjacent to some vertex of ``x``.

    Members of ``x`` appear only if they have a neighbour in ``x``; callers
    wanting ``x | N(x)`` form the union themselves.
    """
    x = g.check_vertices(x)
    out: set[int] = set()
    for v in x:
        out.update(g.neighbors(v))
    return frozenset(out)


def induced_subgraph(g: MixedGraph, x: Iterable[int]) -> tuple[MixedGraph, dict[int, int]]:
    """Induced subgraph on ``x`` relabeled to ``range(len(x))`` in sorted order."""
    x = frozenset(x)
    missing = x.difference(g.nodes)
    if missing:
        raise VertexOutOfRange(f"vertices {sorted(missing)} not in graph")
    relabel = {v: i for i, v in enumerate(sorted(x))}
    return g.restrict(x).relabel(relabel), relabel


# ---------------------------------------------------------------------------
# chordality


def max_cardinality_search(g: UndirectedGraph, start: int = 0) -> list[int]:
    """Visit order of maximum-cardinality search; O(n + m) with buckets."""
    n = g.n
    if n == 0:
        return []
    weight = [0] * n
    buckets: list[set[int]] = [set(range(n))]
    numbered = [False] * n
    order = []
    top = 0
    first = True
    while len(order) < n:
        while top > 0 and not buckets[top]:
            top -= 1
        if first:
            v = start
            buckets[0].discard(v)
            first = False
        else:
            v = min(buckets[top])
            buckets[top].discard(v)
        numbered[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not numbered[w]:
                buckets[weight[w]].discard(w)
                weight[w] += 1
                if weight[w] == len(buckets):
                    buckets.append(set())
                buckets[weight[w]].add(w)
                top = max(top, weight[w])
    return order


def earlier_neighbors_form_cliques(g: UndirectedGraph, order: list[int]) -> bool:
    """True iff, for every vertex, its neighbours preceding it in ``order`` are a clique."""
    rank = [0] * g.n
    for i, v in enumerate(order):
        rank[v] = i
    for v in order:
        earlier = [w for w in g.adj[v] if rank[w] < rank[v]]
        if len(earlier) < 2:
            continue
        # the latest earlier neighbour must see all the others (perfect elimination test)
        p = max(earlier, key=rank.__getitem__)
        pn = g.neighbors(p)
        if any(w != p and w not in pn for w in earlier):
            return False
    return True


def is_chordal(g: UndirectedGraph) -> bool:
    """Every cycle of length at least four has a chord."""
    return earlier_neighbors_form_cliques(g, max_cardinality_search(g))


@dataclass(frozen=True)
class LbfsOrder:
    order: tuple[int, ...]
    rank: tuple[int, ...]


def lbfs_from_clique(g: UndirectedGraph, seed: Iterable[int]) -> LbfsOrder:
    """Lexicographic BFS whose first vertices are exactly ``seed``."""
    seed = g.check_vertices(seed)
    if not g.is_clique(seed):
        raise SeedNotClique(f"{sorted(seed)} is not a clique")
    if not g.is_connected():
        raise NotConnected("lbfs_from_clique needs a connected graph")
    if not is_chordal(g):
        raise NotChordal("graph has a chordless cycle")
    n = g.n
    labels: list[list[int]] = [[] for _ in range(n)]
    done = [False] * n
    order: list[int] = []
    for step in range(n, 0, -1):
        best = None
        for v in range(n):
            if done[v]:
                continue
            # ties go to seed vertices, then to the smaller label
            cand = (labels[v], v in seed, -v)
            if best is None or cand > best[0]:
                best = (cand, v)
        v = best[1]
        done[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not done[w]:
                labels[w].append(step)
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    assert set(order[: len(seed)]) == seed
    assert earlier_neighbors_form_cliques(g, order)
    return LbfsOrder(tuple(order), tuple(rank))


# ---------------------------------------------------------------------------
# clique trees


@dataclass(frozen=True)
class CliqueTree:
    cliques: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def neighbors(self, i: int) -> list[int]:
        return sorted({b for a, b in self.tree_edges if a == i} | {a for a, b in self.tree_edges if b == i})

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.cliques]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.cliques)

    def path(self, i: int, j: int) -> list[int]:
        adj = self.adjacency()
        prev = {i: None}
        queue = deque([i])
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                if b not in prev:
                    prev[b] = a
                    queue.append(b)
        out = [j]
        while out[-1] != i:
            out.append(prev[out[-1]])
        return out[::-1]

    def is_tree(self) -> bool:
        k = len(self.cliques)
        if len(self.tree_edges) != max(k - 1, 0):
            return False
        if k == 0:
            return True
        adj = self.adjacency()
        seen, stack = {0}, [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == k

    def has_intersection_property(self) -> bool:
        for i, j in combinations(range(len(self.cliques)), 2):
            common = self.cliques[i] & self.cliques[j]
            if any(not common <= self.cliques[z] for z in self.path(i, j)):
                return False
        return True


def build_clique_tree(g: UndirectedGraph) -> CliqueTree:
    """Clique tree of a connected chordal graph from a maximum-cardinality search."""
    if not g.is_connected():
        raise NotConnected("clique trees are built for connected graphs only")
    order = max_cardinality_search(g)
    if not earlier_neighbors_form_cliques(g, order):
        raise NotChordal("graph has a chordless cycle")
    visited = set()
    clique_of: dict[int, int] = {}
    cliques: list[set[int]] = []
    edges: list[tuple[int, int]] = []
    rank = {v: i for i, v in enumerate(order)}
    prev_card = 0
    for v in order:
        earlier = [w for w in g.adj[v] if w in visited]
        card = len(earlier)
        if card <= prev_card:
            cliques.append(set(earlier) | {v})
            if card > 0:
                anchor = max(earlier, key=rank.__getitem__)
                edges.append((clique_of[anchor], len(cliques) - 1))
        else:
            cliques[-1].add(v)
        clique_of[v] = len(cliques) - 1
        visited.add(v)
        prev_card = card
    tree = CliqueTree(tuple(frozenset(c) for c in cliques), tuple(edges))
    if len(cliques) <= 32:
        assert tree.is_tree() and tree.has_intersection_property()
    return tree


def cut_clique_tree_edge(
    t: CliqueTree, e: tuple[int, int]
) -> tuple[CliqueTree, CliqueTree, frozenset[int], frozenset[int]]:
    """Remove the tree edge ``e = (r1, r2)``.

    Returns the subtree holding ``r1``, the subtree holding ``r2`` (both
    reindexed, with the original relative clique order kept) and the vertex
    sets they cover.
    """
    r1, r2 = e
    if (r1, r2) not in t.tree_edges and (r2, r1) not in t.tree_edges:
        raise EdgeNotInTree(f"{e} is not an edge of the clique tree")
    adj = t.adjacency()
    side = {r1}
    stack = [r1]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in side and not (a == r1 and b == r2):
                side.add(b)
                stack.append(b)

    def sub(keep):
        idx = sorted(keep)
        remap = {c: i for i, c in enumerate(idx)}
        tree_edges = tuple(
            (remap[a], remap[b]) for a, b in t.tree_edges if a in remap and b in remap
        )
        cl = tuple(t.cliques[c] for c in idx)
        return CliqueTree(cl, tree_edges), frozenset().union(*cl)

    t1, v1 = sub(side)
    t2, v2 = sub(set(range(len(t.cliques))) - side)
    return t1, t2, v1, v2
