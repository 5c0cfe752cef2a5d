"""Fixed-parameter MEC counting for chordal skeletons by dynamic programming
over a clique tree.

For a clique ``r`` of the tree and the subgraph ``G`` covered by the part of
the tree processed so far, the table maps every partial MEC ``O`` of the
window ``G[r | N(r, G)]`` to the number of MECs of ``G`` whose induced
subgraph on that window is ``O``.  Tables of two sides of a tree edge are
combined through the extension relation.

Orientations inside this module are plain tuples of marks aligned with the
sorted edge list of a window (see :class:`Window`); vertices keep the labels
of the input graph throughout.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidCliqueTree, NotChordal, NotConnected, VertexOutOfRange, WindowMismatch
from .graph import (
    BACKWARD,
    FORWARD,
    UNDIRECTED,
    CliqueTree,
    MixedGraph,
    UndirectedGraph,
    build_clique_tree,
    is_chordal,
)
from .pdag import is_strongly_protected, v_structures

Marks = tuple[int, ...]


class Window:
    """Induced subgraph of ``g`` on a vertex set, with per-edge indexing."""

    def __init__(self, g: UndirectedGraph, nodes: Iterable[int]):
        nodeset = g.check_vertices(nodes)
        self.nodes: tuple[int, ...] = tuple(sorted(nodeset))
        self.nodeset = nodeset
        self.adj = {v: g.neighbors(v) & nodeset for v in self.nodes}
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in self.nodes for v in sorted(self.adj[u]) if u < v
        )
        self.index = {e: i for i, e in enumerate(self.edges)}
        # inc[v]: (edge index, other endpoint, mark meaning "into v", mark meaning "out of v")
        self.inc: dict[int, list[tuple[int, int, int, int]]] = {v: [] for v in self.nodes}
        for i, (u, v) in enumerate(self.edges):
            self.inc[u].append((i, v, BACKWARD, FORWARD))
            self.inc[v].append((i, u, FORWARD, BACKWARD))
        self.m = len(self.edges)
        self._chordal: bool | None = None

    @property
    def chordal(self) -> bool:
        if self._chordal is None:
            relabel = {v: i for i, v in enumerate(self.nodes)}
            sk = UndirectedGraph(len(self.nodes), [(relabel[u], relabel[v]) for u, v in self.edges])
            self._chordal = is_chordal(sk)
        return self._chordal

    def projector(self, sub: "Window") -> tuple[int, ...]:
        """Indices into this window's marks that give ``sub``'s marks."""
        return tuple(self.index[e] for e in sub.edges)

    def to_mixed(self, marks: Marks) -> MixedGraph:
        return MixedGraph(self.nodes, self.edges, tuple(marks))

    def marks_of(self, o: MixedGraph) -> Marks:
        if tuple(o.nodes) != self.nodes or tuple(o.edges) != self.edges:
            raise WindowMismatch("mixed graph does not live on this window")
        return tuple(o.marks)

    # -- local predicates on a mark tuple --------------------------------
    def parents(self, mk: Marks, v: int) -> list[int]:
        return [w for i, w, into, _ in self.inc[v] if mk[i] == into]

    def protected(self, mk: Marks, u: int, v: int) -> bool:
        """Strong protection of the directed edge ``u -> v``."""
        adj_u, adj_v = self.adj[u], self.adj[v]
        for i, w, into, _ in self.inc[u]:
            if mk[i] == into and w not in adj_v:
                return True
        pa_v = [w for i, w, into, _ in self.inc[v] if mk[i] == into and w != u]
        und_u = []
        for w in pa_v:
            if w not in adj_u:
                return True
            k = self.index[(u, w) if u < w else (w, u)]
            mark = mk[k]
            if mark == UNDIRECTED:
                und_u.append(w)
            elif (mark == FORWARD) == (u < w):
                return True  # u -> w -> v
        for w, x in combinations(und_u, 2):
            if x not in self.adj[w]:
                return True
        return False

    def vstruct_edges(self, mk: Marks) -> set[int]:
        """Edge indices taking part in some v-structure."""
        out: set[int] = set()
        for b in self.nodes:
            pa = [(i, w) for i, w, into, _ in self.inc[b] if mk[i] == into]
            for (i, a), (j, c) in combinations(pa, 2):
                if c not in self.adj[a]:
                    out.add(i)
                    out.add(j)
        return out

    def vstructs(self, mk: Marks) -> frozenset[tuple[int, int, int]]:
        out = set()
        for b in self.nodes:
            pa = sorted(w for i, w, into, _ in self.inc[b] if mk[i] == into)
            for a, c in combinations(pa, 2):
                if c not in self.adj[a]:
                    out.add((a, b, c))
        return frozenset(out)

    def _chain_ok(self, mk: Marks) -> bool:
        # contract undirected components; the quotient must be acyclic
        comp = {}
        for s in self.nodes:
            if s in comp:
                continue
            comp[s] = s
            stack = [s]
            while stack:
                u = stack.pop()
                for i, w, _, _ in self.inc[u]:
                    if mk[i] == UNDIRECTED and w not in comp:
                        comp[w] = s
                        stack.append(w)
        succ: dict[int, set[int]] = {}
        indeg: dict[int, int] = dict.fromkeys(set(comp.values()), 0)
        for (u, v), mark in zip(self.edges, mk):
            if mark == UNDIRECTED:
                continue
            a, b = (u, v) if mark == FORWARD else (v, u)
            ca, cb = comp[a], comp[b]
            if ca == cb:
                return False
            if cb not in succ.setdefault(ca, set()):
                succ[ca].add(cb)
                indeg[cb] += 1
        queue = [c for c, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            c = queue.pop()
            seen += 1
            for d in succ.get(c, ()):
                indeg[d] -= 1
                if indeg[d] == 0:
                    queue.append(d)
        if seen != len(indeg):
            return False
        if not self.chordal:
            groups: dict[int, list[int]] = {}
            for v, c in comp.items():
                groups.setdefault(c, []).append(v)
            for members in groups.values():
                if len(members) < 4:
                    continue
                relabel = {v: i for i, v in enumerate(members)}
                und = [
                    (relabel[u], relabel[v])
                    for (u, v), mark in zip(self.edges, mk)
                    if mark == UNDIRECTED and u in relabel and v in relabel
                ]
                if not is_chordal(UndirectedGraph(len(members), und)):
                    return False
        return True

    def partial_mecs(self) -> list[Marks]:
        """Every partial-MEC orientation of the window, by pruned backtracking."""
        if self.m == 0:
            return [()]
        order = self._edge_order()
        pos = {e: k for k, e in enumerate(order)}
        checks: list[list[tuple]] = [[] for _ in order]
        for b in self.nodes:
            for (i, a, in_a, _), (j, c, in_c, _) in combinations(self.inc[b], 2):
                k = max(pos[i], pos[j])
                if c not in self.adj[a]:
                    # forbid a -> b - c and c -> b - a
                    checks[k].append((0, i, in_a, j, in_c))
        for a in self.nodes:
            for b, c in combinations(sorted(self.adj[a]), 2):
                if a < b and a < c and c in self.adj[b]:
                    e_ab = self.index[(a, b)]
                    e_bc = self.index[(b, c)]
                    e_ac = self.index[(a, c)]
                    k = max(pos[e_ab], pos[e_bc], pos[e_ac])
                    # cycle a -> b -> c -> a: ab FORWARD, bc FORWARD, ac BACKWARD
                    checks[k].append((1, e_ab, FORWARD, e_bc, FORWARD, e_ac, BACKWARD))
                    checks[k].append((1, e_ab, BACKWARD, e_bc, BACKWARD, e_ac, FORWARD))
        cur = [UNDIRECTED] * self.m
        out: list[Marks] = []
        need_leaf = not self.chordal

        def ok(k):
            for chk in checks[k]:
                if chk[0] == 0:
                    _, i, in_a, j, in_c = chk
                    if (cur[i] == in_a and cur[j] == UNDIRECTED) or (
                        cur[j] == in_c and cur[i] == UNDIRECTED
                    ):
                        return False
                else:
                    _, e1, d1, e2, d2, e3, d3 = chk
                    m1, m2, m3 = cur[e1], cur[e2], cur[e3]
                    if (
                        m1 in (UNDIRECTED, d1)
                        and m2 in (UNDIRECTED, d2)
                        and m3 in (UNDIRECTED, d3)
                        and (m1 | m2 | m3)
                    ):
                        return False
            return True

        def rec(k):
            if k == len(order):
                mk = tuple(cur)
                if not need_leaf or self._chain_ok(mk):
                    out.append(mk)
                return
            e = order[k]
            for mark in (UNDIRECTED, FORWARD, BACKWARD):
                cur[e] = mark
                if ok(k):
                    rec(k + 1)
            cur[e] = UNDIRECTED

        rec(0)
        return out

    def _edge_order(self) -> list[int]:
        # edges appear as soon as both ends are reached by BFS, so local checks fire early
        rank: dict[int, int] = {}
        for s in self.nodes:
            if s in rank:
                continue
            rank[s] = len(rank)
            queue = [s]
            for u in queue:
                for w in sorted(self.adj[u]):
                    if w not in rank:
                        rank[w] = len(rank)
                        queue.append(w)
        return sorted(
            range(self.m),
            key=lambda i: (max(rank[self.edges[i][0]], rank[self.edges[i][1]]),
                           min(rank[self.edges[i][0]], rank[self.edges[i][1]])),
        )


# ---------------------------------------------------------------------------
# public helpers on MixedGraph


def enumerate_partial_mecs(g: UndirectedGraph, window: Iterable[int]) -> list[MixedGraph]:
    """All partial MECs whose skeleton is ``g[window]``, sorted by canonical key."""
    w = Window(g, window)
    return sorted((w.to_mixed(mk) for mk in w.partial_mecs()), key=MixedGraph.key)


def restrict_partial_mec(o: MixedGraph, x_prime: Iterable[int]) -> MixedGraph:
    return o.restrict(x_prime)


@dataclass(frozen=True)
class ExtensionWindow:
    x: frozenset[int]
    x1: frozenset[int]
    x2: frozenset[int]
    separator: frozenset[int]


def extension_window(
    g: UndirectedGraph, r1: Iterable[int], r2: Iterable[int], v1: Iterable[int], v2: Iterable[int]
) -> ExtensionWindow:
    """Windows around the clique-tree edge ``r1 - r2`` splitting ``g[v1 | v2]`` into ``g[v1]`` and ``g[v2]``."""
    r1, r2, v1, v2 = map(frozenset, (r1, r2, v1, v2))
    both = v1 | v2

    def around(r, within):
        out = set(r)
        for v in r:
            out.update(g.neighbors(v) & within)
        return frozenset(out)

    return ExtensionWindow(
        x=around(r1 | r2, both), x1=around(r1, v1), x2=around(r2, v2), separator=r1 & r2
    )


def is_extension(o: MixedGraph, o1: MixedGraph, o2: MixedGraph, w: ExtensionWindow) -> bool:
    """Whether ``o`` extends the pair ``(o1, o2)``.

    Checks, for each side: every directed edge of the side is directed the
    same way in ``o``; the side and ``o`` restricted to the side's vertices
    have the same v-structures; an edge undirected on the side but directed
    in ``o`` is strongly protected in ``o``.
    """
    if frozenset(o.nodes) != w.x or frozenset(o1.nodes) != w.x1 or frozenset(o2.nodes) != w.x2:
        raise WindowMismatch("partial MECs do not match the extension window")
    if not (w.x1 <= w.x and w.x2 <= w.x):
        raise WindowMismatch("side windows must lie inside the merged window")
    for side in (o1, o2):
        for u, v in side.directed_edges():
            if not o.is_directed(u, v):
                return False
    for side in (o1, o2):
        if v_structures(o.restrict(side.nodes)) - v_structures(side):
            return False
    for side in (o1, o2):
        for u, v in side.undirected_edges():
            for a, b in ((u, v), (v, u)):
                if o.is_directed(a, b) and not is_strongly_protected(o, a, b):
                    return False
    return True


# ---------------------------------------------------------------------------
# the dynamic program


@dataclass
class PartialMecTable:
    """Counts of MECs of a subgraph keyed by their image on ``window``.

    Only non-zero entries are stored; missing partial MECs count zero.
    """

    window: Window
    counts: dict[Marks, int] = field(default_factory=dict)

    @property
    def nodes(self) -> tuple[int, ...]:
        return self.window.nodes

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, o: MixedGraph) -> int:
        return self.counts.get(self.window.marks_of(o), 0)

    def __len__(self) -> int:
        return len(self.counts)

    def items(self) -> Iterator[tuple[MixedGraph, int]]:
        for mk in sorted(self.counts, key=lambda mk: self.window.to_mixed(mk).key()):
            yield self.window.to_mixed(mk), self.counts[mk]

    def encoded(self) -> dict[bytes, int]:
        return {self.window.to_mixed(mk).key(): c for mk, c in self.counts.items()}


@dataclass
class _Side:
    window: Window
    counts: dict[Marks, int]
    vertices: frozenset[int]


def _side_sum(
    w_side: Window, counts: dict[Marks, int], ref: Marks, free: tuple[int, ...]
) -> int:
    """Sum of ``counts`` over orientations equal to ``ref`` except that edges in
    ``free`` may also be undirected."""
    k = len(free)
    if k == 0:
        return counts.get(ref, 0)
    if (1 << k) <= 4 * len(counts):
        total = 0
        base = list(ref)
        for mask in range(1 << k):
            for b, j in enumerate(free):
                base[j] = UNDIRECTED if mask >> b & 1 else ref[j]
            total += counts.get(tuple(base), 0)
        return total
    freeset = set(free)
    total = 0
    for mk, c in counts.items():
        for j, (a, r) in enumerate(zip(mk, ref)):
            if a != r and not (j in freeset and a == UNDIRECTED):
                break
        else:
            total += c
    return total


def _combine(g: UndirectedGraph, r1, r2, s1: _Side, s2: _Side) -> _Side:
    both = s1.vertices | s2.vertices
    ew = extension_window(g, r1, r2, s1.vertices, s2.vertices)
    w = Window(g, ew.x)
    out_w = Window(g, set(r1) | {x for v in r1 for x in g.neighbors(v) & both})
    proj_out = w.projector(out_w)
    sides = []
    for s in (s1, s2):
        if s.window.nodeset != (ew.x1 if s is s1 else ew.x2):
            raise WindowMismatch("table window does not match the cut")
        proj = w.projector(s.window)
        sides.append((s, proj, {}))
    out: dict[Marks, int] = {}
    for mk in w.partial_mecs():
        prot: dict[int, bool] = {}
        prod = 1
        for s, proj, cache in sides:
            ref = tuple(mk[i] for i in proj)
            free = []
            vs = None
            for j, i in enumerate(proj):
                if ref[j] == UNDIRECTED:
                    continue
                p = prot.get(i)
                if p is None:
                    u, v = w.edges[i]
                    if ref[j] == BACKWARD:
                        u, v = v, u
                    p = prot[i] = w.protected(mk, u, v)
                if p:
                    if vs is None:
                        vs = s.window.vstruct_edges(ref)
                    if j not in vs:
                        free.append(j)
            key = (ref, tuple(free))
            val = cache.get(key)
            if val is None:
                val = cache[key] = _side_sum(s.window, s.counts, ref, key[1])
            prod *= val
            if not prod:
                break
        if prod:
            k = tuple(mk[i] for i in proj_out)
            out[k] = out.get(k, 0) + prod
    return _Side(out_w, out, both)


def _combine_literal(g: UndirectedGraph, r1, r2, s1: _Side, s2: _Side) -> _Side:
    both = s1.vertices | s2.vertices
    ew = extension_window(g, r1, r2, s1.vertices, s2.vertices)
    w = Window(g, ew.x)
    x_prime = set(r1) | {x for v in r1 for x in g.neighbors(v) & both}
    out_w = Window(g, x_prime)
    merged = [w.to_mixed(mk) for mk in w.partial_mecs()]
    side2 = [(s2.counts.get(mk2, 0), s2.window.to_mixed(mk2)) for mk2 in s2.window.partial_mecs()]
    out: dict[Marks, int] = {}
    for mk1 in s1.window.partial_mecs():
        f1 = s1.counts.get(mk1, 0)
        o1 = s1.window.to_mixed(mk1)
        for f2, o2 in side2:
            for o in merged:
                if is_extension(o, o1, o2, ew):
                    k = out_w.marks_of(restrict_partial_mec(o, x_prime))
                    out[k] = out.get(k, 0) + f1 * f2
    return _Side(out_w, {k: v for k, v in out.items() if v}, both)


def _validate(g: UndirectedGraph, t: CliqueTree) -> None:
    if not g.is_connected():
        raise NotConnected("chordal counting needs a connected graph")
    if not is_chordal(g):
        raise NotChordal("graph has a chordless cycle")
    if not t.is_tree() or t.vertices() != frozenset(range(g.n)):
        raise InvalidCliqueTree("clique tree does not cover the graph or is not a tree")
    for c in t.cliques:
        if not g.is_clique(c):
            raise InvalidCliqueTree(f"{sorted(c)} is not a clique")


def count_rooted(
    g: UndirectedGraph,
    t: CliqueTree,
    r1: int,
    *,
    literal: bool = False,
    rng: random.Random | None = None,
) -> PartialMecTable:
    """Table of MEC counts of ``g`` keyed by partial MECs of ``g[r1 | N(r1)]``.

    ``r1`` indexes ``t.cliques``.  The tree is processed bottom-up; at each
    clique the edge to its smallest-indexed child is cut first, so it is
    merged last.  ``rng`` shuffles that choice, ``literal`` swaps in the
    unoptimised triple loop over all partial MECs gated by :func:`is_extension`.
    """
    _validate(g, t)
    if not 0 <= r1 < len(t.cliques):
        raise VertexOutOfRange(f"clique index {r1} out of range")
    adj = t.adjacency()
    parent = {r1: None}
    order = [r1]
    for a in order:
        for b in adj[a]:
            if b not in parent:
                parent[b] = a
                order.append(b)
    combine = _combine_literal if literal else _combine
    done: dict[int, _Side] = {}
    for a in reversed(order):
        clique = t.cliques[a]
        w = Window(g, clique)
        acc = _Side(w, {(UNDIRECTED,) * w.m: 1}, clique)
        kids = [b for b in adj[a] if b != parent[a]]
        if rng is not None:
            rng.shuffle(kids)
        for b in reversed(kids):
            acc = combine(g, clique, t.cliques[b], acc, done.pop(b))
        done[a] = acc
    root = done[r1]
    return PartialMecTable(root.window, root.counts)


def count_mec_chordal(g: UndirectedGraph, *, root: int = 0, literal: bool = False) -> int:
    """Number of MECs with the connected chordal skeleton ``g``."""
    if g.n == 1:
        return 1
    if not g.is_connected():
        raise NotConnected("chordal counting needs a connected graph")
    if not is_chordal(g):
        raise NotChordal("graph has a chordless cycle")
    t = build_clique_tree(g)
    return count_rooted(g, t, root, literal=literal).total()
