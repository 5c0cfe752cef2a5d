"""Polynomial MEC counting for tree skeletons.

For a tree rooted at ``r`` the MECs split by what happens at ``r``:
``n1`` counts MECs with an edge pointing into ``r``; ``c[i]`` counts MECs
with no edge into ``r`` and exactly ``i`` undirected edges at ``r`` (the
rest point away).  Cutting an edge ``r - r2`` and combining the vectors of
both sides gives the vector of the whole tree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpz

from .errors import NotATree, NotConnected, VertexOutOfRange
from .graph import UndirectedGraph


@dataclass(frozen=True)
class TreeCountVector:
    n1: int
    c: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def total(self) -> int:
        return self.n1 + sum(self.c)


LEAF = TreeCountVector(0, (1,))
# the fold runs on GMP integers: path counts reach tens of thousands of bits
_ZERO = mpz(0)
_LEAF_Z = TreeCountVector(_ZERO, (mpz(1),))


def _scaled(k: int, x: int) -> int:
    if k == 0 or x == 0:
        return 0
    return x if k == 1 else k * x


def merge_counts(left: TreeCountVector, right: TreeCountVector) -> TreeCountVector:
    """Vector of ``(G, r1)`` from the vectors of ``(G1, r1)`` and ``(G2, r2)``.

    ``G`` is ``G1`` and ``G2`` joined by the edge ``r1 - r2``; the root
    degree grows by one.
    """
    b1, c1 = left.n1, left.c
    b2, c2 = right.n1, right.c
    n0_2 = sum(c2)
    weighted = 0
    for j in range(1, len(c2)):
        weighted += _scaled(j, c2[j])
    # zero and unit factors are skipped: counts can run to many thousands of bits
    b = _scaled(b1, 2 * (b2 + n0_2) + weighted) if b1 else 0
    for i, x in enumerate(c1):
        if x:
            b += _scaled(x, _scaled(i + 1, b2) + _scaled(i, n0_2))
    keep = b2 + weighted
    c = [_scaled(x, keep) for x in c1]
    c.append(0)
    for i, x in enumerate(c1):
        if x:
            c[i + 1] += _scaled(x, n0_2)
    return TreeCountVector(b, tuple(c))


def _check_tree(g: UndirectedGraph, r1: int) -> None:
    if not (isinstance(r1, int) and 0 <= r1 < g.n):
        raise VertexOutOfRange(f"root {r1!r} outside range(0, {g.n})")
    if not g.is_connected():
        raise NotConnected("tree counting needs a connected graph")
    if g.m != g.n - 1:
        raise NotATree(f"{g.n} nodes and {g.m} edges is not a tree")


def count_tree_rooted(g: UndirectedGraph, r1: int, rng: random.Random | None = None) -> TreeCountVector:
    """Root vector of the tree ``g`` at ``r1``.

    Children are folded into their parent one edge at a time, deepest first,
    so the recursion depth is constant.  The edge cut first at each vertex is
    the one to its smallest-labelled child; pass ``rng`` to shuffle that
    choice instead.
    """
    _check_tree(g, r1)
    parent = [-1] * g.n
    order = [r1]
    seen = [False] * g.n
    seen[r1] = True
    for u in order:
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    vec: list[TreeCountVector | None] = [None] * g.n
    for u in reversed(order):
        kids = [w for w in g.adj[u] if w != parent[u]]
        if rng is not None:
            rng.shuffle(kids)
        acc = _LEAF_Z
        # the first cut edge is merged last
        for w in reversed(kids):
            acc = merge_counts(acc, vec[w])
            vec[w] = None
        vec[u] = acc
    root = vec[r1]
    return TreeCountVector(int(root.n1), tuple(int(x) for x in root.c))


def count_tree_rooted_recursive(g: UndirectedGraph, r1: int, rng: random.Random | None = None) -> TreeCountVector:
    """Literal cut-and-recurse form, kept for cross-checking on small trees."""
    _check_tree(g, r1)
    if g.degree(r1) == 0:
        return LEAF
    nbrs = list(g.adj[r1])
    r2 = rng.choice(nbrs) if rng is not None else nbrs[0]
    # vertices reachable from r2 without using the edge r1 - r2
    side2 = {r2}
    stack = [r2]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in side2 and w != r1:
                side2.add(w)
                stack.append(w)
    side1 = set(range(g.n)) - side2
    g1, map1 = g.induced(side1)
    g2, map2 = g.induced(side2)
    left = count_tree_rooted_recursive(g1, map1[r1], rng)
    right = count_tree_rooted_recursive(g2, map2[r2], rng)
    return merge_counts(left, right)


def count_tree_total(g: UndirectedGraph, r1: int = 0) -> int:
    """Number of MECs whose skeleton is the tree ``g``."""
    return count_tree_rooted(g, r1).total()
