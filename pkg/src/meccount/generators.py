"""Instance families for tests and benchmarks."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import InfeasibleSpec
from .graph import UndirectedGraph, build_clique_tree, is_chordal

FAMILIES = ("path", "star", "caterpillar", "complete", "random_tree", "random_chordal")
MAX_TRIES = 1000


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    max_degree: int | None = None
    max_clique: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InfeasibleSpec(f"unknown family {self.family!r}")
        if self.n < 1:
            raise InfeasibleSpec("n must be at least 1")
        for name in ("max_degree", "max_clique"):
            val = getattr(self, name)
            if val is not None and val < 1:
                raise InfeasibleSpec(f"{name} must be positive")


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> UndirectedGraph:
    return UndirectedGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def caterpillar_graph(legs: list[int]) -> UndirectedGraph:
    """Spine ``0..len(legs)-1`` with ``legs[i]`` pendant vertices on spine vertex ``i``."""
    s = len(legs)
    edges = [(i, i + 1) for i in range(s - 1)]
    nxt = s
    for i, k in enumerate(legs):
        for _ in range(k):
            edges.append((i, nxt))
            nxt += 1
    return UndirectedGraph(nxt, edges)


def all_caterpillars(n: int) -> Iterator[UndirectedGraph]:
    """Every spine length and leg distribution giving ``n`` vertices."""
    for s in range(1, n + 1):
        rest = n - s
        for legs in product(range(rest + 1), repeat=s):
            if sum(legs) == rest:
                yield caterpillar_graph(list(legs))


def prufer_tree(n: int, rng: random.Random) -> UndirectedGraph:
    """Uniform labeled tree on ``n`` vertices."""
    if n <= 2:
        return path_graph(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return UndirectedGraph(n, edges)


def random_chordal_graph(n: int, rng: random.Random, max_clique: int | None = None) -> UndirectedGraph:
    """Connected chordal graph grown by adding simplicial vertices.

    Each new vertex is joined to a random non-empty subset of a randomly
    chosen clique built so far, so the insertion order reversed is a perfect
    elimination ordering.
    """
    cap = (max_clique or n) - 1
    cliques: list[list[int]] = [[0]]
    edges = []
    for v in range(1, n):
        base = rng.choice(cliques)
        size = rng.randint(1, max(1, min(cap, len(base))))
        attach = rng.sample(base, size)
        edges.extend((u, v) for u in attach)
        cliques.append(attach + [v])
    return UndirectedGraph(n, edges)


def generate(spec: GenSpec) -> UndirectedGraph:
    n, d = spec.n, spec.max_degree
    if spec.family == "path":
        if d is not None and n >= 3 and d < 2:
            raise InfeasibleSpec("a path on 3 or more vertices needs degree 2")
        return path_graph(n)
    if spec.family == "star":
        if d is not None and n - 1 > d:
            raise InfeasibleSpec(f"star on {n} vertices has degree {n - 1}")
        return star_graph(n - 1)
    if spec.family == "complete":
        if d is not None and n - 1 > d:
            raise InfeasibleSpec(f"K_{n} has degree {n - 1}")
        return complete_graph(n)
    if spec.family == "caterpillar":
        spine = (n + 1) // 2
        legs = [0] * spine
        for i in range(n - spine):
            legs[i % spine] += 1
        g = caterpillar_graph(legs)
        if d is not None and g.max_degree() > d:
            raise InfeasibleSpec(f"caterpillar on {n} vertices has degree {g.max_degree()}")
        return g
    rng = random.Random(spec.seed)
    for _ in range(MAX_TRIES):
        if spec.family == "random_tree":
            g = prufer_tree(n, rng)
        else:
            g = random_chordal_graph(n, rng, spec.max_clique)
        if d is None or g.max_degree() <= d:
            return g
    raise InfeasibleSpec(f"no {spec.family} with degree <= {d} after {MAX_TRIES} tries")


@dataclass(frozen=True)
class FamilyStats:
    n: int
    m: int
    d: int
    k: int | None


def family_stats(g: UndirectedGraph) -> FamilyStats:
    """Size, edge count, maximum degree and (for chordal graphs) clique number minus one."""
    k = None
    if is_chordal(g):
        k = 0
        for comp in g.components():
            sub, _ = g.induced(comp)
            if sub.n > 1:
                k = max(k, max(len(c) for c in build_clique_tree(sub).cliques) - 1)
    return FamilyStats(g.n, g.m, g.max_degree(), k)
