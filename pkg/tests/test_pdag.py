import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meccount.errors import NotADirectedEdge, NotSynchronous
from meccount.generators import complete_graph, path_graph, random_chordal_graph
from meccount.graph import BACKWARD, FORWARD, UNDIRECTED, MixedGraph, UndirectedGraph
from meccount.oracle import enumerate_mecs
from meccount.pdag import (
    are_synchronous,
    chain_components,
    has_induced_arrow_line,
    is_chain_graph,
    is_mec,
    is_partial_mec,
    is_strongly_protected,
    markov_union,
    v_structures,
)

from instances import C4, DIAMOND

a, b, c, d = 0, 1, 2, 3


def mixed(n, directed=(), undirected=()):
    return MixedGraph.build(range(n), directed=directed, undirected=undirected)


@st.composite
def small_skeletons(draw, max_n=6, max_m=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    return UndirectedGraph(n, edges)


@st.composite
def mixed_graphs(draw, max_n=6):
    g = draw(small_skeletons(max_n))
    marks = tuple(draw(st.sampled_from((UNDIRECTED, FORWARD, BACKWARD))) for _ in g.edges)
    return MixedGraph(tuple(range(g.n)), g.edges, marks)


@st.composite
def dags(draw, max_n=6):
    g = draw(small_skeletons(max_n))
    perm = draw(st.permutations(range(g.n)))
    pos = {v: i for i, v in enumerate(perm)}
    marks = tuple(FORWARD if pos[u] < pos[v] else BACKWARD for u, v in g.edges)
    return MixedGraph(tuple(range(g.n)), g.edges, marks)


# -- v-structures ----------------------------------------------------------


def test_v_structure_examples():
    assert v_structures(mixed(3, [(a, b), (c, b)])) == {(a, b, c)}
    assert v_structures(MixedGraph.from_skeleton(DIAMOND)) == frozenset()
    assert v_structures(mixed(3, [(a, b), (c, b)], [(a, c)])) == frozenset()


@settings(max_examples=200, deadline=None)
@given(dags(), dags())
def test_v_structures_agree_iff_collider_triples_agree(g, h):
    if g.skeleton() != h.skeleton():
        return
    triples = [
        (x, y, z)
        for y in g.nodes
        for x, z in combinations(sorted(g.neighbors(y)), 2)
        if not g.adjacent(x, z)
    ]
    same = all(
        (g.is_directed(x, y) and g.is_directed(z, y)) == (h.is_directed(x, y) and h.is_directed(z, y))
        for x, y, z in triples
    )
    assert (v_structures(g) == v_structures(h)) == same


# -- chain graphs ----------------------------------------------------------


def test_chain_graph_examples():
    assert not is_chain_graph(mixed(3, [(a, b)], [(b, c), (c, a)]))
    assert is_chain_graph(mixed(3, [(a, b), (a, c)], [(b, c)]))
    assert is_chain_graph(MixedGraph.from_skeleton(C4))
    assert not is_chain_graph(mixed(3, [(a, b), (b, c), (c, a)]))


def test_chain_component_examples():
    assert chain_components(MixedGraph.from_skeleton(DIAMOND)).components == ((0, 1, 2, 3),)
    full = mixed(3, [(a, b), (b, c), (a, c)])
    assert chain_components(full).components == ((0,), (1,), (2,))
    cc = chain_components(mixed(3, [(b, c)], [(a, b)]))
    assert cc.components == ((0, 1), (2,))
    assert cc.index[a] == cc.index[b] != cc.index[c]


@settings(max_examples=200, deadline=None)
@given(mixed_graphs())
def test_chain_components_follow_undirected_paths(m):
    cc = chain_components(m)
    for u, v in m.undirected_edges():
        assert cc.index[u] == cc.index[v]
    assert sorted(x for comp in cc.components for x in comp) == list(m.nodes)


# -- strong protection -----------------------------------------------------


def test_protection_patterns():
    w, u, v = 0, 1, 2
    assert is_strongly_protected(mixed(3, [(w, u), (u, v)]), u, v)  # a
    assert not is_strongly_protected(mixed(2, [(0, 1)]), 0, 1)
    assert is_strongly_protected(mixed(3, [(u, v), (w, v)]), u, v)  # b
    assert is_strongly_protected(mixed(3, [(u, w), (w, v), (u, v)]), u, v)  # c
    # d: w - u - w', w -> v <- w', u -> v, w and w' non-adjacent
    u, v, w1, w2 = 0, 1, 2, 3
    m = mixed(4, [(w1, v), (w2, v), (u, v)], [(w1, u), (u, w2)])
    assert is_strongly_protected(m, u, v)
    m_adj = mixed(4, [(w1, v), (w2, v), (u, v)], [(w1, u), (u, w2), (w1, w2)])
    assert not is_strongly_protected(m_adj, u, v)


def test_protection_needs_directed_edge():
    with pytest.raises(NotADirectedEdge):
        is_strongly_protected(mixed(2, [], [(0, 1)]), 0, 1)
    with pytest.raises(NotADirectedEdge):
        is_strongly_protected(mixed(2, [(1, 0)]), 0, 1)


# -- MEC and partial MEC ---------------------------------------------------


def test_mec_examples():
    assert is_mec(MixedGraph.from_skeleton(DIAMOND))
    assert not is_mec(mixed(3, [(a, b)], [(b, c)]))
    assert is_mec(mixed(3, [(a, b), (c, b)]))
    assert not is_mec(MixedGraph.from_skeleton(C4))
    assert has_induced_arrow_line(mixed(3, [(a, b)], [(b, c)]))


def test_partial_mec_examples():
    lone = mixed(2, [(0, 1)])
    assert is_partial_mec(lone) and not is_mec(lone)
    assert not is_partial_mec(mixed(3, [(a, b)], [(b, c)]))


@settings(max_examples=300, deadline=None)
@given(mixed_graphs())
def test_every_mec_is_a_partial_mec(m):
    if is_mec(m):
        assert is_partial_mec(m)


def oracle_cpdags(seed_count=60, max_n=7):
    rng = random.Random(11)
    out = []
    for _ in range(seed_count):
        n = rng.randint(1, max_n)
        g = random_chordal_graph(n, rng) if rng.random() < 0.5 else UndirectedGraph(
            n, [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        )
        if g.m <= 12:
            out.extend(c.cpdag for c in enumerate_mecs(g))
    return out


def test_oracle_cpdags_are_mecs_and_images_are_partial():
    cpdags = oracle_cpdags()
    assert len(cpdags) > 100
    for m in cpdags:
        assert is_mec(m)
        if len(m.nodes) <= 6:
            for k in range(len(m.nodes) + 1):
                for x in combinations(m.nodes, k):
                    assert is_partial_mec(m.restrict(x))


# -- synchronous graphs and Markov union -----------------------------------


def test_synchronous_examples():
    x, y = 0, 1
    assert are_synchronous(MixedGraph.build([0, 1], [(0, 1)]), MixedGraph.build([5, 6], [(5, 6)]))
    assert not are_synchronous(mixed(2, [(x, y)]), mixed(2, [(y, x)]))
    assert are_synchronous(mixed(2, [(x, y)]), mixed(2, [], [(x, y)]))
    assert not are_synchronous(mixed(2, [(x, y)]), MixedGraph.build([7, 8], [(8, 7)]), {0: 7, 1: 8})


def test_markov_union_examples():
    g1 = mixed(3, [], [(a, b)])
    assert markov_union([g1], range(3)) == g1
    assert markov_union([mixed(2, [], [(a, b)]), mixed(2, [(a, b)])]) == mixed(2, [(a, b)])
    assert markov_union([MixedGraph.build([0, 1], [], [(0, 1)]), MixedGraph.build([1, 2], [], [(1, 2)])]) == mixed(
        3, [], [(a, b), (b, c)]
    )
    with pytest.raises(NotSynchronous):
        markov_union([mixed(2, [(a, b)]), mixed(2, [(b, a)])])


@settings(max_examples=200, deadline=None)
@given(st.lists(mixed_graphs(max_n=5), min_size=1, max_size=4), st.randoms())
def test_markov_union_is_a_set_operation(graphs, rnd):
    try:
        base = markov_union(graphs, range(5))
    except NotSynchronous:
        return
    shuffled = list(graphs)
    rnd.shuffle(shuffled)
    assert markov_union(shuffled, range(5)) == base
    assert markov_union(graphs + graphs[:1], range(5)) == base
    for g in graphs:
        for u, v in g.directed_edges():
            assert base.is_directed(u, v)
