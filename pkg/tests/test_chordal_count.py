import random
from itertools import product

import pytest

import identities
from meccount.chordal_count import (
    count_mec_chordal,
    count_rooted,
    enumerate_partial_mecs,
    extension_window,
    is_extension,
    restrict_partial_mec,
)
from meccount.errors import InvalidCliqueTree, NotChordal, NotConnected, WindowMismatch
from meccount.generators import complete_graph, path_graph, star_graph
from meccount.graph import (
    BACKWARD,
    FORWARD,
    UNDIRECTED,
    CliqueTree,
    MixedGraph,
    UndirectedGraph,
    build_clique_tree,
    cut_clique_tree_edge,
    neighborhood,
)
from meccount.oracle import count_mecs_bruteforce, count_mecs_with_image, enumerate_mecs
from meccount.pdag import is_partial_mec
from meccount.tree_count import count_tree_total

from instances import C4, DIAMOND, dense_chordal_family, random_chordal_family, random_trees

FAMILY = random_chordal_family(60, seed=21)
DENSE = dense_chordal_family(25, seed=22)


# -- partial-MEC enumeration -----------------------------------------------


def hand_filter(g, window):
    sub = MixedGraph.from_skeleton(g).restrict(window)
    out = []
    for marks in product((UNDIRECTED, FORWARD, BACKWARD), repeat=len(sub.edges)):
        m = MixedGraph(sub.nodes, sub.edges, marks)
        if is_partial_mec(m):
            out.append(m)
    return sorted(out, key=MixedGraph.key)


def test_enumeration_examples():
    assert len(enumerate_partial_mecs(path_graph(2), {0, 1})) == 3
    (empty,) = enumerate_partial_mecs(UndirectedGraph(3, []), {0, 1, 2})
    assert empty.edges == ()
    p3 = enumerate_partial_mecs(path_graph(3), {0, 1, 2})
    assert len(p3) == 7
    assert p3 == hand_filter(path_graph(3), {0, 1, 2})


@pytest.mark.parametrize("g", FAMILY[:30] + DENSE[:15] + [C4], ids=str)
def test_enumeration_matches_filter(g):
    rng = random.Random(g.m)
    windows = [set(range(g.n))] + [set(rng.sample(range(g.n), rng.randint(1, g.n))) for _ in range(3)]
    for x in windows:
        if len(MixedGraph.from_skeleton(g).restrict(x).edges) <= 9:
            assert enumerate_partial_mecs(g, x) == hand_filter(g, x)


def test_restrict():
    o = MixedGraph.build([0, 1, 2], [(0, 1)], [(1, 2)])
    assert restrict_partial_mec(o, [0, 1, 2]) == o
    assert restrict_partial_mec(o, []) == MixedGraph.build([])
    assert restrict_partial_mec(o, [0]) == MixedGraph.build([0])


# -- extension predicate ---------------------------------------------------


def p3_window():
    g = path_graph(3)
    t = build_clique_tree(g)
    r1, r2 = t.tree_edges[0]
    _, _, v1, v2 = cut_clique_tree_edge(t, (r1, r2))
    return g, extension_window(g, t.cliques[r1], t.cliques[r2], v1, v2)


def test_extension_edgeless():
    g = UndirectedGraph(1, [])
    w = extension_window(g, {0}, {0}, {0}, {0})
    e = MixedGraph.build([0])
    assert is_extension(e, e, e, w)


def test_extension_keeps_side_arrows():
    g, w = p3_window()
    o1 = MixedGraph.from_skeleton(g, [(0, 1)]).restrict(w.x1)
    o2 = MixedGraph.from_skeleton(g).restrict(w.x2)
    o = MixedGraph.from_skeleton(g).restrict(w.x)
    assert not is_extension(o, o1, o2, w)


def test_extension_needs_protection():
    g = path_graph(3)
    w = extension_window(g, {0, 1}, {1, 2}, {0, 1}, {1, 2})
    und = MixedGraph.from_skeleton(g)
    # 0 -> 1 - 2: the new arrow has no witness
    lone = MixedGraph.from_skeleton(g, [(0, 1)])
    assert not is_extension(lone, und.restrict(w.x1), und.restrict(w.x2), w)
    # 0 -> 1 <- 2: both new arrows are protected by the collider
    collider = MixedGraph.from_skeleton(g, [(0, 1), (2, 1)])
    assert is_extension(collider, und.restrict(w.x1), und.restrict(w.x2), w)
    assert is_extension(collider, collider.restrict(w.x1), collider.restrict(w.x2), w)
    # a side arrow the merged graph reverses
    back = MixedGraph.from_skeleton(g, [(1, 0)])
    assert not is_extension(collider, back.restrict(w.x1), und.restrict(w.x2), w)


def test_extension_window_mismatch():
    g, w = p3_window()
    with pytest.raises(WindowMismatch):
        is_extension(MixedGraph.build([0, 1]), MixedGraph.build([0]), MixedGraph.build([1]), w)


def test_extension_window_contents():
    g, w = p3_window()
    assert w.x == {0, 1, 2} and w.separator == {1}
    assert {w.x1, w.x2} == {frozenset({0, 1}), frozenset({1, 2})}


# -- the dynamic program ---------------------------------------------------


def test_complete_graph_table():
    g = complete_graph(4)
    t = build_clique_tree(g)
    table = count_rooted(g, t, 0)
    ((o, c),) = list(table.items())
    assert c == 1 and o == MixedGraph.from_skeleton(g)


def test_p3_and_p2_tables():
    g = path_graph(3)
    t = build_clique_tree(g)
    assert count_rooted(g, t, 0).total() == 2
    g2 = path_graph(2)
    table = count_rooted(g2, build_clique_tree(g2), 0)
    assert table.total() == 1
    for o in enumerate_partial_mecs(g2, {0, 1}):
        assert table[o] == count_mecs_with_image(g2, o, {0, 1})


def test_named_counts():
    assert count_mec_chordal(complete_graph(3)) == 1
    assert count_mec_chordal(star_graph(3)) == 5
    assert count_mec_chordal(DIAMOND) == count_mecs_bruteforce(DIAMOND) == 4
    assert count_mec_chordal(UndirectedGraph(1, [])) == 1


def test_errors():
    with pytest.raises(NotChordal):
        count_mec_chordal(C4)
    with pytest.raises(NotConnected):
        count_mec_chordal(UndirectedGraph(3, [(0, 1)]))
    g = path_graph(3)
    bogus = CliqueTree((frozenset({0, 1, 2}),), ())
    with pytest.raises(InvalidCliqueTree):
        count_rooted(g, bogus, 0)


@pytest.mark.parametrize("g", FAMILY[:40] + DENSE, ids=str)
def test_table_entries_match_oracle(g):
    t = build_clique_tree(g)
    classes = enumerate_mecs(g)
    for r in range(len(t.cliques)):
        x_prime = t.cliques[r] | neighborhood(g, t.cliques[r])
        table = count_rooted(g, t, r)
        assert set(table.nodes) == x_prime
        img = identities.images(g, x_prime)
        for o in enumerate_partial_mecs(g, x_prime):
            assert table[o] == img[o]
        for o in img:
            assert img[o] == count_mecs_with_image(g, o, x_prime, classes=classes)
        for o, c in table.items():
            assert c > 0 and is_partial_mec(o)
        assert len(table.encoded()) == len(table)


LITERAL_CASES = [g for g in FAMILY + DENSE if g.m <= 6][:12] + [DIAMOND, star_graph(3)]


@pytest.mark.parametrize("g", LITERAL_CASES, ids=str)
def test_literal_triple_loop_agrees(g):
    t = build_clique_tree(g)
    fast = count_rooted(g, t, 0)
    slow = count_rooted(g, t, 0, literal=True)
    assert fast.encoded() == slow.encoded()


@pytest.mark.parametrize("g", FAMILY[:30] + DENSE[:10], ids=str)
def test_root_and_cut_order_invariance(g):
    t = build_clique_tree(g)
    want = count_mecs_bruteforce(g)
    for r in range(len(t.cliques)):
        assert count_rooted(g, t, r).total() == want
        assert count_rooted(g, t, r, rng=random.Random(r)).total() == want


@pytest.mark.parametrize("g", random_trees(50, 12, seed=31), ids=str)
def test_trees_agree_with_tree_counter(g):
    assert count_mec_chordal(g) == count_tree_total(g)


def test_frozen_regression():
    g = UndirectedGraph(
        12,
        [(0, 1), (0, 2), (0, 3), (0, 6), (0, 8), (0, 10), (0, 11), (2, 7), (2, 9), (3, 4), (3, 5)],
    )
    assert count_mec_chordal(g) == 1064


# -- decomposition identities on a small slice ------------------------------


@pytest.mark.parametrize("g", DENSE[:8] + [DIAMOND, path_graph(4)], ids=str)
def test_identities_small(g):
    assert identities.partition_identity_failures(g) == []
    assert identities.product_formula_failures(g) == []
    assert identities.necessity_failures(g) == []


def test_product_check_has_teeth(monkeypatch):
    # an extension predicate that accepts everything must break the identity
    monkeypatch.setattr(identities, "is_extension", lambda *a: True)
    assert identities.product_formula_failures(path_graph(3))
