import random

import pytest
from hypothesis import given, settings, strategies as st

from dragonforest.engine import (ExchangeError, can_exchange, check_pair_class, classify_pair, perform_exchange,
                                 reroot)
from dragonforest.graph import (Decomposition, MultiGraph, OrientedTree, is_descendant, red_path, tree_path,
                                validate)

from corpus import random_connected_multigraph, random_decomposition


def chain_with_red():
    # r=0 <- a=1 <- b=2, red edge {2, 0}
    g = MultiGraph(3, ((0, 1), (1, 2), (2, 0)))
    t = OrientedTree.from_edges(g, [0, 1], 0)
    return Decomposition(g, (t,), frozenset({2}))


def test_can_exchange_examples():
    dec = chain_with_red()
    g, t = dec.graph, dec.blue[0]
    assert can_exchange(t, 2, g, 2)
    assert not can_exchange(t, 0, g, 2)  # the root has no tree edge
    h = MultiGraph(4, ((0, 1), (1, 2), (2, 3), (1, 3)))
    t2 = OrientedTree.from_edges(h, [0, 1, 2], 0)
    assert not can_exchange(t2, 1, h, 3)  # both ends below 1
    assert not can_exchange(t2, 3, h, 0)  # neither end below 3


def test_perform_exchange_chain():
    dec = chain_with_red()
    out = perform_exchange(dec, 0, 2, 2)
    assert out.blue[0].parent[2] == 0 and out.blue[0].parent_edge[2] == 2
    assert out.red == frozenset({1})
    assert validate(out)


def test_perform_exchange_rejects():
    dec = chain_with_red()
    with pytest.raises(ExchangeError):
        perform_exchange(dec, 0, 2, 0)  # not red
    with pytest.raises(ExchangeError):
        perform_exchange(dec, 0, 0, 2)  # the root has no tree edge


def test_exchange_refuses_red_cycle():
    # red path 1-2-0 already joins the ends of blue edge {0,1}; swapping it for red {1,3} closes a cycle
    g = MultiGraph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (1, 3), (0, 3)))
    t = OrientedTree(0, (-1, 0, 3, 0), (-1, 0, 3, 5))
    dec = Decomposition(g, (t,), frozenset({1, 2, 4}))
    assert validate(dec)
    assert can_exchange(t, 1, g, 4)
    with pytest.raises(ExchangeError):
        perform_exchange(dec, 0, 1, 4)


def check_exchange_invariants(dec, out):
    assert validate(out)
    for t in out.blue:
        assert t.is_spanning()
        for v in range(dec.graph.n):
            assert tree_path(t, v, t.root)[-1] == t.root


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_exchanges(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 10)
    g = random_connected_multigraph(rng, n, rng.randint(n, 2 * n + 3))
    dec = random_decomposition(rng, g, rng.randint(1, 2), attempts=5)
    if dec is None or not dec.red:
        return
    dec = reroot(dec, rng.randrange(n))
    for _ in range(10):
        i = rng.randrange(dec.k)
        u = rng.randrange(n)
        e = rng.choice(sorted(dec.red))
        if not can_exchange(dec.blue[i], u, g, e):
            continue
        try:
            out = perform_exchange(dec, i, u, e)
        except ExchangeError:
            continue
        check_exchange_invariants(dec, out)
        dec = out


def two_children(red, blue_parent, n):
    edges = list(red)
    pedge = [-1] * n
    for v, p in enumerate(blue_parent):
        if p >= 0:
            pedge[v] = len(edges)
            edges.append((v, p))
    g = MultiGraph(n, tuple(edges))
    return Decomposition(g, (OrientedTree(0, tuple(blue_parent), tuple(pedge)),), frozenset(range(len(red))))


def test_classify_case3_siblings():
    dec = two_children([(1, 2)], [-1, 0, 0], 3)
    pc = classify_pair(dec, 0, 1, 2)
    assert pc.case == 3 and pc.first == (1, 2) and pc.first_edge == 0
    check_pair_class(dec, 0, 1, 2, pc)


def test_classify_case1_disjoint():
    dec = two_children([(1, 3), (3, 2)], [-1, 0, 0, 0], 4)
    pc = classify_pair(dec, 0, 1, 2)
    assert pc.case == 1 and pc.first == (1, 3) and pc.second == (3, 2)
    check_pair_class(dec, 0, 1, 2, pc)


def test_classify_case2_nested():
    # y=1 under the root, x=2 under y, red path 2-3-1 with 3 under y
    dec = two_children([(2, 3), (3, 1)], [-1, 0, 1, 1], 4)
    pc = classify_pair(dec, 0, 2, 1)
    assert pc.case == 2 and pc.first == (2, 3)
    check_pair_class(dec, 0, 2, 1, pc)


def test_classify_case2_seven_vertices():
    # y=1, x=3 below it via 2; the red path from x climbs out of x's subtree and stays under y
    dec = two_children([(3, 4), (4, 5), (5, 6), (6, 1)], [-1, 0, 1, 2, 3, 2, 1], 7)
    pc = classify_pair(dec, 0, 3, 1)
    assert pc.case == 2 and pc.first == (4, 5)
    check_pair_class(dec, 0, 3, 1, pc)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_classify_random_pairs(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 10)
    g = random_connected_multigraph(rng, n, rng.randint(n, 2 * n + 3))
    dec = random_decomposition(rng, g, rng.randint(1, 2), attempts=5)
    if dec is None:
        return
    dec = reroot(dec, rng.randrange(n))
    index = dec.red_component_index
    for _ in range(10):
        x, y = rng.sample(range(n), 2)
        i = rng.randrange(dec.k)
        t = dec.blue[i]
        if index[x] != index[y] or is_descendant(t, y, x) or t.parent[x] < 0 or t.parent[y] < 0:
            continue
        path = red_path(dec, x, y)
        if all(is_descendant(t, p, x) for p in path):
            continue
        pc = classify_pair(dec, i, x, y)
        check_pair_class(dec, i, x, y, pc)
