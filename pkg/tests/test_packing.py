import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dragonforest.density import fractional_arboricity
from dragonforest.graph import Decomposition, DisconnectedInputError, MultiGraph, validate
from dragonforest.oracles import brute_force_forest_packing
from dragonforest.packing import (InsufficientForestsError, ReductionNeeded, max_forest_packing,
                                  nash_williams_decompose, spanning_trees_plus_forest)

from corpus import random_connected_multigraph
from solids import complete, cycle, path


def is_forest(g, edge_ids):
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in edge_ids:
        a, b = find(g.edges[e][0]), find(g.edges[e][1])
        if a == b:
            return False
        parent[a] = b
    return True


def test_nash_williams_examples():
    t = path(5)
    assert nash_williams_decompose(t, 1) == [frozenset(range(4))]
    forests = nash_williams_decompose(complete(4), 2)
    assert sorted(e for f in forests for e in f) == list(range(6))
    assert all(is_forest(complete(4), f) for f in forests)
    with pytest.raises(InsufficientForestsError) as info:
        nash_williams_decompose(complete(4), 1)
    assert info.value.witness == frozenset(range(4))


def test_spanning_trees_plus_forest_examples():
    dec = spanning_trees_plus_forest(path(4), 1)
    assert isinstance(dec, Decomposition) and dec.red == frozenset()
    dec = spanning_trees_plus_forest(complete(4), 1)
    assert validate(dec) and len(dec.red) == 3 and len(dec.blue[0].edge_ids()) == 3


def test_two_k5_joined_by_bridge():
    k5 = complete(5).edges
    edges = k5 + tuple((u + 5, v + 5) for u, v in k5) + ((0, 5),)
    shape = spanning_trees_plus_forest(MultiGraph(10, edges), 2)
    assert isinstance(shape, ReductionNeeded)
    assert shape.tight_set in (frozenset(range(5)), frozenset(range(5, 10)))


def test_max_forest_packing_examples():
    empty = max_forest_packing(MultiGraph(0, ()), 2)
    assert empty.size == 0 and not empty.leftover
    res = max_forest_packing(complete(4), 2)
    assert res.size == 6 and not res.leftover
    res = max_forest_packing(cycle(5), 2)
    assert res.size == 5
    assert sorted(len(f) for f in res.forests) == [1, 4]


def test_disconnected_rejected():
    with pytest.raises(DisconnectedInputError):
        spanning_trees_plus_forest(MultiGraph(3, ((0, 1),)), 1)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 6), st.integers(0, 7), st.integers(1, 3))
def test_packing_is_maximum(seed, n, extra, k):
    rng = random.Random(seed)
    g = random_connected_multigraph(rng, n, min(extra, 9 - n))  # at most 8 edges
    res = max_forest_packing(g, k)
    ids = [e for f in res.forests for e in f]
    assert len(ids) == len(set(ids))
    assert set(ids) | res.leftover == set(range(g.m)) and not set(ids) & res.leftover
    assert all(is_forest(g, f) for f in res.forests)
    if k <= 2 or g.m <= 7:
        assert res.size == brute_force_forest_packing(g, k)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 7), st.integers(0, 14), st.integers(1, 3))
def test_nash_williams_biconditional(seed, n, extra, k):
    g = random_connected_multigraph(random.Random(seed), n, extra)
    need = math.ceil(fractional_arboricity(g))
    try:
        forests = nash_williams_decompose(g, k)
    except InsufficientForestsError as exc:
        assert k < need
        sub, _, _ = g.induced(exc.witness)
        assert sub.m > k * (sub.n - 1)
    else:
        assert k >= need
        assert sorted(e for f in forests for e in f) == list(range(g.m))
        assert all(is_forest(g, f) for f in forests)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 8), st.integers(0, 14), st.integers(1, 2))
def test_spanning_trees_plus_forest_shapes(seed, n, extra, k):
    g = random_connected_multigraph(random.Random(seed), n, extra)
    try:
        shape = spanning_trees_plus_forest(g, k)
    except InsufficientForestsError:
        assert math.ceil(fractional_arboricity(g)) > k + 1
        return
    if isinstance(shape, Decomposition):
        assert validate(shape)
        assert all(t.is_spanning() for t in shape.blue)
        return
    assert g.m - len(shape.red) < k * (n - 1)
    part_of = {v: i for i, p in enumerate(shape.parts) for v in p}
    assert sorted(part_of) == list(range(n))
    for e in shape.red:
        u, v = g.edges[e]
        assert part_of[u] == part_of[v]
    for b in shape.blue:
        assert is_forest(g, b)
    assert is_forest(g, shape.red)
