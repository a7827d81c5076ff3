import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C4, K4, PATH3, SMALL_GRAPHS, TEST_GRAPHS, random_multigraph
from lapres import (ConfigurationError, acyclic_orientations, canonical_config, fire, is_parking,
                    is_recurrent, is_stable, maximal_parking_functions,
                    minimal_recurrent_configurations, orientation_config, parking_functions,
                    recurrent_configurations, resolve_orientation_convention,
                    spanning_tree_count, stabilize)
from lapres.chips import READINGS, reading_is_bijective

graphs = st.integers(0, 10_000).map(lambda s: random_multigraph(s, max_vertices=5))


def random_order_stabilize(G, c, rng):
    """Reference stabilization through single random firings."""
    counts = [0] * G.n
    while True:
        unstable = [v for v, x in zip(G.nonsink, c) if x >= G.degree(v)]
        if not unstable:
            return tuple(c), tuple(counts)
        v = rng.choice(unstable)
        c = fire(G, c, v)
        counts[G.index[v]] += 1


def parking_by_definition(G, c):
    verts = G.nonsink
    for size in range(1, len(verts) + 1):
        for subset in combinations(verts, size):
            s = set(subset)
            if all(c[G.index[i]] >= G.out_degree_to_complement(i, s) for i in s):
                return False
    return True


def burning_recurrent(G, c):
    """Burning test: add the sink's neighbours' edges and stabilize once."""
    beta = [G.mult(v, G.sink) for v in G.nonsink]
    stable, counts = stabilize(G, [a + b for a, b in zip(c, beta)])
    return stable == tuple(c) and all(k == 1 for k in counts)


def test_fire_and_errors():
    assert fire(C4, (2, 0, 0), 1) == (0, 1, 0)
    with pytest.raises(ConfigurationError, match="stable"):
        fire(C4, (1, 0, 0), 1)
    with pytest.raises(ConfigurationError, match="non-sink"):
        fire(C4, (2, 0, 0), 4)
    with pytest.raises(ConfigurationError):
        stabilize(C4, (1, 0))
    with pytest.raises(ConfigurationError):
        stabilize(C4, (1, -1, 0))
    with pytest.raises(ValueError):
        stabilize(C4, (0, 0, 0), policy="random")


def test_stabilize_c4_example():
    assert stabilize(C4, (2, 0, 0)) == ((0, 1, 0), (1, 0, 0))
    assert stabilize(C4, (2, 0, 0), "greedy-max")[0] == (0, 1, 0)
    assert stabilize(C4, (0, 0, 0)) == ((0, 0, 0), (0, 0, 0))


@pytest.mark.parametrize("name,G", TEST_GRAPHS)
def test_abelian_property(name, G):
    rng = random.Random(7)
    top = 3 * max(G.degree(v) for v in G.nonsink)
    for _ in range(25):
        c = [rng.randint(0, top) for _ in G.nonsink]
        a = stabilize(G, c)
        assert stabilize(G, c, "greedy-max") == a
        assert random_order_stabilize(G, c, rng) == a
        assert is_stable(G, a[0])


@pytest.mark.parametrize("name,G", SMALL_GRAPHS)
def test_parking_against_definition(name, G):
    pf = parking_functions(G)
    box = product(*(range(G.degree(v) + 1) for v in G.nonsink))
    brute = [c for c in box if parking_by_definition(G, c)]
    assert pf == brute
    assert all(is_parking(G, c) for c in pf)
    assert len(pf) == spanning_tree_count(G)


def test_parking_c4():
    assert parking_functions(C4) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert maximal_parking_functions(C4) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert not is_parking(C4, (1, 0, 1))


@pytest.mark.parametrize("name,G", SMALL_GRAPHS)
def test_recurrent_against_burning(name, G):
    rec = recurrent_configurations(G)
    box = product(*(range(G.degree(v)) for v in G.nonsink))
    assert rec == [c for c in box if burning_recurrent(G, c)]
    assert len(rec) == spanning_tree_count(G)
    assert canonical_config(G) in rec


def test_is_recurrent_rejects_unstable():
    with pytest.raises(ConfigurationError, match="not stable"):
        is_recurrent(C4, (2, 0, 0))


@pytest.mark.parametrize("name,G", SMALL_GRAPHS)
def test_minimal_recurrent_duality(name, G):
    k = canonical_config(G)
    dual = sorted(tuple(a - b for a, b in zip(k, c)) for c in maximal_parking_functions(G))
    assert minimal_recurrent_configurations(G) == dual


@pytest.mark.parametrize("name,G", TEST_GRAPHS)
def test_orientation_bijection(name, G):
    orients = acyclic_orientations(G, unique_sink=True)
    image = [orientation_config(G, O) for O in orients]
    assert len(set(image)) == len(image)
    assert sorted(image) == maximal_parking_functions(G)


@given(graphs)
@settings(max_examples=30, deadline=None)
def test_orientation_bijection_property(G):
    assert reading_is_bijective(G, "out-degree - 1")
    assert not reading_is_bijective(G, "out-degree")


def test_convention_resolution():
    report = resolve_orientation_convention([K4, C4])
    assert report["resolved"] == ["out-degree - 1"]
    # in-degree happens to work on K4 but not on C4
    assert report["results"]["in-degree"] == [True, False]
    assert set(report["results"]) == set(READINGS)


def test_orientation_config_errors():
    from lapres.graph import ConnectedPartition, AcyclicOrientation
    O = acyclic_orientations(PATH3)[0]
    bad_sink = next(o for o in acyclic_orientations(PATH3) if not o.has_unique_sink(2))
    with pytest.raises(ConfigurationError):
        orientation_config(PATH3, bad_sink)
    P = ConnectedPartition.of(PATH3, [(1, 2), (3,)])
    with pytest.raises(ConfigurationError):
        orientation_config(PATH3, AcyclicOrientation(P, ((0, 1),)))
    cyclic = AcyclicOrientation(ConnectedPartition.singletons(C4.with_sink(4)),
                                ((0, 1), (1, 2), (2, 3), (3, 0)))
    with pytest.raises(ConfigurationError, match="cycle"):
        orientation_config(C4, cyclic)
    assert orientation_config(PATH3, next(o for o in acyclic_orientations(PATH3)
                                          if o.has_unique_sink(2))) == (0, 0)
    assert O.base == ConnectedPartition.singletons(PATH3)
