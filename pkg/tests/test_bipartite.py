from itertools import product

import pytest
from hypothesis import given

from qualprod.bipartite import (
    TStar,
    build_graph,
    caterpillar_by_leaf_removal,
    enumerate_cycles,
    find_tstar,
    is_caterpillar_forest,
    is_forest,
    is_isomorphic_small,
    is_two_odd,
    shortest_cycle,
    to_dot,
)
from qualprod.errors import ResourceError
from qualprod.signpat import SignPattern

from . import oracles
from .strategies import sign_patterns

EXAMPLE_B = SignPattern.from_rows([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]])


def edge_set(c):
    return frozenset(frozenset(e) for e in c.edges())


@given(sign_patterns(3, 4))
def test_cycles_match_exhaustive_enumeration(p):
    g = build_graph(p)
    expected = oracles.simple_cycles(g.n_vertices, oracles.graph_edges(p.to_rows()))
    found = enumerate_cycles(g)
    assert len(found) == len(expected)
    assert {edge_set(c) for c in found} == expected


@given(sign_patterns(3, 3))
def test_cycle_weights_and_two_odd(p):
    g = build_graph(p)
    for c in enumerate_cycles(g):
        assert c.length % 2 == 0
        negatives = sum(1 for u, v in c.edges() if g.weight(u, v))
        assert c.weight == negatives % 2
    verdict = is_two_odd(g)
    bad = [c for c in enumerate_cycles(g) if (c.length // 2 + c.weight) % 2 == 0]
    assert verdict.holds == (not bad)
    if bad:
        assert verdict.cycle.length == min(c.length for c in bad)


@given(sign_patterns(4, 4))
def test_forest_iff_no_cycles(p):
    g = build_graph(p)
    assert is_forest(g) == (shortest_cycle(g) is None)


def test_known_two_odd_cases():
    assert is_two_odd(build_graph(SignPattern.from_rows([[1, -1], [1, 1]])))
    v = is_two_odd(build_graph(SignPattern.ones(2, 2)))
    assert not v and v.cycle.vertices == (0, 2, 1, 3) and v.cycle.weight == 0


def test_cycle_bound():
    with pytest.raises(ResourceError):
        enumerate_cycles(build_graph(SignPattern.ones(4, 4)), bound=10)


def test_tstar_example():
    g = build_graph(EXAMPLE_B)
    assert is_forest(g)
    t = find_tstar(g)
    assert t is not None and t.center == 1 and t.is_valid_in(g)
    assert not caterpillar_by_leaf_removal(g)
    verdict = is_caterpillar_forest(g)
    assert verdict.forest and not verdict.holds and verdict.tstar == t
    walk = t.walk()
    assert len(walk) == 12


def test_caterpillar_examples():
    path = SignPattern.from_rows([[1, 1, 0], [0, 1, 1]])
    star = SignPattern.ones(1, 5)
    assert is_caterpillar_forest(build_graph(path))
    assert is_caterpillar_forest(build_graph(star))
    assert is_caterpillar_forest(build_graph(SignPattern.identity(3)))
    zero = SignPattern(2, 2, (0, 0, 0, 0))
    assert is_caterpillar_forest(build_graph(zero))
    assert not is_caterpillar_forest(build_graph(SignPattern.ones(2, 2)))


def test_all_small_forests_consistent():
    # leaf removal and T* search are cross-checked inside is_caterpillar_forest
    for entries in product((0, 1), repeat=12):
        g = build_graph(SignPattern(4, 3, entries))
        if is_forest(g):
            is_caterpillar_forest(g)


def test_tstar_validity():
    g = build_graph(EXAMPLE_B)
    assert not TStar(0, ((4, 1), (5, 2), (6, 3))).is_valid_in(g)


def test_dot_export():
    text = to_dot(build_graph(SignPattern.from_rows([[1, -1]])))
    assert text.startswith("graph Gamma {")
    assert '"X1" -- "Y2" [style=dashed, label="1"];' in text
    assert '"X1" -- "Y1";' in text


def test_isomorphism_helper():
    g = build_graph(EXAMPLE_B)
    h = build_graph(EXAMPLE_B.T)
    assert is_isomorphic_small(g, h)
    assert not is_isomorphic_small(g, build_graph(SignPattern.from_rows([[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 1, 0]])))
