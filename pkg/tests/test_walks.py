import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qualprod.bipartite import build_graph, enumerate_cycles, find_tstar, is_caterpillar_forest, is_forest
from qualprod.errors import DomainError, PreconditionError
from qualprod.sampling import GeneratorConfig, random_caterpillar, random_closed_walk
from qualprod.signpat import SignPattern
from qualprod.walks import (
    ClosedWalk,
    caterpillar_ivt_check,
    closed_subwalk_lengths,
    find_nonrepeating_walk,
    inherit_walk,
    is_2k_repeating_graph,
    is_2k_repeating_walk,
    k_weight,
    make_walk,
    normalize_walk_weight_4,
    walk_from_cycle,
)

from . import oracles
from .strategies import sign_patterns

EXAMPLE_B = SignPattern.from_rows([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]])


def brute_nonrepeating_exists(g, k, length):
    adj = [set(a) for a in g.adjacency]
    for vs in oracles.closed_walks(adj, length):
        seen = set()
        ok = True
        for t, v in enumerate(vs):
            key = (v, t % (2 * k))
            if key in seen:
                ok = False
                break
            seen.add(key)
        if ok:
            return True
    return False


def test_walk_equality_ignores_start():
    a = ClosedWalk((0, 2, 1, 3), 0)
    assert a == a.rotate(1) and hash(a) == hash(a.rotate(3))
    assert a != ClosedWalk((0, 3, 1, 2), 0)


def test_make_walk_validates():
    g = build_graph(SignPattern.from_rows([[1, -1], [1, 1]]))
    w = make_walk(g, [0, 2, 1, 3, 0])
    assert w.vertices == (0, 2, 1, 3) and w.weight == 1
    with pytest.raises(DomainError):
        make_walk(g, [0, 1])


def test_k_weight():
    w = ClosedWalk((0, 2, 1, 3), 1)
    assert k_weight(w, 2) == 1
    assert k_weight(w, 4) == 0
    assert k_weight(w, 3) == Fraction(1, 3)


def test_repeating_walks():
    g = build_graph(EXAMPLE_B)
    t = find_tstar(g)
    w = make_walk(g, t.walk())
    assert not is_2k_repeating_walk(w, 3)
    assert is_2k_repeating_walk(w, 1)
    assert 6 not in closed_subwalk_lengths(w)
    with pytest.raises(DomainError):
        is_2k_repeating_walk(w, 5)


@given(sign_patterns(2, 3))
def test_search_matches_exhaustive_walks(p):
    g = build_graph(p)
    for k, j in ((1, 2), (1, 3), (2, 2)):
        length = 2 * j * k
        if length > 8:
            continue
        walk, _ = find_nonrepeating_walk(g, k, length)
        assert (walk is not None) == brute_nonrepeating_exists(g, k, length)
        if walk is not None:
            assert walk.length == length and not is_2k_repeating_walk(walk, k)


@given(sign_patterns(3, 3))
def test_repeating_graph_equivalences(p):
    g = build_graph(p)
    assert is_2k_repeating_graph(g, 1).holds == is_forest(g)
    assert is_2k_repeating_graph(g, 2).holds == is_forest(g)
    assert is_2k_repeating_graph(g, 3).holds == bool(is_caterpillar_forest(g))


def test_repeating_graph_on_tstar():
    g = build_graph(EXAMPLE_B)
    assert is_2k_repeating_graph(g, 2)
    v = is_2k_repeating_graph(g, 3)
    assert not v and v.walk.length == 12
    assert "verified" in is_2k_repeating_graph(g, 2).note


@given(sign_patterns(3, 3), st.integers(1, 3))
def test_inherit_walk_on_cycles(p, s):
    g = build_graph(p)
    for c in enumerate_cycles(g):
        w = walk_from_cycle(c)
        if w.length % (2 * s) or is_2k_repeating_walk(w, s):
            continue
        longer = inherit_walk(w, s)
        assert longer.length == w.length // (2 * s) * 2 * (s + 1)
        assert longer.weight == w.weight
        assert not is_2k_repeating_walk(longer, s + 1)
        make_walk(g, longer.vertices)  # adjacency holds throughout


def test_inherit_walk_precondition():
    with pytest.raises(PreconditionError):
        inherit_walk(ClosedWalk((0, 2, 0, 2), 0), 1)


def test_normalize_every_cycle_of_small_graphs():
    rng = random.Random(3)
    for shape in ((2, 2), (3, 3), (4, 4), (3, 4)):
        for _ in range(10):
            p = SignPattern(shape[0], shape[1], tuple(rng.choice((-1, 1)) for _ in range(shape[0] * shape[1])))
            g = build_graph(p)
            for c in enumerate_cycles(g):
                w = normalize_walk_weight_4(c, g)
                assert w.length % 4 == 0 and k_weight(w, 4) == 0
                assert not is_2k_repeating_walk(w, 2)
                assert g.is_left(w.vertices[0])
                assert make_walk(g, w.vertices).weight == c.weight


def test_caterpillar_ivt():
    config = GeneratorConfig(seed=11, max_size=5)
    rng = config.rng()
    for _ in range(30):
        g, _ = random_caterpillar(config, rng)
        if not g.edges:
            continue
        w = random_closed_walk(g, rng.choice((2, 4, 6, 8, 10)), rng)
        assert caterpillar_ivt_check(g, w)


def test_caterpillar_ivt_rejects_tstar():
    g = build_graph(EXAMPLE_B)
    w = make_walk(g, find_tstar(g).walk())
    with pytest.raises(PreconditionError):
        caterpillar_ivt_check(g, w)


def test_subwalk_lengths():
    assert closed_subwalk_lengths(ClosedWalk((0, 2, 0, 3), 0)) == {2, 4}
    assert closed_subwalk_lengths(ClosedWalk((0, 2, 1, 3), 0)) == {4}
