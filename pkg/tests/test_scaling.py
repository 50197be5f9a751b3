import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qualprod.bipartite import build_graph
from qualprod.errors import DimensionError, DomainError, PreconditionError
from qualprod.exact import ExactMatrix
from qualprod.sampling import GeneratorConfig, random_forest
from qualprod.scaling import (
    CycleObstruction,
    DiagonalPair,
    cycle_products,
    factor,
    is_q_prime_equal_q,
    ps_similarity_factor,
)
from qualprod.signpat import SignPattern, sample

EXAMPLE_B = SignPattern.from_rows([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]])


def rand_positive(rng, n):
    return [Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(n)]


def test_identity_target():
    a = ExactMatrix.from_rows([[2, -1], [0, 3]])
    f = factor(a, a)
    assert f == DiagonalPair((1, 1), (1, 1))


def test_all_ones_obstruction():
    a = ExactMatrix.from_rows([[1, 1], [1, 1]])
    b = ExactMatrix.from_rows([[1, 1], [1, 2]])
    f = factor(a, b)
    assert isinstance(f, CycleObstruction)
    assert (f.lhs, f.rhs) == (2, 1)
    assert f.cycle.vertices == (0, 2, 1, 3)


def test_consistent_cycle_instance_factors():
    a = ExactMatrix.from_rows([[1, 1], [1, 1]])
    d, e = [Fraction(2), Fraction(3)], [Fraction(5), Fraction(1, 7)]
    b = DiagonalPair(tuple(d), tuple(e)).apply(a)
    f = factor(a, b)
    assert isinstance(f, DiagonalPair) and f.apply(a) == b


@given(st.integers(0, 10**6))
def test_forest_round_trip(seed):
    rng = random.Random(seed)
    config = GeneratorConfig(seed=seed, max_size=6, zero_density=0.2)
    _, p = random_forest(config, rng)
    a = sample(p, rng).matrix
    d0, e0 = rand_positive(rng, p.rows), rand_positive(rng, p.cols)
    b = DiagonalPair(tuple(d0), tuple(e0)).apply(a)
    f = factor(a, b)
    assert isinstance(f, DiagonalPair) and f.apply(a) == b


@given(st.integers(0, 10**6))
def test_obstructions_are_sound(seed):
    rng = random.Random(seed)
    p = SignPattern(3, 3, tuple(rng.choice((-1, 0, 1, 1)) for _ in range(9)))
    a = sample(p, rng).matrix
    b = sample(p, rng).matrix
    f = factor(a, b)
    if isinstance(f, CycleObstruction):
        ratio = {(i, j): b[i, j] / a[i, j] for i in range(3) for j in range(3) if a[i, j]}
        lhs, rhs = cycle_products(ratio, f.cycle.vertices, 3)
        assert (lhs, rhs) == (f.lhs, f.rhs) and lhs != rhs
    else:
        assert f.apply(a) == b


def test_gauge_freedom():
    rng = random.Random(1)
    _, p = random_forest(GeneratorConfig(seed=1, min_size=3, max_size=5, zero_density=0.1), rng)
    a = sample(p, rng).matrix
    b = sample(p, rng).matrix
    f = factor(a, b)
    comps = build_graph(p).components()
    comp = next(c for c in comps if len(c) > 1)
    c = Fraction(7, 3)
    d = tuple(x * c if i in comp else x for i, x in enumerate(f.d))
    e = tuple(x / c if p.rows + j in comp else x for j, x in enumerate(f.e))
    assert DiagonalPair(d, e).apply(a) == f.apply(a) == b


def test_errors():
    a = ExactMatrix.from_rows([[1, 1]])
    with pytest.raises(DomainError):
        factor(a, ExactMatrix.from_rows([[1, -1]]))
    with pytest.raises(DimensionError):
        factor(a, ExactMatrix.from_rows([[1], [1]]))
    with pytest.raises(DomainError):
        DiagonalPair((Fraction(0),), (Fraction(1),))


def test_q_prime_equal_q():
    assert is_q_prime_equal_q(SignPattern.identity(3))
    assert not is_q_prime_equal_q(SignPattern.ones(2, 2))
    assert is_q_prime_equal_q(EXAMPLE_B)


class TestSimilarity:
    def test_identity_diagonals(self):
        a = EXAMPLE_B.as_matrix()
        m, p = ps_similarity_factor(a, [1] * 4, [1] * 3, [1] * 4)
        assert np.array_equal(m, a.to_numpy()) and np.array_equal(p, np.eye(4))

    def test_random_forest_instances(self):
        rng = random.Random(8)
        for _ in range(20):
            _, pat = random_forest(GeneratorConfig(max_size=5, zero_density=0.3), rng)
            a = sample(pat, rng).matrix
            d1, d2, d3 = rand_positive(rng, pat.rows), rand_positive(rng, pat.cols), rand_positive(rng, pat.rows)
            m, p = ps_similarity_factor(a, d1, d2, d3)
            exact = ExactMatrix.diagonal(d1) @ a @ ExactMatrix.diagonal(d2) @ a.T @ ExactMatrix.diagonal(d3)
            rec = p @ m @ m.T @ np.linalg.inv(p)
            target = exact.to_numpy()
            assert np.linalg.norm(rec - target) <= 1e-9 * max(np.linalg.norm(target), 1)
            ev = np.linalg.eigvals(target)
            scale = max(1.0, np.abs(ev).max())
            assert np.all(np.abs(ev.imag) < 1e-8 * scale) and np.all(ev.real > -1e-8 * scale)

    def test_rejects_cycle(self):
        with pytest.raises(PreconditionError):
            ps_similarity_factor(ExactMatrix.from_rows([[1, 1], [1, 1]]), [1, 1], [1, 1], [1, 1])
