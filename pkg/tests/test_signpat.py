import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qualprod.errors import DimensionError, DomainError
from qualprod.exact import ExactMatrix
from qualprod.signpat import (
    QualitativeSample,
    SignPattern,
    alternating_product,
    degenerate,
    sample,
    sample_closure,
    sample_product,
    sign_compatible,
    sign_of,
)

from . import oracles
from .strategies import sign_patterns


def test_pattern_validation():
    with pytest.raises(DomainError):
        SignPattern.from_rows([[2]])
    with pytest.raises(DimensionError):
        SignPattern.from_rows([[1, 0], [1]])
    with pytest.raises(DimensionError):
        SignPattern(0, 1, ())


def test_transpose_and_nonzeros():
    p = SignPattern.from_rows([[1, 0, -1], [0, 1, 0]])
    assert p.T.to_rows() == [[1, 0], [0, 1], [-1, 0]]
    assert p.nonzeros() == [(0, 0), (0, 2), (1, 1)]
    assert str(p) == "+1  0 -1\n 0 +1  0"


@given(sign_patterns(4, 4), st.integers(0, 2**32))
def test_samples_are_in_the_class(p, seed):
    s = sample(p, random.Random(seed))
    assert sign_of(s.matrix) == p
    lo, hi = Fraction(1, 1000), Fraction(1000)
    assert all(lo <= abs(x) <= hi for x in s.matrix.entries if x)
    assert all(x.denominator <= 1000 for x in s.matrix.entries)


@given(sign_patterns(4, 4), st.integers(0, 2**32))
def test_closure_samples(p, seed):
    s = sample_closure(p, random.Random(seed), zero_probability=0.5)
    assert sign_compatible(s.matrix, p, closure=True)
    for i, j in s.structural_zeros():
        assert p[i, j] != 0 and s.matrix[i, j] == 0


def test_sampling_is_deterministic():
    p = SignPattern.from_rows([[1, -1], [0, 1]])
    a = sample_product(p, 4, random.Random(7))
    b = sample_product(p, 4, random.Random(7))
    assert a.product == b.product


def test_membership_is_checked():
    p = SignPattern.from_rows([[1, -1]])
    with pytest.raises(DomainError):
        QualitativeSample(p, ExactMatrix.from_rows([[1, 1]]))
    with pytest.raises(DomainError):
        QualitativeSample(p, ExactMatrix.from_rows([[0, -1]]), closure=False)
    QualitativeSample(p, ExactMatrix.from_rows([[0, -1]]), closure=True)


def test_degenerate_rejects_structural_zero():
    p = SignPattern.from_rows([[1, 0]])
    s = sample(p, random.Random(1))
    with pytest.raises(DomainError):
        degenerate(s, [(0, 1)])
    assert degenerate(s, [(0, 0)]).matrix.is_zero()


@given(sign_patterns(3, 3), st.integers(1, 5), st.integers(0, 1000))
def test_alternating_product_matches_oracle(p, k, seed):
    prod = sample_product(p, k, random.Random(seed))
    expected = oracles.alternating([f.matrix.to_rows() for f in prod.factors])
    assert prod.product.to_rows() == expected
    assert prod.product.shape == ((p.rows, p.rows) if k % 2 == 0 else p.shape)


def test_alternating_product_rejects_foreign_factor():
    p = SignPattern.from_rows([[1, 1]])
    q = SignPattern.from_rows([[1, -1]])
    rng = random.Random(0)
    with pytest.raises(DimensionError):
        alternating_product(p, [sample(p, rng), sample(q, rng)])


def test_magnitude_range_validated():
    with pytest.raises(DomainError):
        sample(SignPattern.ones(1, 1), random.Random(0), magnitude_range=(0, 1))
