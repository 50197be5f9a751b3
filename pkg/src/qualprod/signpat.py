"""Sign patterns, qualitative classes and alternating products."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError
from .exact import ExactMatrix

DEFAULT_MAGNITUDE_RANGE = (Fraction(1, 1000), Fraction(1000))
DEFAULT_MAX_DENOMINATOR = 1000
DEFAULT_ZERO_PROBABILITY = 0.15


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SignPattern:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError("sign patterns need at least one row and one column")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        if any(e not in (-1, 0, 1) for e in self.entries):
            raise DomainError("sign pattern entries must be -1, 0 or 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SignPattern":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("empty sign pattern")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), len(rows[0]), tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "SignPattern":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "SignPattern":
        return cls(rows, cols, (1,) * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} pattern")
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> "SignPattern":
        return SignPattern(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def T(self) -> "SignPattern":
        return self.transpose()

    def nonzeros(self) -> list[tuple[int, int]]:
        c = self.cols
        return [(k // c, k % c) for k, e in enumerate(self.entries) if e]

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, tuple(Fraction(e) for e in self.entries))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SignPattern":
        return SignPattern(
            len(row_idx), len(col_idx), tuple(self.entries[i * self.cols + j] for i in row_idx for j in col_idx)
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{e:+d}" if e else " 0" for e in r) for r in self.to_rows())


def sign_of(m: ExactMatrix) -> SignPattern:
    return SignPattern(m.rows, m.cols, tuple(_sgn(x) for x in m.entries))


def sign_compatible(m: ExactMatrix, base: SignPattern, closure: bool) -> bool:
    """Membership of ``m`` in Q(base) or, with ``closure``, in its closure Q0(base)."""
    if m.shape != base.shape:
        return False
    for x, b in zip(m.entries, base.entries):
        s = _sgn(x)
        if s != b and not (closure and s == 0):
            return False
    return True


@dataclass(frozen=True)
class QualitativeSample:
    base: SignPattern
    matrix: ExactMatrix
    closure: bool = False

    def __post_init__(self):
        if not sign_compatible(self.matrix, self.base, self.closure):
            kind = "closure of the qualitative class" if self.closure else "qualitative class"
            raise DomainError(f"matrix is not in the {kind} of its base pattern")

    def structural_zeros(self) -> list[tuple[int, int]]:
        """Positions zero in the matrix but nonzero in the base pattern."""
        return [
            (i, j)
            for (i, j) in self.base.nonzeros()
            if self.matrix.entries[i * self.base.cols + j] == 0
        ]


def _random_magnitude(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    x = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    q = Fraction(x).limit_denominator(max_den)
    if q <= 0:
        q = Fraction(1, max_den)
    return min(max(q, lo), hi)


def sample(
    base: SignPattern,
    rng: random.Random,
    magnitude_range: tuple[Fraction, Fraction] = DEFAULT_MAGNITUDE_RANGE,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> QualitativeSample:
    """Random member of Q(base): magnitudes log-uniform in range, then rationalized."""
    lo, hi = (Fraction(x) for x in magnitude_range)
    if not 0 < lo <= hi:
        raise DomainError(f"magnitude range must satisfy 0 < lo <= hi, got ({lo}, {hi})")
    entries = tuple(
        e * _random_magnitude(rng, lo, hi, max_denominator) if e else Fraction(0) for e in base.entries
    )
    return QualitativeSample(base, ExactMatrix(base.rows, base.cols, entries), closure=False)


def degenerate(s: QualitativeSample, zero_mask: Iterable[tuple[int, int]]) -> QualitativeSample:
    """Zero out the masked positions, giving a member of the closure Q0(base)."""
    mask = set(zero_mask)
    for i, j in mask:
        if s.base[i, j] == 0:
            raise DomainError(f"position ({i}, {j}) is structurally zero in the base pattern")
    if not mask:
        return s
    c = s.base.cols
    entries = tuple(
        Fraction(0) if (k // c, k % c) in mask else x for k, x in enumerate(s.matrix.entries)
    )
    return QualitativeSample(s.base, ExactMatrix(s.base.rows, s.base.cols, entries), closure=True)


def sample_closure(
    base: SignPattern,
    rng: random.Random,
    zero_probability: float = DEFAULT_ZERO_PROBABILITY,
    **kwargs,
) -> QualitativeSample:
    """Random member of Q0(base): each nonzero is independently zeroed with the given probability."""
    if not 0 <= zero_probability <= 1:
        raise DomainError("zero probability must lie in [0, 1]")
    s = sample(base, rng, **kwargs)
    mask = [pos for pos in base.nonzeros() if rng.random() < zero_probability]
    return degenerate(s, mask)


@dataclass(frozen=True)
class AlternatingProduct:
    base: SignPattern
    k: int
    factors: tuple[QualitativeSample, ...]
    product: ExactMatrix = field(repr=False)


def multiply_alternating(matrices: Sequence[ExactMatrix]) -> ExactMatrix:
    """``M1 @ M2.T @ M3 @ M4.T @ ...``."""
    result = matrices[0]
    for i, m in enumerate(matrices[1:], start=1):
        result = result @ (m.transpose() if i % 2 else m)
    return result


def alternating_product(base: SignPattern, factors: Sequence[QualitativeSample]) -> AlternatingProduct:
    """Product ``A1 A2^t A3 A4^t ...`` of members of Q(base) (or its closure)."""
    factors = tuple(factors)
    if not factors:
        raise DimensionError("need at least one factor")
    for i, f in enumerate(factors):
        if f.matrix.shape != base.shape:
            raise DimensionError(f"factor {i} has shape {f.matrix.shape}, expected {base.shape}")
        if f.base != base:
            raise DimensionError(f"factor {i} was sampled from a different pattern")
    product = multiply_alternating([f.matrix for f in factors])
    return AlternatingProduct(base, len(factors), factors, product)


def sample_product(
    base: SignPattern,
    k: int,
    rng: random.Random,
    zero_probability: float = 0.0,
    **kwargs,
) -> AlternatingProduct:
    """Random element of Q^k(base) (or of its closure when ``zero_probability > 0``)."""
    if k < 1:
        raise DomainError("k must be positive")
    if zero_probability:
        factors = [sample_closure(base, rng, zero_probability, **kwargs) for _ in range(k)]
    else:
        factors = [sample(base, rng, **kwargs) for _ in range(k)]
    return alternating_product(base, factors)
