"""Exact rational linear algebra and univariate polynomial analysis.

Everything here works over :class:`fractions.Fraction`; no floating point is
used on any decision path.  Matrices and polynomials are immutable values.

Index conventions are 0-based throughout.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionError, DomainError, InternalError, ResourceError

Rational = Fraction

DEFAULT_MINOR_CAP = 14
FADDEEV_MAX_DIM = 12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # floats are accepted only when they are exact binary values
        return Fraction(x)
    return Fraction(x)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, tuple(_as_fraction(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        vals = [_as_fraction(v) for v in values]
        return cls(n, n, tuple(vals[i] if i == j else Fraction(0) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        e, c = self.entries, self.cols
        return ExactMatrix(
            self.cols, self.rows, tuple(e[i * c + j] for j in range(self.cols) for i in range(self.rows))
        )

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else []
        out = []
        for i in range(self.rows):
            ai = a[i]
            nz = [(t, x) for t, x in enumerate(ai) if x]
            for j in range(other.cols):
                col = bt[j]
                out.append(sum((x * col[t] for t, x in nz), Fraction(0)))
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return ExactMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def scale(self, c) -> "ExactMatrix":
        c = _as_fraction(c)
        return ExactMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square:
            raise DimensionError("matrix power needs a square matrix")
        if k < 0:
            raise DomainError("negative powers are not supported")
        result, base = ExactMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        for i in row_idx:
            if not 0 <= i < self.rows:
                raise IndexError(f"row index {i} out of range for {self.rows} rows")
        for j in col_idx:
            if not 0 <= j < self.cols:
                raise IndexError(f"column index {j} out of range for {self.cols} columns")
        return ExactMatrix(
            len(row_idx), len(col_idx), tuple(self.entries[i * self.cols + j] for i in row_idx for j in col_idx)
        )

    def embed(self, rows: int, cols: int, row_map: Sequence[int], col_map: Sequence[int]) -> "ExactMatrix":
        """Place this matrix into a zero ``rows x cols`` frame at the given rows/columns."""
        out = [Fraction(0)] * (rows * cols)
        for a, i in enumerate(row_map):
            for b, j in enumerate(col_map):
                out[i * cols + j] = self.entries[a * self.cols + b]
        return ExactMatrix(rows, cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace needs a square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), Fraction(0))

    def to_numpy(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries], dtype=float).reshape(self.rows, self.cols)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows()) + "]"


def as_matrix(m) -> ExactMatrix:
    if isinstance(m, ExactMatrix):
        return m
    return ExactMatrix.from_rows(m)


@dataclass(frozen=True)
class MinorIndex:
    """Row set ``rows`` and column set ``cols`` selecting a submatrix."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(set(self.rows))))
        object.__setattr__(self, "cols", tuple(sorted(set(self.cols))))
        if not self.rows or not self.cols:
            raise DomainError("minor index sets must be nonempty")

    @classmethod
    def principal(cls, idx: Iterable[int]) -> "MinorIndex":
        idx = tuple(idx)
        return cls(idx, idx)

    @property
    def is_principal(self) -> bool:
        return self.rows == self.cols


# ---------------------------------------------------------------------------
# Determinants, minors, rank
# ---------------------------------------------------------------------------


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of the scale factors."""
    rows, scale = [], 1
    for i in range(m.rows):
        r = m.row(i)
        den = reduce(math.lcm, (x.denominator for x in r), 1)
        rows.append([int(x * den) for x in r])
        scale *= den
    return rows, scale


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(m: ExactMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination on the denominator-cleared matrix."""
    if not m.is_square:
        raise DimensionError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    return Fraction(_bareiss_det(rows), scale)


def minor(m: ExactMatrix, idx: MinorIndex) -> Fraction:
    if len(idx.rows) != len(idx.cols):
        raise DimensionError("minor needs |rows| == |cols|")
    return determinant(m.submatrix(idx.rows, idx.cols))


def exact_rank(m: ExactMatrix) -> int:
    """Rank over the rationals via fraction-free elimination."""
    a, _ = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            a[i] = [(a[i][j] * p - f * a[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
    return rank


def minor_cap() -> int:
    """Dimension cap for exact principal-minor enumeration (env ``QUALPROD_MINOR_CAP``)."""
    raw = os.environ.get("QUALPROD_MINOR_CAP")
    if raw is None:
        return DEFAULT_MINOR_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"QUALPROD_MINOR_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise DomainError("QUALPROD_MINOR_CAP must be positive")
    return cap


@dataclass(frozen=True)
class P0Verdict:
    holds: bool
    index: MinorIndex | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds


def principal_subsets(n: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, n + 1):
        yield from combinations(range(n), size)


def is_p0(m: ExactMatrix, cap: int | None = None) -> P0Verdict:
    """Check every principal minor is nonnegative, smallest first.

    Stops at the first negative minor and reports it.
    """
    if not m.is_square:
        raise DimensionError("P0 test needs a square matrix")
    cap = minor_cap() if cap is None else cap
    if m.rows > cap:
        raise ResourceError(
            f"exact P0 check limited to dimension {cap} (got {m.rows}); raise QUALPROD_MINOR_CAP to override",
            bound=cap,
        )
    rows, scale = _integer_rows(m)
    for alpha in principal_subsets(m.rows):
        sub = [[rows[i][j] for j in alpha] for i in alpha]
        d = _bareiss_det(sub)
        if d < 0:
            # scale is positive, so the sign is that of d
            return P0Verdict(False, MinorIndex.principal(alpha), minor(m, MinorIndex.principal(alpha)))
    return P0Verdict(True)


def cauchy_binet_check(a: ExactMatrix, b: ExactMatrix, idx: MinorIndex) -> bool:
    """Compare ``(ab)[rows|cols]`` with its expansion over inner index sets."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if len(idx.rows) != len(idx.cols):
        raise DimensionError("minor needs |rows| == |cols|")
    size = len(idx.rows)
    lhs = minor(a @ b, idx)
    rhs = Fraction(0)
    for gamma in combinations(range(a.cols), size):
        rhs += minor(a, MinorIndex(idx.rows, gamma)) * minor(b, MinorIndex(gamma, idx.cols))
    return lhs == rhs


def compound_matrix(m: ExactMatrix, k: int) -> ExactMatrix:
    """Matrix of all ``k x k`` minors, index sets in lexicographic order."""
    if not 1 <= k <= min(m.rows, m.cols):
        raise DomainError(f"compound order {k} outside 1..{min(m.rows, m.cols)}")
    rsets = list(combinations(range(m.rows), k))
    csets = list(combinations(range(m.cols), k))
    return ExactMatrix(
        len(rsets), len(csets), tuple(minor(m, MinorIndex(r, c)) for r in rsets for c in csets)
    )


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactPolynomial:
    """Univariate polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = [_as_fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "ExactPolynomial":
        return cls(tuple(reversed([_as_fraction(c) for c in coeffs])))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "ExactPolynomial":
        return cls((Fraction(0),) * degree + (_as_fraction(c),))

    @classmethod
    def constant(cls, c) -> "ExactPolynomial":
        return cls((_as_fraction(c),))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ExactPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
        )

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            c = _as_fraction(other)
            return ExactPolynomial(tuple(c * x for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ExactPolynomial(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ExactPolynomial(tuple(out))

    __rmul__ = __mul__

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lead = other.degree, other.leading
        if len(rem) - 1 < db:
            return ExactPolynomial(()), self
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            q = rem[i + db] / lead
            quot[i] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return ExactPolynomial(tuple(quot)), ExactPolynomial(tuple(rem[:db]))

    def __floordiv__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self.divmod(other)[1]

    def exact_div(self, other: "ExactPolynomial") -> "ExactPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InternalError("polynomial division expected to be exact")
        return q

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "ExactPolynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def zero_multiplicity(self) -> int:
        """Multiplicity of 0 as a root."""
        if self.is_zero():
            raise DomainError("zero polynomial")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def shift_down(self, k: int) -> "ExactPolynomial":
        """Divide by ``x**k``; requires the low ``k`` coefficients to vanish."""
        if any(self.coeffs[:k]):
            raise DomainError("polynomial not divisible by the requested power of x")
        return ExactPolynomial(self.coeffs[k:])

    def to_descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: ExactPolynomial, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(p: ExactPolynomial) -> ExactPolynomial:
    if p.is_zero():
        raise DomainError("square-free part of the zero polynomial is undefined")
    if p.degree <= 0:
        return ExactPolynomial.constant(1)
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def cauchy_bound(p: ExactPolynomial) -> Fraction:
    """``1 + max|c_i| / |c_lead|``; every root has modulus strictly below it."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------


def _char_poly_faddeev(m: ExactMatrix) -> ExactPolynomial:
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    a = m.to_rows()
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- a @ mk + c_{n-k+1} I
        prod = [[sum((a[i][t] * mk[t][j] for t in range(n) if a[i][t]), Fraction(0)) for j in range(n)] for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        tr = sum((a[i][t] * mk[t][i] for i in range(n) for t in range(n) if a[i][t]), Fraction(0))
        coeffs[n - k] = -tr / k
    return ExactPolynomial(tuple(coeffs))


def _char_poly_elimination(m: ExactMatrix) -> ExactPolynomial:
    """det(xI - m) by Bareiss elimination over Q[x]."""
    n = m.rows
    if n == 0:
        return ExactPolynomial.constant(1)
    x = ExactPolynomial.monomial(1)
    a = [
        [(x if i == j else ExactPolynomial(())) - ExactPolynomial.constant(m[i, j]) for j in range(n)]
        for i in range(n)
    ]
    sign, prev = 1, ExactPolynomial.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ExactPolynomial(())
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]).exact_div(prev)
        prev = akk
    return a[n - 1][n - 1] * sign


def char_poly(m: ExactMatrix, method: str = "auto") -> ExactPolynomial:
    """Monic ``det(xI - m)``.

    ``method`` is ``"faddeev"`` (trace recursion), ``"elimination"`` (fraction-free
    elimination over the polynomial ring) or ``"auto"``, which picks the trace
    recursion up to dimension 12.
    """
    if not m.is_square:
        raise DimensionError("characteristic polynomial needs a square matrix")
    if method == "auto":
        method = "faddeev" if m.rows <= FADDEEV_MAX_DIM else "elimination"
    if method == "faddeev":
        return _char_poly_faddeev(m)
    if method == "elimination":
        return _char_poly_elimination(m)
    raise DomainError(f"unknown characteristic polynomial method {method!r}")


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def sturm_sequence(p: ExactPolynomial) -> list[ExactPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations_at(seq: list[ExactPolynomial], x) -> int:
    """Sign variations at a rational point, ``+inf`` or ``-inf`` (zeros dropped)."""
    if x == math.inf:
        signs = [_sign(q.leading) for q in seq]
    elif x == -math.inf:
        signs = [_sign(q.leading) * (-1 if q.degree % 2 else 1) for q in seq]
    else:
        signs = [_sign(q(x)) for q in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_roots(
    p: ExactPolynomial,
    lo=-math.inf,
    hi=math.inf,
    *,
    lo_closed: bool = False,
    hi_closed: bool = False,
) -> int:
    """Number of distinct real roots of ``p`` in the interval between ``lo`` and ``hi``.

    Bounds are rationals or ``±math.inf``; closedness flags are ignored at
    infinite ends.  The count runs on the square-free part, so repeated roots
    count once.  With zero-dropping, ``V(a) - V(b)`` counts roots in ``(a, b]``
    exactly even when an endpoint is itself a root, so endpoints are handled by
    evaluating ``p`` there rather than by perturbation.
    """
    if p.is_zero():
        raise DomainError("the zero polynomial has no finite root count")
    lo = lo if lo in (-math.inf, math.inf) else _as_fraction(lo)
    hi = hi if hi in (-math.inf, math.inf) else _as_fraction(hi)
    if not lo < hi:
        if lo == hi and lo_closed and hi_closed and lo not in (math.inf, -math.inf):
            return int(p(lo) == 0)
        raise DomainError(f"empty interval ({lo}, {hi})")
    q = square_free_part(p)
    if q.degree < 1:
        return 0
    return _count_roots(q, sturm_sequence(q), lo, hi, lo_closed, hi_closed)


def _count_roots(q: ExactPolynomial, seq: list[ExactPolynomial], lo, hi, lo_closed: bool, hi_closed: bool) -> int:
    """Root count of the square-free ``q`` between ``lo < hi`` from its precomputed Sturm sequence."""
    count = _variations_at(seq, lo) - _variations_at(seq, hi)  # roots in (lo, hi]
    if hi not in (math.inf, -math.inf) and not hi_closed and q(hi) == 0:
        count -= 1
    if lo not in (math.inf, -math.inf) and lo_closed and q(lo) == 0:
        count += 1
    return count


def isolate_root(p: ExactPolynomial, lo, hi, max_steps: int = 200) -> tuple[Fraction, Fraction]:
    """Shrink the open interval ``(lo, hi)`` (known to hold a root) to one holding exactly one root."""
    lo, hi = _as_fraction(lo), _as_fraction(hi)
    q = square_free_part(p)
    seq = sturm_sequence(q) if q.degree >= 1 else []

    def count(a, b) -> int:
        return _count_roots(q, seq, a, b, False, False) if seq else 0

    if count(lo, hi) == 0:
        raise DomainError("interval holds no root")
    for _ in range(max_steps):
        if count(lo, hi) == 1:
            return lo, hi
        mid = (lo + hi) / 2
        if q(mid) == 0:
            # shrink around the rational root
            width = (hi - lo) / 4
            while count(mid - width, mid + width) > 1:
                width /= 2
            return mid - width, mid + width
        if count(lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


@dataclass(frozen=True)
class PSVerdict:
    """Outcome of the exact real-nonnegative-spectrum test.

    ``nonzero_part`` is the characteristic polynomial with the factor
    ``x**zero_multiplicity`` removed.  Root counts refer to its square-free part.
    """

    holds: bool
    char_poly: ExactPolynomial
    zero_multiplicity: int
    nonzero_part: ExactPolynomial
    square_free_degree: int
    positive_roots: int
    negative_roots: int
    negative_root_interval: tuple[Fraction, Fraction] | None = None

    def __bool__(self) -> bool:
        return self.holds

    @property
    def real_roots(self) -> int:
        return self.positive_roots + self.negative_roots

    @property
    def nonreal_roots(self) -> int:
        """Distinct nonreal roots of the nonzero part (always even)."""
        return self.square_free_degree - self.real_roots

    def describe(self) -> str:
        if self.holds:
            return "all eigenvalues real and nonnegative"
        bits = []
        if self.nonreal_roots:
            bits.append(f"{self.nonreal_roots} distinct nonreal eigenvalue(s)")
        if self.negative_roots:
            lo, hi = self.negative_root_interval
            bits.append(f"{self.negative_roots} distinct negative eigenvalue(s), one in ({lo}, {hi})")
        return "; ".join(bits)


def ps_from_char_poly(cp: ExactPolynomial) -> PSVerdict:
    z = cp.zero_multiplicity()
    q = cp.shift_down(z)
    if q.degree == 0:
        return PSVerdict(True, cp, z, q, 0, 0, 0)
    s = square_free_part(q)
    bound = cauchy_bound(s)
    seq = sturm_sequence(s)
    positive = _count_roots(s, seq, Fraction(0), bound, False, True)
    negative = _count_roots(s, seq, -bound, Fraction(0), True, False)
    interval = None
    if negative:
        interval = isolate_root(s, -bound, 0)
    holds = positive == s.degree
    if holds and negative:
        raise InternalError("root counts exceed degree")
    return PSVerdict(holds, cp, z, q, s.degree, positive, negative, interval)


def is_ps(m: ExactMatrix) -> PSVerdict:
    """Exact test for real nonnegative spectrum via Sturm counts."""
    if not m.is_square:
        raise DimensionError("spectrum test needs a square matrix")
    return ps_from_char_poly(char_poly(m))
