"""Graph-theoretic classification of sign patterns and the Kellogg wedge checks.

The containments decided here, for ``Q^{2k}(A)`` the alternating products of
``2k`` members of the qualitative class of ``A``:

=========  ===========================================  ======================
statement  meaning                                      holds exactly when
=========  ===========================================  ======================
P0_2       every element of Q^2(A) is a P0-matrix       graph of A is 2-odd
P0_4       every element of Q^4(A) is a P0-matrix       graph of A is a forest
PS_2       every element of Q^2(A) is PS                graph of A is a forest
P0_6       every element of Q^6(A) is a P0-matrix       caterpillar forest
PS_4       every element of Q^4(A) is PS                caterpillar forest
P0_ALL     P0 for every even length                     caterpillar forest
PS_ALL     real >= 0 spectrum for every even length     caterpillar forest
=========  ===========================================  ======================
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .bipartite import (
    CaterpillarVerdict,
    GraphCycle,
    TwoOddVerdict,
    WeightedBipartiteGraph,
    build_graph,
    is_caterpillar_forest,
    is_forest,
    is_two_odd,
)
from .exact import ExactMatrix, char_poly
from .signpat import SignPattern

ANGLE_TOLERANCE = 1e-9
ZERO_MAGNITUDE = 1e-12


class Level(str, Enum):
    NONE = "NONE"
    TWO_ODD = "TWO_ODD"
    FOREST = "FOREST"
    CATERPILLAR = "CATERPILLAR"


class Verdict(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"


STATEMENTS = ("P0_2", "P0_4", "P0_6", "P0_ALL", "PS_2", "PS_4", "PS_ALL")

# graph condition equivalent to each statement, used in text reports
GOVERNING_CONDITION = {
    "P0_2": "2-odd",
    "P0_4": "forest",
    "PS_2": "forest",
    "P0_6": "caterpillar forest",
    "PS_4": "caterpillar forest",
    "P0_ALL": "caterpillar forest",
    "PS_ALL": "caterpillar forest",
}


def statement_k(statement: str) -> int | None:
    """Number of factors in the statement's products (``None`` for the ALL statements)."""
    tail = statement.split("_")[1]
    return None if tail == "ALL" else int(tail)


@dataclass(frozen=True)
class ClassificationReport:
    pattern: SignPattern
    two_odd: bool
    forest: bool
    caterpillar_forest: bool
    level: Level
    conclusions: dict[str, Verdict]
    two_odd_violation: GraphCycle | None = None
    tstar: object | None = None
    cycle: GraphCycle | None = field(default=None)

    def holds(self, statement: str) -> bool:
        return self.conclusions[statement] is Verdict.HOLDS


def _verdict(flag: bool) -> Verdict:
    return Verdict.HOLDS if flag else Verdict.FAILS


def classify_graph(p: SignPattern, g: WeightedBipartiteGraph) -> ClassificationReport:
    odd: TwoOddVerdict = is_two_odd(g)
    forest = is_forest(g)
    cat: CaterpillarVerdict = is_caterpillar_forest(g)
    if forest and not odd.holds:
        raise AssertionError("a forest is vacuously 2-odd")
    if cat.holds:
        level = Level.CATERPILLAR
    elif forest:
        level = Level.FOREST
    elif odd.holds:
        level = Level.TWO_ODD
    else:
        level = Level.NONE
    conclusions = {
        "P0_2": _verdict(odd.holds),
        "P0_4": _verdict(forest),
        "PS_2": _verdict(forest),
        "P0_6": _verdict(cat.holds),
        "PS_4": _verdict(cat.holds),
        "P0_ALL": _verdict(cat.holds),
        "PS_ALL": _verdict(cat.holds),
    }
    cycle = None
    if not forest:
        from .bipartite import shortest_cycle

        cycle = shortest_cycle(g)
    return ClassificationReport(p, odd.holds, forest, cat.holds, level, conclusions, odd.cycle, cat.tstar, cycle)


def classify(p: SignPattern) -> ClassificationReport:
    return classify_graph(p, build_graph(p))


# ---------------------------------------------------------------------------
# Kellogg wedges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KelloggRegion:
    """Open wedge ``|arg z - pi| < pi/n`` (``power == 1``) or its preimage under ``z -> z**power``."""

    n: int
    power: int = 1

    def __post_init__(self):
        if self.n < 1 or self.power < 1:
            raise ValueError("n and power must be positive")


def _to_complex(z) -> complex:
    if isinstance(z, tuple):
        re, im = z
        return complex(float(Fraction(re)), float(Fraction(im)))
    return complex(z)


def _power_angle(z, power: int) -> float:
    """Argument of ``z**power`` in ``[0, 2*pi)``; exact powering for rational pairs."""
    if isinstance(z, tuple):
        re, im = Fraction(z[0]), Fraction(z[1])
        acc_re, acc_im = Fraction(1), Fraction(0)
        for _ in range(power):
            acc_re, acc_im = acc_re * re - acc_im * im, acc_re * im + acc_im * re
        theta = math.atan2(float(acc_im), float(acc_re))
    else:
        theta = power * cmath.phase(complex(z))
    return theta % (2 * math.pi)


def kellogg_margin(z, region: KelloggRegion) -> float:
    """``pi/n - |arg(z**power) - pi|``: positive inside the wedge, negative outside."""
    theta = _power_angle(z, region.power)
    return math.pi / region.n - abs(theta - math.pi)


def in_kellogg_region(z, region: KelloggRegion) -> bool:
    """Membership in the open wedge; ``0`` is never a member.

    ``z`` is a complex number or an exact ``(re, im)`` pair of rationals.
    """
    c = _to_complex(z)
    if c == 0:
        return False
    return kellogg_margin(z, region) > 0


@dataclass
class ExclusionReport:
    holds: bool
    interior_hits: list[tuple[complex, int]]
    boundary_hits: list[tuple[complex, int]]

    def __bool__(self) -> bool:
        return self.holds


def _eval_exact(coeffs, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    # Horner over Q[i]; coefficients ascending
    acc_re, acc_im = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        acc_re, acc_im = acc_re * re - acc_im * im + c, acc_re * im + acc_im * re
    return acc_re, acc_im


def polish_root(coeffs, z: complex, steps: int = 8) -> complex:
    """Newton steps on an exact polynomial from a floating start, each step evaluated exactly.

    Small eigenvalues of a large-norm matrix come back from a floating solver
    with only absolute accuracy; a few exact Newton steps restore relative
    accuracy.  The iterate is kept only while the exact residual shrinks.
    """
    deriv = [i * c for i, c in enumerate(coeffs)][1:]

    def residual(w: complex) -> tuple[Fraction, Fraction, Fraction]:
        re, im = Fraction(w.real), Fraction(w.imag)
        pr, pi = _eval_exact(coeffs, re, im)
        return pr, pi, pr * pr + pi * pi

    pr, pi, best = residual(z)
    for _ in range(steps):
        if best == 0:
            break
        re, im = Fraction(z.real), Fraction(z.imag)
        dr, di = _eval_exact(deriv, re, im)
        den = dr * dr + di * di
        if den == 0:
            break
        step = complex(float((pr * dr + pi * di) / den), float((pi * dr - pr * di) / den))
        w = z - step
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            break
        wr, wi, r = residual(w)
        if r >= best:
            break
        z, pr, pi, best = w, wr, wi, r
    return z


def nonzero_eigenvalues(m: ExactMatrix) -> np.ndarray:
    """Floating eigenvalues with the exactly-known zero eigenvalues removed.

    The zero multiplicity comes from the exact characteristic polynomial, so
    a defective zero eigenvalue cannot masquerade as a small nonzero one.  The
    remaining eigenvalues are polished against the exact polynomial.
    """
    ev = np.linalg.eigvals(m.to_numpy()) if m.rows else np.array([])
    cp = char_poly(m)
    z = cp.zero_multiplicity()
    if z:
        order = np.argsort(np.abs(ev))
        ev = ev[order[z:]]
    coeffs = cp.coeffs[z:]
    return np.array([polish_root(coeffs, complex(lam)) for lam in ev], dtype=complex)


def spectral_exclusion_check(m: ExactMatrix, k_max: int = 1) -> ExclusionReport:
    """Check no eigenvalue of ``m`` lies in the wedge preimages for powers ``1..k_max``.

    The caller guarantees ``m**k`` is a P0-matrix for each such power.  Hits
    within ``1e-9`` of the wedge boundary are logged as boundary hits only.
    """
    n = m.rows
    interior, boundary = [], []
    for lam in nonzero_eigenvalues(m):
        if abs(lam) < ZERO_MAGNITUDE:
            continue
        for k in range(1, k_max + 1):
            margin = kellogg_margin(complex(lam), KelloggRegion(n, k))
            if margin > ANGLE_TOLERANCE:
                interior.append((complex(lam), k))
            elif margin > -ANGLE_TOLERANCE:
                boundary.append((complex(lam), k))
    return ExclusionReport(not interior, interior, boundary)
