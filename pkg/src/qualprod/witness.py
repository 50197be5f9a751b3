"""Explicit counterexamples with exact, independently recheckable certificates.

Each constructor returns a :class:`WitnessCertificate`: factor matrices in the
closure of the qualitative class, their alternating product and a recorded
violation (a negative principal minor, or a characteristic polynomial whose
Sturm counts show a nonreal or negative eigenvalue).  :func:`strictify` moves
the factors into the open class by filling structural zeros with ``±eps``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .bipartite import GraphCycle, TStar, WeightedBipartiteGraph, build_graph
from .blockcirc import DigraphCycle, alternating_digraph, lift_walk
from .classify import STATEMENTS, classify_graph, statement_k
from .errors import DomainError, InternalError, PreconditionError
from .exact import (
    ExactMatrix,
    ExactPolynomial,
    MinorIndex,
    PSVerdict,
    char_poly,
    minor,
    ps_from_char_poly,
)
from .signpat import (
    QualitativeSample,
    SignPattern,
    alternating_product,
    multiply_alternating,
    sign_compatible,
)
from .walks import ClosedWalk, inherit_walk, is_2k_repeating_walk, normalize_walk_weight_4

MAX_HALVINGS = 64
DEFAULT_EPSILON = Fraction(1, 100)

# Four members of Q0(B) whose alternating product has a pair of nonreal eigenvalues.
TSTAR_PATTERN = ((1, 0, 0), (1, 1, 1), (0, 1, 0), (0, 0, 1))
TSTAR_FACTORS = (
    ((1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 0, 0)),
    ((1, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1), (0, 1, 0), (0, 0, 0)),
)
TSTAR_CUBIC = ExactPolynomial.from_descending([1, -4, 3, -1])
# template vertex roles: center is row 1, arm a is (column a, row TSTAR_LEAF_ROWS[a])
TSTAR_CENTER_ROW = 1
TSTAR_LEAF_ROWS = (0, 2, 3)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorViolation:
    index: MinorIndex
    value: Fraction


@dataclass(frozen=True)
class SpectralViolation:
    char_poly: ExactPolynomial
    real_root_count: int
    square_free_degree: int
    negative_root_interval: tuple[Fraction, Fraction] | None = None

    @classmethod
    def from_verdict(cls, v: PSVerdict) -> "SpectralViolation":
        return cls(v.char_poly, v.real_roots, v.square_free_degree, v.negative_root_interval)


Violation = MinorViolation | SpectralViolation


@dataclass(frozen=True)
class WitnessCertificate:
    target: str
    base: SignPattern
    factors: tuple[QualitativeSample, ...]
    product: ExactMatrix
    violation: Violation
    strict_factors: tuple[QualitativeSample, ...] | None = None
    strict_product: ExactMatrix | None = None
    strict_violation: Violation | None = None
    epsilon: Fraction | None = None

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def is_strict(self) -> bool:
        return self.strict_factors is not None

    def recheck(self) -> bool:
        """Recompute everything from the factors by routes independent of construction."""
        ok = _recheck(self.base, self.target, self.factors, self.product, self.violation, closure=True)
        if self.strict_factors is not None:
            ok = ok and _recheck(
                self.base, self.target, self.strict_factors, self.strict_product, self.strict_violation, closure=False
            )
        return ok

    def to_dict(self) -> dict:
        out = {
            "version": 1,
            "kind": "witness-certificate",
            "target": self.target,
            "k": self.k,
            "base": self.base.to_rows(),
            "factors": [_matrix_strings(f.matrix) for f in self.factors],
            "product": _matrix_strings(self.product),
            "violation": _violation_dict(self.violation),
            "strict": None,
        }
        if self.strict_factors is not None:
            out["strict"] = {
                "epsilon": _rational_string(self.epsilon),
                "factors": [_matrix_strings(f.matrix) for f in self.strict_factors],
                "product": _matrix_strings(self.strict_product),
                "violation": _violation_dict(self.strict_violation),
            }
        return out


def _rational_string(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _matrix_strings(m: ExactMatrix) -> list[list[str]]:
    return [[_rational_string(x) for x in r] for r in m.to_rows()]


def _violation_dict(v: Violation) -> dict:
    if isinstance(v, MinorViolation):
        return {
            "type": "negative-principal-minor",
            "rows": list(v.index.rows),
            "value": _rational_string(v.value),
        }
    out = {
        "type": "spectrum",
        "char_poly": [_rational_string(c) for c in v.char_poly.to_descending()],
        "real_root_count": v.real_root_count,
        "square_free_degree": v.square_free_degree,
        "negative_root_interval": None,
    }
    if v.negative_root_interval is not None:
        out["negative_root_interval"] = [_rational_string(x) for x in v.negative_root_interval]
    return out


# independent arithmetic for rechecks ------------------------------------------


def _naive_product(base: SignPattern, factors: Sequence[QualitativeSample]) -> ExactMatrix:
    mats = []
    for t, f in enumerate(factors):
        rows = f.matrix.to_rows()
        if t % 2:
            rows = [list(c) for c in zip(*rows)]
        mats.append(rows)
    acc = mats[0]
    for m in mats[1:]:
        acc = [[sum((a[p] * m[p][j] for p in range(len(m))), Fraction(0)) for j in range(len(m[0]))] for a in acc]
    return ExactMatrix.from_rows(acc)


def _gauss_det(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _recheck(base, target, factors, product, violation, closure: bool) -> bool:
    for f in factors:
        if f.base != base or not sign_compatible(f.matrix, base, closure):
            return False
    if _naive_product(base, factors) != product:
        return False
    if target.startswith("P0"):
        if not isinstance(violation, MinorViolation) or not violation.index.is_principal:
            return False
        idx = violation.index.rows
        rows = product.to_rows()
        value = _gauss_det([[rows[i][j] for j in idx] for i in idx])
        return value == violation.value and value < 0
    if not isinstance(violation, SpectralViolation):
        return False
    cp = char_poly(product, method="elimination")
    if cp != violation.char_poly:
        return False
    v = ps_from_char_poly(cp)
    return (
        not v.holds
        and v.real_roots == violation.real_root_count
        and v.square_free_degree == violation.square_free_degree
    )


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _sign_matrix(base: SignPattern, positions, transpose_positions: bool = False) -> QualitativeSample:
    entries = [Fraction(0)] * (base.rows * base.cols)
    for i, j in positions:
        if transpose_positions:
            i, j = j, i
        if base[i, j] == 0:
            raise InternalError(f"position ({i}, {j}) is zero in the base pattern")
        entries[i * base.cols + j] = Fraction(base[i, j])
    return QualitativeSample(base, ExactMatrix(base.rows, base.cols, tuple(entries)), closure=True)


def _violation_for(target: str, product: ExactMatrix, index: MinorIndex | None) -> Violation:
    if target.startswith("P0"):
        value = minor(product, index)
        if value >= 0:
            raise InternalError(f"expected a negative minor at {index.rows}, got {value}")
        return MinorViolation(index, value)
    v = ps_from_char_poly(char_poly(product))
    if v.holds:
        raise InternalError("constructed product has a real nonnegative spectrum")
    return SpectralViolation.from_verdict(v)


def cycle_witness(base: SignPattern, k: int, cycle: DigraphCycle, target: str | None = None) -> WitnessCertificate:
    """Factors supported on a ``k``-even cycle of the ``k``-block alternating digraph.

    Factor ``t`` keeps exactly the entries used by the cycle's arcs out of block
    ``t``, with the base signs.  The product acts as a signed ``j``-cycle on the
    block-0 vertices of the cycle, so its characteristic polynomial is
    ``x^(n-j) (x^j + (-1)^(j+1))`` and the principal minor on those vertices is -1.
    """
    if k < 2 or k % 2:
        raise DomainError("k must be a positive even number of factors")
    if cycle.k != k:
        raise DomainError(f"cycle lives in a {cycle.k}-block digraph, expected {k}")
    if cycle.is_k_odd:
        raise DomainError("cycle is not k-even")
    target = target or f"P0_{k}"
    d = alternating_digraph(base, k // 2)
    positions: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    alpha = []
    vs = cycle.vertices
    for t in range(len(vs)):
        u, v = vs[t], vs[(t + 1) % len(vs)]
        arc = d.arc_between(u, v)
        positions[arc.block].append((arc.source, arc.target))
        if arc.block == 0:
            alpha.append(arc.source)
    factors = tuple(_sign_matrix(base, positions[b], transpose_positions=bool(b % 2)) for b in range(k))
    product = alternating_product(base, factors).product
    j = cycle.repeats
    n = base.rows
    expected = ExactPolynomial.monomial(n - j) * (
        ExactPolynomial.monomial(j) + ExactPolynomial.constant((-1) ** (j + 1))
    )
    if char_poly(product) != expected:
        raise InternalError("cycle product has an unexpected characteristic polynomial")
    index = MinorIndex.principal(alpha)
    return WitnessCertificate(target, base, factors, product, _violation_for(target, product, index))


def _row_start(g: WeightedBipartiteGraph, vertices: Sequence[int]) -> tuple[int, ...]:
    vs = tuple(vertices)
    return vs if g.is_left(vs[0]) else vs[1:] + vs[:1]


def not_ps_witness_2(base: SignPattern, cycle: GraphCycle, target: str = "PS_2") -> WitnessCertificate:
    """Two factors ``B, C`` on a cycle ``X i1 Y j1 ... X ir Y jr`` with ``r >= 2``.

    ``B`` keeps the entries ``(i_k, j_k)`` and ``C`` the entries ``(i_{k+1}, j_k)``;
    ``B C^t`` is a signed ``r``-cycle with characteristic polynomial
    ``x^(n-r) (x^r -+ 1)``, which always has a nonreal or a negative root.
    """
    g = build_graph(base)
    if cycle.length < 4:
        raise DomainError("need a cycle of length at least 4")
    vs = _row_start(g, cycle.vertices)
    r = len(vs) // 2
    rows = [vs[2 * t] for t in range(r)]
    cols = [vs[2 * t + 1] - base.rows for t in range(r)]
    for t in range(r):
        if not (g.has_edge(vs[2 * t], vs[2 * t + 1]) and g.has_edge(vs[2 * t + 1], vs[(2 * t + 2) % len(vs)])):
            raise DomainError("vertex sequence is not a cycle of the pattern's graph")
    b = _sign_matrix(base, [(rows[t], cols[t]) for t in range(r)])
    c = _sign_matrix(base, [(rows[(t + 1) % r], cols[t]) for t in range(r)])
    product = alternating_product(base, (b, c)).product
    return WitnessCertificate(target, base, (b, c), product, _violation_for(target, product, None))


def _shortest_cycle(base: SignPattern) -> tuple[WeightedBipartiteGraph, GraphCycle]:
    g = build_graph(base)
    report = classify_graph(base, g)
    if report.cycle is None:
        raise DomainError("the pattern's graph is a forest: no cycle exists")
    return g, report.cycle


def _normalized_4_walk(base: SignPattern) -> ClosedWalk:
    g, cycle = _shortest_cycle(base)
    return normalize_walk_weight_4(cycle, g)


def not_p0_4_witness(base: SignPattern, target: str = "P0_4") -> WitnessCertificate:
    """Four-factor witness from a cycle padded to 4-weight 0 and lifted to the 4-block digraph."""
    walk = _normalized_4_walk(base)
    return cycle_witness(base, 4, lift_walk(base, walk, 2), target)


def not_p0_6_cycle_witness(base: SignPattern, target: str = "P0_6") -> WitnessCertificate:
    """Six-factor witness on a graph with a cycle: lengthen the normalized 4-walk once."""
    walk = inherit_walk(_normalized_4_walk(base), 2)
    return cycle_witness(base, 6, lift_walk(base, walk, 3), target)


def p0_2_witness(base: SignPattern, target: str = "P0_2") -> WitnessCertificate:
    """Two-factor witness from the shortest cycle with even ``length/2 + weight``."""
    g = build_graph(base)
    report = classify_graph(base, g)
    c = report.two_odd_violation
    if c is None:
        raise DomainError("the pattern's graph is 2-odd")
    walk = ClosedWalk(_row_start(g, c.vertices), c.weight)
    return cycle_witness(base, 2, lift_walk(base, walk, 1), target)


def _check_tstar(base: SignPattern, embedding: TStar) -> WeightedBipartiteGraph:
    g = build_graph(base)
    if not isinstance(embedding, TStar) or not embedding.is_valid_in(g):
        raise DomainError("embedding is not a T* subgraph of the pattern's graph")
    return g


def _tree_signature(base: SignPattern, edges: Sequence[tuple[int, int]]) -> dict[int, int]:
    """Vertex signs ``s`` with ``s(row) * s(col) == base sign`` on every tree edge (BFS from each root)."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    sign: dict[int, int] = {}
    for root in sorted(adj):
        if root in sign:
            continue
        sign[root] = 1
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in adj[u]:
                i, j = (u, v) if u < base.rows else (v, u)
                want = sign[u] * base[i, j - base.rows]
                if v not in sign:
                    sign[v] = want
                    queue.append(v)
                elif sign[v] != want:
                    raise InternalError("tree edges admit no consistent signature")
    return sign


def tstar_ps_witness(base: SignPattern, embedding: TStar, target: str = "PS_4") -> WitnessCertificate:
    """Four factors reproducing the nonreal pair of the T* example inside ``base``.

    The template factors live on the 4x3 pattern whose graph is T*.  They are
    placed on the embedded vertices (transposed and cyclically rotated when the
    center is a column), signed by a vertex signature so each entry matches the
    base sign, and zero-padded.  The nonzero spectrum is that of the template.
    """
    g = _check_tstar(base, embedding)
    mids = [m for m, _ in embedding.arms]
    leaves = [leaf for _, leaf in embedding.arms]
    templates = [ExactMatrix.from_rows(f) for f in TSTAR_FACTORS]
    if g.is_left(embedding.center):
        row_of = {TSTAR_CENTER_ROW: embedding.center}
        row_of.update({TSTAR_LEAF_ROWS[a]: leaves[a] for a in range(3)})
        row_map = [row_of[r] for r in range(4)]
        col_map = [m - base.rows for m in mids]
        mats = templates
    else:
        # transposed template: its rows are the arm mids, its columns the center and leaves
        col_of = {TSTAR_CENTER_ROW: embedding.center - base.rows}
        col_of.update({TSTAR_LEAF_ROWS[a]: leaves[a] - base.rows for a in range(3)})
        row_map = list(mids)
        col_map = [col_of[r] for r in range(4)]
        mats = [templates[1].T, templates[2].T, templates[3].T, templates[0].T]
    sign = _tree_signature(base, embedding.edges())
    factors = []
    for m in mats:
        signed = ExactMatrix(
            m.rows,
            m.cols,
            tuple(
                m[a, b] * sign[row_map[a]] * sign[base.rows + col_map[b]]
                for a in range(m.rows)
                for b in range(m.cols)
            ),
        )
        full = signed.embed(base.rows, base.cols, row_map, col_map)
        factors.append(QualitativeSample(base, full, closure=True))
    product = multiply_alternating([f.matrix for f in factors])
    cp = char_poly(product)
    if not (cp % TSTAR_CUBIC).is_zero():
        raise InternalError("embedded T* product lost the template's cubic factor")
    return WitnessCertificate(target, base, tuple(factors), product, _violation_for(target, product, None))


def not_p0_6_witness(base: SignPattern, embedding: TStar, target: str = "P0_6") -> WitnessCertificate:
    """Six factors on the length-12 walk around T*, which is 6-even and not 6-repeating."""
    g = _check_tstar(base, embedding)
    walk = ClosedWalk(_row_start(g, embedding.walk()), 0)
    if is_2k_repeating_walk(walk, 3):
        raise InternalError("T* walk is 6-repeating")
    return cycle_witness(base, 6, lift_walk(base, walk, 3), target)


# ---------------------------------------------------------------------------
# Dispatch and strictification
# ---------------------------------------------------------------------------


def witness_for(base: SignPattern, statement: str) -> WitnessCertificate:
    """Certificate that ``statement`` fails for ``base``; smallest failing product length for ALL."""
    if statement not in STATEMENTS:
        raise DomainError(f"unknown statement {statement!r}; expected one of {', '.join(STATEMENTS)}")
    g = build_graph(base)
    report = classify_graph(base, g)
    if report.holds(statement):
        raise PreconditionError(f"{statement} holds for this pattern: no witness exists")
    k = statement_k(statement)
    if statement.startswith("P0"):
        if not report.two_odd and k in (2, None):
            return p0_2_witness(base, statement)
        if not report.forest:
            if k == 6:
                return not_p0_6_cycle_witness(base, statement)
            return not_p0_4_witness(base, statement)
        return not_p0_6_witness(base, report.tstar, statement)
    if not report.forest:
        if k == 4:
            return cycle_witness(base, 4, lift_walk(base, _normalized_4_walk(base), 2), statement)
        return not_ps_witness_2(base, report.cycle, statement)
    return tstar_ps_witness(base, report.tstar, statement)


def _fill(f: QualitativeSample, eps: Fraction) -> QualitativeSample:
    c = f.base.cols
    entries = list(f.matrix.entries)
    for i, j in f.structural_zeros():
        entries[i * c + j] = f.base[i, j] * eps
    return QualitativeSample(f.base, ExactMatrix(f.base.rows, f.base.cols, tuple(entries)), closure=False)


def _persists(product: ExactMatrix, original: Violation) -> Violation | None:
    if isinstance(original, MinorViolation):
        value = minor(product, original.index)
        return MinorViolation(original.index, value) if value < 0 else None
    v = ps_from_char_poly(char_poly(product))
    return None if v.holds else SpectralViolation.from_verdict(v)


def strictify(w: WitnessCertificate, epsilon=DEFAULT_EPSILON) -> WitnessCertificate:
    """Replace structural zeros by ``±eps``, halving ``eps`` until the violation survives exactly."""
    if w.is_strict:
        return w
    if not any(f.structural_zeros() for f in w.factors):
        strict = tuple(QualitativeSample(f.base, f.matrix, closure=False) for f in w.factors)
        return replace(
            w, strict_factors=strict, strict_product=w.product, strict_violation=w.violation, epsilon=Fraction(0)
        )
    eps = Fraction(epsilon)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    for _ in range(MAX_HALVINGS + 1):
        factors = tuple(_fill(f, eps) for f in w.factors)
        product = multiply_alternating([f.matrix for f in factors])
        v = _persists(product, w.violation)
        if v is not None:
            return replace(w, strict_factors=factors, strict_product=product, strict_violation=v, epsilon=eps)
        eps /= 2
    raise InternalError(f"violation did not survive perturbation down to eps = {eps * 2}")
