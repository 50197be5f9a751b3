"""Diagonal scalings ``D a E = b`` between members of one qualitative class.

Over a forest every target is reachable: fix the least vertex of each
component to scale 1 and propagate the ratios ``b_ij / a_ij`` along a spanning
tree.  Each non-tree edge closes a cycle on which the alternating products of
the ratios must agree; the first disagreement is returned as an obstruction.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bipartite import GraphCycle, build_graph, is_forest, make_cycle
from .errors import DimensionError, DomainError, InternalError, PreconditionError
from .exact import ExactMatrix
from .signpat import SignPattern, sign_of

RELATIVE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class DiagonalPair:
    d: tuple[Fraction, ...]
    e: tuple[Fraction, ...]

    def __post_init__(self):
        if any(x <= 0 for x in self.d + self.e):
            raise DomainError("diagonal scalings must be positive")

    def apply(self, a: ExactMatrix) -> ExactMatrix:
        if a.shape != (len(self.d), len(self.e)):
            raise DimensionError(f"scaling of shape {(len(self.d), len(self.e))} applied to {a.shape}")
        return ExactMatrix(
            a.rows, a.cols, tuple(self.d[i] * a[i, j] * self.e[j] for i in range(a.rows) for j in range(a.cols))
        )


@dataclass(frozen=True)
class CycleObstruction:
    """Cycle ``X i1 Y j1 X i2 ... Y jr`` with ``lhs = prod P[i_t, j_t]`` and ``rhs = prod P[i_{t+1}, j_t]``.

    ``P`` is the entrywise ratio ``b / a``; a scaling exists only if the two agree.
    """

    cycle: GraphCycle
    lhs: Fraction
    rhs: Fraction


def _ratios(a: ExactMatrix, b: ExactMatrix) -> dict[tuple[int, int], Fraction]:
    if a.shape != b.shape:
        raise DimensionError(f"shapes differ: {a.shape} vs {b.shape}")
    if sign_of(a) != sign_of(b):
        raise DomainError("reference and target have different sign patterns")
    return {(i, j): b[i, j] / a[i, j] for i in range(a.rows) for j in range(a.cols) if a[i, j] != 0}


def cycle_products(ratio: dict[tuple[int, int], Fraction], cycle_vertices: Sequence[int], n: int) -> tuple[Fraction, Fraction]:
    vs = list(cycle_vertices)
    if vs[0] >= n:
        vs = vs[1:] + vs[:1]
    r = len(vs) // 2
    lhs = rhs = Fraction(1)
    for t in range(r):
        i, j = vs[2 * t], vs[2 * t + 1] - n
        lhs *= ratio[(i, j)]
        rhs *= ratio[(vs[(2 * t + 2) % len(vs)], j)]
    return lhs, rhs


def factor(a: ExactMatrix, b: ExactMatrix) -> DiagonalPair | CycleObstruction:
    """Find positive diagonals with ``D a E = b`` or a cycle proving none exist."""
    ratio = _ratios(a, b)
    n, m = a.shape
    p = sign_of(a)
    g = build_graph(p)
    scale: list[Fraction | None] = [None] * (n + m)
    parent: list[int | None] = [None] * (n + m)
    depth = [0] * (n + m)
    tree_edges = set()
    for root in range(n + m):
        if scale[root] is not None:
            continue
        scale[root] = Fraction(1)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if scale[v] is not None:
                    continue
                i, j = (u, v - n) if u < n else (v, u - n)
                # d_i * e_j = ratio[i, j]
                scale[v] = ratio[(i, j)] / scale[u]
                parent[v], depth[v] = u, depth[u] + 1
                tree_edges.add((i, j))
                queue.append(v)
    for (i, j), r in sorted(ratio.items()):
        if (i, j) in tree_edges or scale[i] * scale[n + j] == r:
            continue
        cycle = _fundamental_cycle(parent, depth, i, n + j)
        c = make_cycle(g, cycle)
        lhs, rhs = cycle_products(ratio, c.vertices, n)
        if lhs == rhs:
            raise InternalError("violated edge closed a cycle with equal products")
        return CycleObstruction(c, lhs, rhs)
    return DiagonalPair(tuple(scale[:n]), tuple(scale[n:]))


def _fundamental_cycle(parent, depth, u: int, v: int) -> list[int]:
    left, right = [u], [v]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


def is_q_prime_equal_q(p: SignPattern) -> bool:
    """Whether every member of Q(p) is a diagonal scaling ``D A E`` of any fixed member."""
    return is_forest(build_graph(p))


def ps_similarity_factor(
    a: ExactMatrix,
    d1: Sequence,
    d2: Sequence,
    d3: Sequence,
) -> tuple[np.ndarray, np.ndarray]:
    """Floating ``M, P`` with ``D1 A D2 A^t D3 = P M M^t P^-1``.

    ``M = D3^(1/2) D1^(1/2) A D2^(1/2)`` and ``P = D1^(1/2) D3^(-1/2)``; the
    recomposition is verified to relative Frobenius tolerance ``1e-12``.
    """
    if not is_forest(build_graph(sign_of(a))):
        raise PreconditionError("the matrix's graph is not a forest")
    d1, d2, d3 = (np.array([float(x) for x in d], dtype=float) for d in (d1, d2, d3))
    if len(d1) != a.rows or len(d3) != a.rows or len(d2) != a.cols:
        raise DimensionError("diagonal lengths do not match the matrix")
    if min(d1.min(initial=1), d2.min(initial=1), d3.min(initial=1)) <= 0:
        raise DomainError("diagonals must be positive")
    af = a.to_numpy()
    m = (np.sqrt(d3 * d1)[:, None] * af) * np.sqrt(d2)[None, :]
    p = np.diag(np.sqrt(d1 / d3))
    target = (d1[:, None] * af * d2[None, :]) @ af.T * d3[None, :]
    recomposed = p @ m @ m.T @ np.diag(np.sqrt(d3 / d1))
    scale = max(np.linalg.norm(target), math.ulp(1.0))
    if np.linalg.norm(recomposed - target) > RELATIVE_TOLERANCE * scale:
        raise InternalError("similarity recomposition exceeded tolerance")
    return m, p
