"""Brute-force reference implementations used only by the tests.

These trade speed for obviousness: permutation expansions, interpolation and
exhaustive enumeration.  None of them share code with the library.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows) -> Fraction:
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= rows[i][p[i]]
            if not term:
                break
        total += term
    return total


def principal_minors(rows) -> dict[tuple[int, ...], Fraction]:
    n = len(rows)
    out = {}
    for size in range(1, n + 1):
        for alpha in combinations(range(n), size):
            out[alpha] = leibniz_det([[rows[i][j] for j in alpha] for i in alpha])
    return out


def matmul(a, b):
    return [[sum((Fraction(a[i][p]) * b[p][j] for p in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(c) for c in zip(*a)]


def alternating(mats):
    acc = mats[0]
    for t, m in enumerate(mats[1:], start=1):
        acc = matmul(acc, transpose(m) if t % 2 else m)
    return acc


def char_poly_interpolated(rows) -> list[Fraction]:
    """Ascending coefficients of det(xI - M) from its values at x = 0..n (Lagrange)."""
    n = len(rows)
    xs = list(range(n + 1))
    ys = [leibniz_det([[Fraction(x if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for k, xk in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for i in range(len(basis) - 1):
                basis[i] -= xm * basis[i + 1]
            denom *= xk - xm
        for i in range(n + 1):
            coeffs[i] += ys[k] * basis[i] / denom
    return coeffs


def graph_edges(pattern_rows):
    n = len(pattern_rows)
    return {frozenset((i, n + j)) for i, r in enumerate(pattern_rows) for j, x in enumerate(r) if x}


def simple_cycles(n_vertices: int, edges) -> set[frozenset]:
    """All cycles of an undirected graph, each as its frozenset of edges (exhaustive over vertex orders)."""
    out = set()
    for size in range(3, n_vertices + 1):
        for verts in combinations(range(n_vertices), size):
            first = verts[0]
            for rest in permutations(verts[1:]):
                order = (first,) + rest
                es = [frozenset((order[t], order[(t + 1) % size])) for t in range(size)]
                if all(e in edges for e in es):
                    out.add(frozenset(es))
    return out


def closed_walks(adj, length: int):
    """Every closed walk of the given length, as a vertex tuple starting anywhere."""
    n = len(adj)
    for vs in product(range(n), repeat=length):
        if all(vs[(t + 1) % length] in adj[vs[t]] for t in range(length)):
            yield vs


def directed_cycles(n: int, arcs: set[tuple[int, int]]) -> set[tuple[int, ...]]:
    """Simple directed cycles, each rotated to start at its least vertex."""
    out = set()
    for size in range(1, n + 1):
        for verts in combinations(range(n), size):
            first = verts[0]
            for rest in permutations(verts[1:]):
                order = (first,) + rest
                if all((order[t], order[(t + 1) % size]) in arcs for t in range(size)):
                    out.add(order)
    return out
