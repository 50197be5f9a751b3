"""Block-circulant digraphs of matrix products and the ``2k``-odd criterion.

For patterns ``P_0, ..., P_{k-1}`` the digraph has ``k`` vertex blocks; block
``b`` has ``rows(P_b)`` vertices and each nonzero ``P_b[i, j]`` gives an arc
from vertex ``i`` of block ``b`` to vertex ``j`` of block ``b+1 mod k``, with
weight 1 when the entry is negative.  Every cycle has length a multiple of
``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, DomainError, InternalError, ResourceError
from .signpat import SignPattern
from .walks import ClosedWalk, is_2k_repeating_walk

DEFAULT_VISIT_BOUND = 10**7


@dataclass(frozen=True)
class Arc:
    block: int
    source: int
    target: int
    weight: int


@dataclass(frozen=True)
class BlockCirculantDigraph:
    patterns: tuple[SignPattern, ...]

    def __post_init__(self):
        k = len(self.patterns)
        if k < 1:
            raise DimensionError("need at least one block")
        for b in range(k):
            nxt = self.patterns[(b + 1) % k]
            if self.patterns[b].cols != nxt.rows:
                raise DimensionError(
                    f"block {b} has {self.patterns[b].cols} columns but block {(b + 1) % k} has {nxt.rows} rows"
                )

    @property
    def k(self) -> int:
        return len(self.patterns)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(p.rows for p in self.patterns)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for size in self.block_sizes:
            out.append(acc)
            acc += size
        return tuple(out)

    @property
    def n_vertices(self) -> int:
        return sum(self.block_sizes)

    def vertex(self, block: int, index: int) -> int:
        return self.offsets[block] + index

    def locate(self, v: int) -> tuple[int, int]:
        """Global vertex id to ``(block, index)``."""
        for b in range(self.k - 1, -1, -1):
            if v >= self.offsets[b]:
                return b, v - self.offsets[b]
        raise IndexError(v)

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(
            Arc(b, i, j, int(p[i, j] < 0)) for b, p in enumerate(self.patterns) for i, j in p.nonzeros()
        )

    @cached_property
    def _arc_lookup(self) -> dict[tuple[int, int], Arc]:
        return {
            (self.vertex(a.block, a.source), self.vertex((a.block + 1) % self.k, a.target)): a for a in self.arcs
        }

    def arc_between(self, u: int, v: int) -> Arc:
        return self._arc_lookup[(u, v)]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.n_vertices
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a in self.arcs:
            out[self.vertex(a.block, a.source)].append((self.vertex((a.block + 1) % self.k, a.target), a.weight))
        indptr = np.zeros(n + 1, dtype=np.int32)
        indices, weights = [], []
        for v in range(n):
            nbrs = sorted(out[v])
            indptr[v + 1] = indptr[v] + len(nbrs)
            indices += [t for t, _ in nbrs]
            weights += [w for _, w in nbrs]
        return indptr, np.array(indices, dtype=np.int32), np.array(weights, dtype=np.uint8)


def build_block_digraph(patterns: Sequence[SignPattern]) -> BlockCirculantDigraph:
    return BlockCirculantDigraph(tuple(patterns))


def alternating_digraph(base: SignPattern, k: int) -> BlockCirculantDigraph:
    """Digraph of ``(A A^t)^k``: ``2k`` blocks alternating ``A`` and ``A^t``."""
    if k < 1:
        raise DomainError("k must be positive")
    return BlockCirculantDigraph((base, base.transpose()) * k)


@dataclass(frozen=True)
class DigraphCycle:
    """Cycle as global vertex ids starting at its least vertex."""

    vertices: tuple[int, ...]
    weight: int
    k: int

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def repeats(self) -> int:
        """Number of passes ``j`` through the blocks (``length = j * k``)."""
        return self.length // self.k

    @property
    def k_weight(self) -> int:
        return (self.repeats + self.weight) % 2

    @property
    def is_k_odd(self) -> bool:
        return self.k_weight == 1


def _as_cycle(d: BlockCirculantDigraph, vs: Sequence[int]) -> DigraphCycle:
    w = sum(d.arc_between(vs[t], vs[(t + 1) % len(vs)]).weight for t in range(len(vs))) % 2
    return DigraphCycle(tuple(vs), w, d.k)


def _search(d: BlockCirculantDigraph, mode: int, bound: int, backend=None) -> list[DigraphCycle]:
    indptr, indices, weights = d.csr
    fn = backend or kernels.find_cycles
    found, visits, exceeded = fn(d.n_vertices, indptr, indices, weights, d.k, mode, bound)
    if exceeded:
        raise ResourceError(f"cycle enumeration exceeded {bound} visited partial paths", bound=bound)
    return [_as_cycle(d, c) for c in found]


def enumerate_digraph_cycles(
    d: BlockCirculantDigraph, bound: int = DEFAULT_VISIT_BOUND, backend=None
) -> list[DigraphCycle]:
    cycles = _search(d, kernels.MODE_ALL, bound, backend)
    cycles.sort(key=lambda c: (c.length, c.vertices))
    return cycles


@dataclass(frozen=True)
class KOddVerdict:
    holds: bool
    cycle: DigraphCycle | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_k_odd(d: BlockCirculantDigraph, bound: int = DEFAULT_VISIT_BOUND, backend=None) -> KOddVerdict:
    """Every cycle must have ``k``-weight 1; otherwise report a ``k``-even cycle."""
    hits = _search(d, kernels.MODE_FIRST_EVEN, bound, backend)
    return KOddVerdict(not hits, hits[0] if hits else None)


def has_long_cycle(d: BlockCirculantDigraph, bound: int = DEFAULT_VISIT_BOUND, backend=None) -> DigraphCycle | None:
    """A cycle of length ``jk`` with ``j >= 2``, if one exists (such cycles already rule out PS)."""
    hits = _search(d, kernels.MODE_FIRST_LONG, bound, backend)
    return hits[0] if hits else None


# ---------------------------------------------------------------------------
# Projection to the bipartite graph
# ---------------------------------------------------------------------------


def _check_alternating(d: BlockCirculantDigraph) -> SignPattern:
    if d.k % 2:
        raise DomainError("projection needs an even number of alternating blocks")
    a = d.patterns[0]
    at = a.transpose()
    for b, p in enumerate(d.patterns):
        if p != (a if b % 2 == 0 else at):
            raise DomainError("digraph blocks do not alternate A and A^t")
    return a


def project_vertex(d: BlockCirculantDigraph, v: int) -> int:
    """Vertex of the bipartite graph: even blocks are rows, odd blocks columns."""
    a = d.patterns[0]
    b, idx = d.locate(v)
    return idx if b % 2 == 0 else a.rows + idx


def project(d: BlockCirculantDigraph) -> dict[Arc, tuple[int, int, int]]:
    """Map each arc to the bipartite edge ``(row, column, weight)`` of the same matrix entry."""
    _check_alternating(d)
    out = {}
    for arc in d.arcs:
        if arc.block % 2 == 0:
            out[arc] = (arc.source, arc.target, arc.weight)
        else:
            out[arc] = (arc.target, arc.source, arc.weight)
    return out


def project_cycle(d: BlockCirculantDigraph, c: DigraphCycle) -> ClosedWalk:
    _check_alternating(d)
    return ClosedWalk(tuple(project_vertex(d, v) for v in c.vertices), c.weight)


def lift_walk(base: SignPattern, w: ClosedWalk, k: int) -> DigraphCycle:
    """Lift a closed walk of length ``2jk`` starting at a row vertex to a cycle of the ``(A A^t)^k`` digraph.

    Position ``t`` goes to block ``t mod 2k``.  Raises if the lift repeats a
    vertex, which happens exactly when the walk is ``2k``-repeating.
    """
    if w.length % (2 * k):
        raise DomainError(f"walk length {w.length} is not a multiple of {2 * k}")
    if w.vertices[0] >= base.rows:
        raise DomainError("walk must start at a row vertex")
    d = alternating_digraph(base, k)
    vs = []
    for t, v in enumerate(w.vertices):
        b = t % (2 * k)
        idx = v if b % 2 == 0 else v - base.rows
        if (b % 2 == 0) != (v < base.rows):
            raise DomainError("walk does not alternate rows and columns from the start")
        vs.append(d.vertex(b, idx))
    if len(set(vs)) != len(vs):
        raise DomainError("walk is 2k-repeating and does not lift to a cycle")
    for t in range(len(vs)):
        d.arc_between(vs[t], vs[(t + 1) % len(vs)])  # KeyError if not an arc
    return DigraphCycle(tuple(vs), _as_cycle(d, vs).weight, d.k)


@dataclass(frozen=True)
class P0Criterion:
    holds: bool
    k: int
    cycle: DigraphCycle | None = None
    walk: ClosedWalk | None = None

    def __bool__(self) -> bool:
        return self.holds


def p0_criterion(base: SignPattern, k: int, bound: int = DEFAULT_VISIT_BOUND, backend=None) -> P0Criterion:
    """Decide whether every product in Q^{2k}(base) is a P0-matrix by ``2k``-oddness of the digraph."""
    d = alternating_digraph(base, k)
    verdict = is_k_odd(d, bound, backend)
    if verdict.holds:
        return P0Criterion(True, k)
    walk = project_cycle(d, verdict.cycle)
    if is_2k_repeating_walk(walk, k):
        raise InternalError("projection of a digraph cycle is 2k-repeating")
    return P0Criterion(False, k, verdict.cycle, walk)


def to_dot(d: BlockCirculantDigraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for b, size in enumerate(d.block_sizes):
        names = " ".join(f'"b{b}_{i + 1}";' for i in range(size))
        lines.append(f"  {{ rank=same; {names} }}")
    for a in d.arcs:
        attrs = ' [style=dashed, label="1"]' if a.weight else ""
        lines.append(f'  "b{a.block}_{a.source + 1}" -> "b{(a.block + 1) % d.k}_{a.target + 1}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"
