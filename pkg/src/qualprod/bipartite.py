"""Weighted bipartite graphs of sign patterns.

Vertex ids are integers: row ``i`` is vertex ``i`` (an X-vertex) and column
``j`` is vertex ``n_left + j`` (a Y-vertex).  Edge weight is 1 exactly for
negative entries.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from .errors import InternalError, ResourceError
from .signpat import SignPattern

DEFAULT_CYCLE_BOUND = 2 * 10**6


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    n_left: int
    n_right: int
    edges: frozenset[tuple[int, int, int]]  # (row, column, weight)

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    def is_left(self, v: int) -> bool:
        return v < self.n_left

    def x(self, i: int) -> int:
        return i

    def y(self, j: int) -> int:
        return self.n_left + j

    def label(self, v: int) -> str:
        return f"X{v + 1}" if v < self.n_left else f"Y{v - self.n_left + 1}"

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for i, j, _ in self.edges:
            adj[i].append(self.n_left + j)
            adj[self.n_left + j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _weights(self) -> dict[tuple[int, int], int]:
        out = {}
        for i, j, w in self.edges:
            y = self.n_left + j
            out[(i, y)] = w
            out[(y, i)] = w
        return out

    def weight(self, u: int, v: int) -> int:
        try:
            return self._weights[(u, v)]
        except KeyError:
            raise KeyError(f"no edge between {self.label(u)} and {self.label(v)}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n_vertices
        comps = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def edge_subgraph(self, vertex_pairs) -> "WeightedBipartiteGraph":
        """Subgraph on the same vertex set keeping only the given edges."""
        keep = set()
        for u, v in vertex_pairs:
            if u > v:
                u, v = v, u
            keep.add((u, v - self.n_left))
        return WeightedBipartiteGraph(
            self.n_left, self.n_right, frozenset(e for e in self.edges if (e[0], e[1]) in keep)
        )


def build_graph(p: SignPattern) -> WeightedBipartiteGraph:
    return WeightedBipartiteGraph(
        p.rows, p.cols, frozenset((i, j, int(p[i, j] < 0)) for i, j in p.nonzeros())
    )


def is_forest(g: WeightedBipartiteGraph) -> bool:
    return len(g.edges) == g.n_vertices - len(g.components())


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphCycle:
    """Cycle as its vertex sequence, without repeating the start vertex."""

    vertices: tuple[int, ...]
    weight: int

    @property
    def length(self) -> int:
        return len(self.vertices)

    def two_weight(self) -> int:
        return (self.length // 2 + self.weight) % 2

    @property
    def is_two_odd(self) -> bool:
        return self.two_weight() == 1

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[t], v[(t + 1) % len(v)]) for t in range(len(v))]


def _canonical_cycle(vs: list[int]) -> tuple[int, ...]:
    s = vs.index(min(vs))
    r = vs[s:] + vs[:s]
    if len(r) > 2 and r[-1] < r[1]:
        r = [r[0]] + r[1:][::-1]
    return tuple(r)


def make_cycle(g: WeightedBipartiteGraph, vertices) -> GraphCycle:
    vs = list(vertices)
    w = sum(g.weight(vs[t], vs[(t + 1) % len(vs)]) for t in range(len(vs))) % 2
    return GraphCycle(_canonical_cycle(vs), w)


def enumerate_cycles(
    g: WeightedBipartiteGraph,
    max_len: int | None = None,
    bound: int = DEFAULT_CYCLE_BOUND,
) -> list[GraphCycle]:
    """All cycles of length at most ``max_len``, each once, sorted by length then vertices.

    Backtracking from each vertex ``s`` as the least vertex of the cycle; the two
    traversal directions are merged by keeping the one whose second vertex is
    smaller than its last.  More than ``bound`` path extensions raise
    :class:`ResourceError`.
    """
    n = g.n_vertices
    max_len = n if max_len is None else max_len
    adj = g.adjacency
    found: list[GraphCycle] = []
    visits = 0
    for s in range(n):
        path = [s]
        on_path = {s}

        def extend(u: int) -> None:
            nonlocal visits
            for v in adj[u]:
                if v == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        found.append(make_cycle(g, path))
                elif v > s and v not in on_path and len(path) < max_len:
                    visits += 1
                    if visits > bound:
                        raise ResourceError(f"cycle enumeration exceeded {bound} path extensions", bound=bound)
                    path.append(v)
                    on_path.add(v)
                    extend(v)
                    path.pop()
                    on_path.discard(v)

        extend(s)
    found.sort(key=lambda c: (c.length, c.vertices))
    return found


def _max_cycle_length(g: WeightedBipartiteGraph) -> int:
    return 2 * min(g.n_left, g.n_right)


@dataclass(frozen=True)
class TwoOddVerdict:
    holds: bool
    cycle: GraphCycle | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_two_odd(g: WeightedBipartiteGraph, bound: int = DEFAULT_CYCLE_BOUND) -> TwoOddVerdict:
    """Every cycle must have ``length/2 + weight`` odd; report the shortest violator otherwise.

    Lengths are searched in increasing order so dense graphs stop at their
    short violators.
    """
    if is_forest(g):
        return TwoOddVerdict(True)
    for length in range(4, _max_cycle_length(g) + 1, 2):
        for c in enumerate_cycles(g, length, bound):
            if c.length == length and not c.is_two_odd:
                return TwoOddVerdict(False, c)
    return TwoOddVerdict(True)


def shortest_cycle(g: WeightedBipartiteGraph, bound: int = DEFAULT_CYCLE_BOUND) -> GraphCycle | None:
    if is_forest(g):
        return None
    for length in range(4, _max_cycle_length(g) + 1, 2):
        cycles = enumerate_cycles(g, length, bound)
        if cycles:
            return cycles[0]
    raise InternalError("graph with a cycle has no cycle")


# ---------------------------------------------------------------------------
# Caterpillars and T*
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TStar:
    """Spider with three legs of length two: ``center - mid_i - leaf_i``."""

    center: int
    arms: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center,) + tuple(v for arm in self.arms for v in arm)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for mid, leaf in self.arms:
            out += [(self.center, mid), (mid, leaf)]
        return out

    def walk(self) -> tuple[int, ...]:
        """The length-12 closed walk that visits each leg out and back in turn."""
        (m0, l0), (m1, l1), (m2, l2) = self.arms
        c = self.center
        return (l0, m0, c, m1, l1, m1, c, m2, l2, m2, c, m0)

    def is_valid_in(self, g: WeightedBipartiteGraph) -> bool:
        vs = self.vertices
        if len(set(vs)) != 7 or any(not 0 <= v < g.n_vertices for v in vs):
            return False
        return all(g.has_edge(u, v) for u, v in self.edges())


def find_tstar(g: WeightedBipartiteGraph) -> TStar | None:
    """Search for a (not necessarily induced) subgraph isomorphic to T*."""
    adj = g.adjacency
    for c in range(g.n_vertices):
        if len(adj[c]) < 3:
            continue
        for mids in combinations(adj[c], 3):
            options = [[w for w in adj[m] if w != c and w not in mids] for m in mids]
            if any(not o for o in options):
                continue
            for l0 in options[0]:
                for l1 in options[1]:
                    if l1 == l0:
                        continue
                    for l2 in options[2]:
                        if l2 in (l0, l1):
                            continue
                        return TStar(c, ((mids[0], l0), (mids[1], l1), (mids[2], l2)))
    return None


def caterpillar_by_leaf_removal(g: WeightedBipartiteGraph) -> bool:
    """Forest whose components each become a path (or vanish) once leaves are deleted."""
    if not is_forest(g):
        return False
    adj = g.adjacency
    leaves = {v for v in range(g.n_vertices) if len(adj[v]) == 1}
    for v in range(g.n_vertices):
        if v in leaves:
            continue
        if sum(1 for u in adj[v] if u not in leaves) > 2:
            return False
    return True


@dataclass(frozen=True)
class CaterpillarVerdict:
    holds: bool
    forest: bool
    tstar: TStar | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_caterpillar_forest(g: WeightedBipartiteGraph) -> CaterpillarVerdict:
    """Leaf-deletion test cross-checked against the T*-subgraph test on forests."""
    forest = is_forest(g)
    by_leaves = caterpillar_by_leaf_removal(g)
    if not forest:
        return CaterpillarVerdict(False, False)
    tstar = find_tstar(g)
    if by_leaves != (tstar is None):
        raise InternalError("leaf-removal and T* tests disagree on a forest")
    return CaterpillarVerdict(by_leaves, True, tstar)


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def to_dot(g: WeightedBipartiteGraph, name: str = "Gamma") -> str:
    lines = [f"graph {name} {{"]
    lines.append("  node [shape=circle];")
    xs = " ".join(f'"{g.label(v)}";' for v in range(g.n_left))
    ys = " ".join(f'"{g.label(v)}";' for v in range(g.n_left, g.n_vertices))
    lines.append(f"  {{ rank=same; {xs} }}")
    lines.append(f"  {{ rank=same; {ys} }}")
    for i, j, w in sorted(g.edges):
        attrs = ' [style=dashed, label="1"]' if w else ""
        lines.append(f'  "{g.label(i)}" -- "{g.label(g.n_left + j)}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_isomorphic_small(g: WeightedBipartiteGraph, h: WeightedBipartiteGraph) -> bool:
    """Brute-force unweighted isomorphism check, for tiny graphs in tests and examples."""
    if g.n_vertices != h.n_vertices or len(g.edges) != len(h.edges):
        return False
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return False
    ge = {frozenset((u, v)) for u in range(g.n_vertices) for v in g.adjacency[u]}
    he = {frozenset((u, v)) for u in range(h.n_vertices) for v in h.adjacency[u]}
    for perm in permutations(range(h.n_vertices)):
        if all(frozenset((perm[u], perm[v])) in he for u, v in map(tuple, ge)):
            return True
    return False
