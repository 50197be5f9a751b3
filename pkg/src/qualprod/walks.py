"""Closed walks, labelled walks and repeating properties.

A closed walk is stored as its vertex sequence ``v0 .. v_{r-1}``; the closing
return to ``v0`` is implicit.  Walks are equal when they differ only by the
choice of start vertex; direction is kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bipartite import GraphCycle, WeightedBipartiteGraph, is_caterpillar_forest
from .errors import DomainError, InternalError, PreconditionError, ResourceError

DEFAULT_J_MAX = 3
DEFAULT_WALK_BOUND = 10**7


@dataclass(frozen=True, eq=False)
class ClosedWalk:
    vertices: tuple[int, ...]
    weight: int

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def closed(self) -> tuple[int, ...]:
        return self.vertices + self.vertices[:1]

    def canonical(self) -> tuple[int, ...]:
        vs = self.vertices
        return min(vs[i:] + vs[:i] for i in range(len(vs))) if vs else ()

    def rotate(self, shift: int) -> "ClosedWalk":
        vs = self.vertices
        shift %= len(vs)
        return ClosedWalk(vs[shift:] + vs[:shift], self.weight)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedWalk):
            return NotImplemented
        return self.weight == other.weight and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.canonical(), self.weight))


def make_walk(g: WeightedBipartiteGraph, vertices: Sequence[int]) -> ClosedWalk:
    """Validate adjacency (including the closing step) and compute the weight."""
    vs = tuple(vertices)
    if len(vs) > 1 and vs[-1] == vs[0]:
        vs = vs[:-1]
    if len(vs) < 2:
        raise DomainError("a closed walk needs at least one edge traversed out and back")
    w = 0
    for t in range(len(vs)):
        u, v = vs[t], vs[(t + 1) % len(vs)]
        if not g.has_edge(u, v):
            raise DomainError(f"{g.label(u)} and {g.label(v)} are not adjacent")
        w += g.weight(u, v)
    return ClosedWalk(vs, w % 2)


def walk_from_cycle(c: GraphCycle) -> ClosedWalk:
    return ClosedWalk(c.vertices, c.weight)


def underlying_graph(g: WeightedBipartiteGraph, w: ClosedWalk) -> WeightedBipartiteGraph:
    vs = w.vertices
    return g.edge_subgraph((vs[t], vs[(t + 1) % len(vs)]) for t in range(len(vs)))


def k_weight(w: ClosedWalk, k: int) -> Fraction:
    """``|W|/k + w(W)`` reduced mod 2; may be fractional when ``k`` does not divide ``|W|``."""
    if k < 1:
        raise DomainError("k must be positive")
    return (Fraction(w.length, k) + w.weight) % 2


def labels(w: ClosedWalk, k: int) -> dict[int, list[int]]:
    """Label list per vertex: occurrence at position ``t`` gets label ``t mod k``."""
    out: dict[int, list[int]] = {}
    for t, v in enumerate(w.vertices):
        out.setdefault(v, []).append(t % k)
    return out


def is_2k_repeating_walk(w: ClosedWalk, k: int) -> bool:
    """Whether some vertex repeats a label in the ``2k``-labelled walk."""
    if k < 1:
        raise DomainError("k must be positive")
    if w.length % (2 * k):
        raise DomainError(f"walk length {w.length} is not a multiple of {2 * k}")
    return any(len(set(ls)) < len(ls) for ls in labels(w, 2 * k).values())


def closed_subwalk_lengths(w: ClosedWalk) -> set[int]:
    """Lengths ``d`` with ``v_i == v_{i+d}`` for some ``i`` (cyclic), ``0 < d <= |W|``."""
    vs, r = w.vertices, w.length
    out = {r}
    for d in range(1, r):
        if any(vs[i] == vs[(i + d) % r] for i in range(r)):
            out.add(d)
    return out


# ---------------------------------------------------------------------------
# Graph-level repeating search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepeatingVerdict:
    holds: bool
    walk: ClosedWalk | None = None
    j_max: int = DEFAULT_J_MAX
    visits: int = 0

    def __bool__(self) -> bool:
        return self.holds

    @property
    def note(self) -> str:
        return "refuted" if not self.holds else f"verified to bound j<={self.j_max}"


def find_nonrepeating_walk(
    g: WeightedBipartiteGraph,
    k: int,
    length: int,
    bound: int = DEFAULT_WALK_BOUND,
) -> tuple[ClosedWalk | None, int]:
    """Search for a closed walk of the given length that fails ``2k``-repeating.

    Depth-first over walks whose start is their least vertex; a step is pruned
    as soon as a vertex would repeat a label.
    """
    mod = 2 * k
    adj = g.adjacency
    visits = 0
    for s in range(g.n_vertices):
        if not adj[s]:
            continue
        used = {(s, 0)}
        path = [s]

        def extend(u: int) -> list[int] | None:
            nonlocal visits
            t = len(path)
            if t == length:
                return list(path) if s in adj[u] else None
            for v in adj[u]:
                if v < s or (v, t % mod) in used:
                    continue
                visits += 1
                if visits > bound:
                    raise ResourceError(f"walk enumeration exceeded {bound} partial walks", bound=bound)
                used.add((v, t % mod))
                path.append(v)
                hit = extend(v)
                if hit is not None:
                    return hit
                path.pop()
                used.discard((v, t % mod))
            return None

        hit = extend(s)
        if hit is not None:
            return make_walk(g, hit), visits
    return None, visits


def is_2k_repeating_graph(
    g: WeightedBipartiteGraph,
    k: int,
    j_max: int = DEFAULT_J_MAX,
    bound: int = DEFAULT_WALK_BOUND,
) -> RepeatingVerdict:
    """Search all closed walks of length ``2jk`` for ``2 <= j <= j_max`` for a non-repeating one.

    A positive verdict is exhaustive only up to ``j_max``.
    """
    if k < 1:
        raise DomainError("k must be positive")
    total = 0
    for j in range(2, j_max + 1):
        walk, visits = find_nonrepeating_walk(g, k, 2 * j * k, bound - total)
        total += visits
        if walk is not None:
            return RepeatingVerdict(False, walk, j_max, total)
    return RepeatingVerdict(True, None, j_max, total)


# ---------------------------------------------------------------------------
# Walk transformations
# ---------------------------------------------------------------------------


def caterpillar_ivt_check(g: WeightedBipartiteGraph, w: ClosedWalk) -> bool:
    """True iff ``w`` has a closed subwalk of every even length ``2s``, ``1 <= s <= |w|/2``.

    Requires the subgraph traced by ``w`` to be a caterpillar.
    """
    sub = underlying_graph(g, w)
    if not is_caterpillar_forest(sub):
        raise PreconditionError("the walk's underlying graph is not a caterpillar")
    lengths = closed_subwalk_lengths(w)
    return all(2 * s in lengths for s in range(1, w.length // 2 + 1))


def inherit_walk(w: ClosedWalk, s: int) -> ClosedWalk:
    """Lengthen a walk failing ``2s``-repeating into one failing ``2(s+1)``-repeating.

    After each pair ``v_{2rs-2}, v_{2rs-1}`` (``r = 1..j``) a second copy of the
    pair is inserted; the added steps retrace one edge, so the weight is unchanged.
    """
    if s < 1 or w.length % (2 * s):
        raise PreconditionError(f"walk length {w.length} is not a positive multiple of {2 * s}")
    if is_2k_repeating_walk(w, s):
        raise PreconditionError(f"walk is {2 * s}-repeating")
    j = w.length // (2 * s)
    vs = w.vertices
    out: list[int] = []
    for t, v in enumerate(vs):
        out.append(v)
        if (t + 1) % (2 * s) == 0:
            out += [vs[t - 1], vs[t]]
    result = ClosedWalk(tuple(out), w.weight)
    if result.length != 2 * j * (s + 1) or is_2k_repeating_walk(result, s + 1):
        raise InternalError("lengthened walk failed its postcondition")
    return result


def _insert_backtrack(vs: list[int], a: int) -> list[int]:
    """Insert ``v_a v_{a+1}`` (0-based) right after ``v_{a+1}``."""
    return vs[: a + 2] + [vs[a], vs[a + 1]] + vs[a + 2 :]


def normalize_walk_weight_4(c: GraphCycle, g: WeightedBipartiteGraph | None = None) -> ClosedWalk:
    """Pad a cycle with back-and-forth steps so the result has 4-weight 0 and fails 4-repeating.

    The cycle is rotated to start at a row vertex when ``g`` is given.  With
    ``L = (v1 .. v2r)``, ``L1`` inserts ``v1 v2`` after ``v2``, ``L2`` additionally
    inserts ``v3 v4`` after ``v4`` and ``L3`` additionally ``v5 v6`` after ``v6``;
    the choice depends on ``|L| mod 8`` and the cycle weight.
    """
    vs = list(c.vertices)
    if len(vs) < 4 or len(vs) % 2:
        raise DomainError("need an even cycle of length at least 4")
    if g is not None and not g.is_left(vs[0]):
        vs = vs[1:] + vs[:1]
    table = {
        (0, 0): 0, (2, 0): 3, (4, 0): 2, (6, 0): 1,
        (0, 1): 2, (2, 1): 1, (4, 1): 0, (6, 1): 3,
    }
    level = table[(len(vs) % 8, c.weight)]
    if level == 3 and len(vs) < 6:
        raise InternalError("third insertion needs a cycle of length at least 6")
    out = list(vs)
    # v_{2step+1} sits at index 2*step, shifted by 2 per earlier insertion
    for step in range(level):
        out = _insert_backtrack(out, 4 * step)
    walk = ClosedWalk(tuple(out), c.weight)
    if k_weight(walk, 4) != 0 or walk.length % 4 or is_2k_repeating_walk(walk, 2):
        raise InternalError("normalized walk failed its postcondition")
    return walk
