"""Seeded generators for patterns, caterpillars, forests and closed walks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bipartite import WeightedBipartiteGraph, build_graph, is_caterpillar_forest, is_forest
from .errors import DomainError, InternalError
from .signpat import DEFAULT_MAGNITUDE_RANGE, SignPattern
from .walks import ClosedWalk, make_walk


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    min_size: int = 1
    max_size: int = 6
    zero_density: float = 0.5
    negative_probability: float = 0.5
    magnitude_range: tuple[Fraction, Fraction] = DEFAULT_MAGNITUDE_RANGE
    closure_probability: float = 0.0

    def __post_init__(self):
        if not 1 <= self.min_size <= self.max_size:
            raise DomainError("size bounds must satisfy 1 <= min_size <= max_size")
        for name in ("zero_density", "negative_probability", "closure_probability"):
            if not 0 <= getattr(self, name) <= 1:
                raise DomainError(f"{name} must lie in [0, 1]")
        lo, hi = self.magnitude_range
        if not 0 < lo <= hi:
            raise DomainError("magnitude range must satisfy 0 < lo <= hi")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _rng(source) -> random.Random:
    if isinstance(source, random.Random):
        return source
    if isinstance(source, GeneratorConfig):
        return source.rng()
    return random.Random(source)


def _sign(rng: random.Random, config: GeneratorConfig) -> int:
    return -1 if rng.random() < config.negative_probability else 1


def _pattern_from_edges(
    rows: int, cols: int, edges, rng: random.Random, config: GeneratorConfig, shuffle: bool = True
) -> SignPattern:
    """Pattern with the given (row, col) edges and random signs; rows and columns optionally permuted."""
    rp = list(range(rows))
    cp = list(range(cols))
    if shuffle:
        rng.shuffle(rp)
        rng.shuffle(cp)
    entries = [0] * (rows * cols)
    for i, j in edges:
        entries[rp[i] * cols + cp[j]] = _sign(rng, config)
    return SignPattern(rows, cols, tuple(entries))


def random_pattern(config: GeneratorConfig, rng: random.Random | None = None) -> SignPattern:
    rng = rng or config.rng()
    n = rng.randint(config.min_size, config.max_size)
    m = rng.randint(config.min_size, config.max_size)
    entries = tuple(0 if rng.random() < config.zero_density else _sign(rng, config) for _ in range(n * m))
    return SignPattern(n, m, entries)


def random_caterpillar(
    config: GeneratorConfig,
    rng: random.Random | None = None,
    legs: int | None = None,
) -> tuple[WeightedBipartiteGraph, SignPattern]:
    """A caterpillar tree: a spine path alternating rows and columns, plus leaves hung on the spine.

    Both sides stay within ``config.max_size``.  ``legs=0`` yields a bare path.
    """
    rng = rng or config.rng()
    cap = config.max_size
    spine_len = rng.randint(1, 2 * cap)
    # spine vertex s is a row when s is even; counts are (rows, cols)
    start_row = rng.random() < 0.5
    spine = []
    counts = [0, 0]
    for s in range(spine_len):
        side = 0 if (s % 2 == 0) == start_row else 1
        if counts[side] >= cap:
            break
        spine.append((side, counts[side]))
        counts[side] += 1
    edges = []
    for a, b in zip(spine, spine[1:]):
        edges.append((a[1], b[1]) if a[0] == 0 else (b[1], a[1]))
    budget = legs if legs is not None else rng.randint(0, 2 * cap)
    for _ in range(budget):
        side, idx = rng.choice(spine)
        other = 1 - side
        if counts[other] >= cap:
            continue
        leaf = counts[other]
        counts[other] += 1
        edges.append((idx, leaf) if side == 0 else (leaf, idx))
    rows, cols = max(counts[0], 1), max(counts[1], 1)
    p = _pattern_from_edges(rows, cols, edges, rng, config)
    g = build_graph(p)
    if not is_caterpillar_forest(g):
        raise InternalError("caterpillar generator produced a non-caterpillar")
    return g, p


def random_forest(
    config: GeneratorConfig, rng: random.Random | None = None
) -> tuple[WeightedBipartiteGraph, SignPattern]:
    """Each vertex, in random order, joins a random earlier vertex of the other side with probability ``1 - zero_density``."""
    rng = rng or config.rng()
    n = rng.randint(config.min_size, config.max_size)
    m = rng.randint(config.min_size, config.max_size)
    order = [(0, i) for i in range(n)] + [(1, j) for j in range(m)]
    rng.shuffle(order)
    seen: list[tuple[int, int]] = []
    edges = []
    for side, idx in order:
        others = [v for v in seen if v[0] != side]
        if others and rng.random() >= config.zero_density:
            _, o = rng.choice(others)
            edges.append((idx, o) if side == 0 else (o, idx))
        seen.append((side, idx))
    p = _pattern_from_edges(n, m, edges, rng, config, shuffle=False)
    g = build_graph(p)
    if not is_forest(g):
        raise InternalError("forest generator produced a cycle")
    return g, p


def random_closed_walk(g: WeightedBipartiteGraph, length: int, seed=None) -> ClosedWalk:
    """Closed walk of the given length, uniform among those from a random non-isolated start.

    Steps are drawn in proportion to the number of ways to return home in the
    remaining steps.
    """
    if length < 2 or length % 2:
        raise DomainError(f"closed walks on a bipartite graph have even length >= 2, got {length}")
    rng = _rng(seed)
    adj = g.adjacency
    starts = [v for v in range(g.n_vertices) if adj[v]]
    if not starts:
        raise DomainError("graph has no edges")
    s = rng.choice(starts)
    # ways[t][v]: walks of length t from v back to s
    ways = [[int(v == s) for v in range(g.n_vertices)]]
    for _ in range(length):
        prev = ways[-1]
        ways.append([sum(prev[u] for u in adj[v]) for v in range(g.n_vertices)])
    path = [s]
    u = s
    for remaining in range(length - 1, 0, -1):
        weights = [ways[remaining][v] for v in adj[u]]
        u = rng.choices(adj[u], weights=weights)[0]
        path.append(u)
    return make_walk(g, path)
