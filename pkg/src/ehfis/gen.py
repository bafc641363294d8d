"""Seeded generators for even-hole-free graphs and planted transversal instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, clique_mask, independent_mask, iter_bits, to_mask
from .oracle import find_even_hole
from .tisehf import enumerate_red_structures, enumerate_white_structures


def gen_chordal(n: int, density: float, seed: int) -> Graph:
    """Random chordal graph built along a perfect elimination ordering.

    Vertex ``v`` attaches to a random earlier vertex ``u`` and then to each
    further neighbour of ``u`` with probability ``density``, as long as the
    attachment set stays a clique. ``density=0`` gives a random tree and
    ``density=1`` the complete graph.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    rows = [0] * n
    for v in range(1, n):
        u = rng.randrange(v)
        clique = 1 << u
        others = list(iter_bits(rows[u]))
        rng.shuffle(others)
        for w in others:
            if rng.random() < density and clique & ~rows[w] == 0:
                clique |= 1 << w
        for w in iter_bits(clique):
            rows[w] |= 1 << v
        rows[v] = clique
    return Graph(n, tuple(rows))


def gen_ehf(n: int, p: float, seed: int) -> Graph:
    """G(n, p) repaired into an even-hole-free graph by deleting a random
    edge of each even hole found until none is left."""
    if not 0 <= n <= 30:
        raise ValueError("even-hole repair is exhaustive; keep 0 <= n <= 30")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    g = Graph.from_edges(n, edges)
    while True:
        hole = find_even_hole(g)
        if hole is None:
            return g
        c = hole.cycle
        i = rng.randrange(len(c))
        g = g.without_edges([(c[i], c[(i + 1) % len(c)])])


@dataclass(frozen=True)
class PlantedInstance:
    """A clique-partitioned even-hole-free graph with a hidden transversal.

    ``white[i]`` / ``red[i]`` give, for each non-root part ``i``, the other
    part that ``planted_w[i]`` / ``planted_x[i]`` attaches to in the answer.
    """

    g: Graph
    parts: tuple[frozenset[int], ...]
    planted: frozenset[int]
    planted_w: tuple[int, ...]
    planted_x: tuple[int, ...]
    white: tuple[int, ...]
    red: tuple[int, ...]
    seed: int


class GenerationFailed(RuntimeError):
    pass


def gen_planted(k: int, part_size: int, noise: float, seed: int, attempts: int = 5000) -> PlantedInstance:
    """Planted instance on ``k + 1`` clique parts.

    Each non-root part ``i`` holds the answer vertex ``y_i``, a first-solution
    vertex ``w_i`` and a second-solution vertex ``x_i``; the root part holds
    its ``y``. ``w_i`` is joined to part ``b[i]`` (minus ``w_{b[i]}``) and
    ``x_i`` to part ``r[i]`` (minus ``x_{r[i]}``) for a random white tree
    ``b`` with the root as a leaf and a random red arborescence ``r``. Noise
    edges join white-adjacent parts away from the answer. Even holes are
    repaired by deleting non-structural edges. When the structural edges
    alone already contain an even hole the attempt is discarded and the next
    derived seed is tried.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must lie in 1..6")
    if not 3 <= part_size <= 8:
        raise ValueError("part_size must lie in 3..8")
    if not 0.0 <= noise <= 1.0:
        raise ValueError("noise must lie in [0, 1]")
    whites = [b for b in enumerate_white_structures(k) if b.count(k) == 1]
    reds = list(enumerate_red_structures(k))
    for attempt in range(attempts):
        rng = random.Random(f"{seed}:{attempt}")
        out = _try_planted(k, part_size, noise, rng, rng.choice(whites), rng.choice(reds))
        if out is not None:
            return PlantedInstance(*out, seed=seed)
    raise GenerationFailed(f"no even-hole-free planted instance after {attempts} attempts")


def _try_planted(k, part_size, noise, rng, b, r):
    n = (k + 1) * part_size
    ids = list(range(n))
    rng.shuffle(ids)
    it = iter(ids)
    parts = [[next(it) for _ in range(part_size)] for _ in range(k + 1)]
    y = [p[0] for p in parts]
    w = [parts[i][1] for i in range(k)]
    x = [parts[i][2] for i in range(k)]
    critical = set()
    optional = set()

    def key(u, v):
        return (u, v) if u < v else (v, u)

    for p in parts:
        for a in range(len(p)):
            for c in range(a + 1, len(p)):
                critical.add(key(p[a], p[c]))
    for i in range(k):
        critical.add(key(w[i], y[b[i]]))
        for v in parts[b[i]]:
            if v != y[b[i]] and not (b[i] < k and v == w[b[i]]):
                # the partner's own x must stay adjacent for X to survive cleaning
                (critical if b[i] < k and v == x[b[i]] else optional).add(key(w[i], v))
        critical.add(key(x[i], y[r[i]]))
        for v in parts[r[i]]:
            if v != y[r[i]] and not (r[i] < k and v == x[r[i]]) and v not in w:
                optional.add(key(x[i], v))
    ys, ws_, xs_ = set(y), set(w), set(x)
    white_pairs = {frozenset((i, b[i])) for i in range(k)}
    for pair in sorted(tuple(sorted(q)) for q in white_pairs):
        pa, pb = parts[pair[0]], parts[pair[1]]
        for u in pa:
            for v in pb:
                if u in ys or v in ys:
                    continue
                if (u in ws_ or u in xs_) and (v in ws_ or v in xs_):
                    continue
                e = key(u, v)
                if e in critical or e in optional:
                    continue
                if rng.random() < noise:
                    optional.add(e)
    if find_even_hole(Graph.from_edges(n, critical)) is not None:
        return None
    # every hole now uses a non-structural edge, so repair always terminates
    g = Graph.from_edges(n, critical | optional)
    while True:
        hole = find_even_hole(g)
        if hole is None:
            break
        c = hole.cycle
        ring = [key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
        g = g.without_edges([rng.choice([e for e in ring if e not in critical])])
    planted = to_mask(y)
    assert independent_mask(g.adj, planted)
    assert all(clique_mask(g.adj, to_mask(p)) for p in parts)
    return g, tuple(frozenset(p) for p in parts), frozenset(y), tuple(w), tuple(x), tuple(b), tuple(r)


def add_cross_edges(inst: PlantedInstance, count: int, seed: int) -> Graph:
    """``inst.g`` plus up to ``count`` random edges between different parts,
    with even holes repaired by deleting added (or else cross-part) edges.

    The result is still even-hole-free and partitioned by ``inst.parts``, but
    the planted answer may no longer be independent, so infeasible
    instances appear too.
    """
    rng = random.Random(seed)
    g = inst.g
    part_of = {v: i for i, p in enumerate(inst.parts) for v in p}
    extra = set()
    for _ in range(count):
        u, v = rng.sample(range(g.n), 2)
        if part_of[u] != part_of[v] and not g.has_edge(u, v):
            extra.add((min(u, v), max(u, v)))
    g = g.with_edges(extra)
    while True:
        hole = find_even_hole(g)
        if hole is None:
            return g
        c = hole.cycle
        ring = [(min(a, b), max(a, b)) for a, b in zip(c, c[1:] + c[:1])]
        cand = [e for e in ring if e in extra] or [e for e in ring if part_of[e[0]] != part_of[e[1]]]
        e = rng.choice(cand)
        extra.discard(e)
        g = g.without_edges([e])


def random_clique_partition(g: Graph, count: int, seed: int, join: float = 0.85) -> list[frozenset[int]]:
    """Greedy random clique partition of ``g``; the ``count`` largest parts.

    Vertices are visited in random order and join a random compatible part
    with probability ``join``, otherwise they open a new part.
    """
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    parts: list[list[int]] = []
    for v in order:
        opts = [p for p in parts if all(g.has_edge(v, u) for u in p)]
        if opts and rng.random() < join:
            rng.choice(opts).append(v)
        else:
            parts.append([v])
    parts.sort(key=len, reverse=True)
    return [frozenset(p) for p in parts[:count]]
