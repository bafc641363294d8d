"""Exhaustive ground truth for desk-scale instances.

Nothing here shares code with the solver beyond the graph predicates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .bitree import BiTree
from .graph import Graph, from_mask, iter_bits, popcount


def brute_mis(g: Graph) -> frozenset[int]:
    """Maximum independent set by branch and bound.

    Branches on a highest-degree vertex (smallest id on ties); vertices of
    degree at most one in the remaining candidates are taken outright.
    """
    adj = g.adj
    best = _greedy(adj, g.full_mask)
    best_size = popcount(best)

    def go(cands: int, chosen: int, size: int) -> None:
        nonlocal best, best_size
        while True:
            forced = 0
            rest = cands
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if popcount(adj[v] & cands) <= 1 and not forced & adj[v]:
                    forced |= low
                rest ^= low
            if not forced:
                break
            # forced vertices are pairwise non-adjacent by the check above
            chosen |= forced
            size += popcount(forced)
            rest = forced
            while rest:
                low = rest & -rest
                cands &= ~(adj[low.bit_length() - 1] | low)
                rest ^= low
        if not cands:
            if size > best_size:
                best, best_size = chosen, size
            return
        if size + popcount(cands) <= best_size:
            return
        v, top = -1, -1
        for u in iter_bits(cands):
            d = popcount(adj[u] & cands)
            if d > top:
                v, top = u, d
        go(cands & ~adj[v] & ~(1 << v), chosen | (1 << v), size + 1)
        go(cands & ~(1 << v), chosen, size)

    go(g.full_mask, 0, 0)
    return from_mask(best)


def _greedy(adj: tuple[int, ...], mask: int) -> int:
    taken = 0
    cands = mask
    while cands:
        v = min(iter_bits(cands), key=lambda u: (popcount(adj[u] & cands), u))
        taken |= 1 << v
        cands &= ~adj[v] & ~(1 << v)
    return taken


@dataclass(frozen=True)
class EvenHoleCertificate:
    cycle: tuple[int, ...]


def is_even_hole(g: Graph, cycle: Sequence[int]) -> bool:
    n = len(cycle)
    if n < 4 or n % 2 or len(set(cycle)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            consecutive = j == i + 1 or (i == 0 and j == n - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def find_even_hole(g: Graph) -> EvenHoleCertificate | None:
    """Depth-first search over chordless paths whose smallest vertex is the
    start; a path closing back onto its start with even length >= 4 is an
    even hole."""
    adj = g.adj
    for s in range(g.n):
        above = g.full_mask & ~((1 << (s + 1)) - 1)
        for p1 in iter_bits(adj[s] & above):
            found = _extend(adj, [s, p1], 0, above)
            if found is not None:
                cert = EvenHoleCertificate(tuple(found))
                assert is_even_hole(g, cert.cycle)
                return cert
    return None


def _extend(adj: tuple[int, ...], path: list[int], interior: int, above: int) -> list[int] | None:
    # interior: closed neighbourhoods of path[1:-1]; candidates must avoid it
    s, last = path[0], path[-1]
    for v in iter_bits(adj[last] & above & ~interior):
        if adj[v] >> s & 1:
            if len(path) >= 3 and len(path) % 2 == 1:
                return path + [v]
            continue
        found = _extend(adj, path + [v], interior | adj[last] | (1 << last), above)
        if found is not None:
            return found
    return None


def naive_even_hole(g: Graph) -> tuple[int, ...] | None:
    """Enumerate vertex subsets and cyclic orders directly; tiny graphs only."""
    for size in range(4, g.n + 1, 2):
        for sub in itertools.combinations(range(g.n), size):
            if any(sum(g.has_edge(u, v) for v in sub) != 2 for u in sub):
                continue
            cyc = _as_cycle(g, sub)
            if cyc is not None:
                return cyc
    return None


def _as_cycle(g: Graph, sub: tuple[int, ...]) -> tuple[int, ...] | None:
    # every vertex has exactly two neighbours inside sub; check connectivity
    order = [sub[0]]
    prev = None
    cur = sub[0]
    members = set(sub)
    while True:
        nxt = [u for u in g.neighbors[cur] if u in members and u != prev]
        if prev is None:
            nxt = nxt[:1]
        step = nxt[0]
        if step == sub[0]:
            break
        order.append(step)
        prev, cur = cur, step
    return tuple(order) if len(order) == len(sub) else None


def induced_cycle_lengths(g: Graph) -> set[int]:
    """Lengths of all chordless cycles of length >= 4, by subset enumeration."""
    out = set()
    for size in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            if any(sum(g.has_edge(u, v) for v in sub) != 2 for u in sub):
                continue
            if _as_cycle(g, sub) is not None:
                out.add(size)
    return out


def iter_transversals(g: Graph, parts: Sequence[Sequence[int]] | Sequence[frozenset[int]]) -> Iterator[frozenset[int]]:
    """Every independent set meeting each part exactly once, in lexicographic
    order of the per-part choices (parts scanned by increasing vertex id)."""
    adj = g.adj
    lists = [sorted(p) for p in parts]

    def go(i: int, chosen: int, forbidden: int) -> Iterator[int]:
        if i == len(lists):
            yield chosen
            return
        for v in lists[i]:
            if not forbidden >> v & 1:
                yield from go(i + 1, chosen | (1 << v), forbidden | adj[v])

    for m in go(0, 0, 0):
        yield from_mask(m)


def brute_transversal(g: Graph, parts: Sequence[Sequence[int]] | Sequence[frozenset[int]]) -> frozenset[int] | None:
    if any(len(p) == 0 for p in parts):
        return None
    return next(iter_transversals(g, parts), None)


# -- bi-tree enumeration -------------------------------------------------------


def labeled_trees(m: int) -> Iterator[frozenset[frozenset[int]]]:
    """All m^(m-2) labelled trees on 1..m, decoded from Pruefer sequences."""
    if m == 1:
        yield frozenset()
        return
    if m == 2:
        yield frozenset({frozenset((1, 2))})
        return
    for seq in itertools.product(range(1, m + 1), repeat=m - 2):
        degree = [1] * (m + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(v for v in range(1, m + 1) if degree[v] == 1)
            edges.append(frozenset((leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = (w for w in range(1, m + 1) if degree[w] == 1)
        edges.append(frozenset((u, v)))
        yield frozenset(edges)


def orient_towards(tree: frozenset[frozenset[int]], m: int, root: int) -> frozenset[tuple[int, int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, m + 1)}
    for e in tree:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    arcs = []
    stack = [root]
    seen = {root}
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                arcs.append((w, u))
                stack.append(w)
    return frozenset(arcs)


def enumerate_bitrees(m: int) -> Iterator[BiTree]:
    """Every labelled bi-tree on 1..m: white trees x trees x roots."""
    if not 1 <= m <= 6:
        raise ValueError("exhaustive enumeration supports 1 <= m <= 6")
    vs = frozenset(range(1, m + 1))
    trees = list(labeled_trees(m))
    arbs = [(orient_towards(t, m, r), r) for t in trees for r in range(1, m + 1)]
    for white in trees:
        for red, root in arbs:
            yield BiTree(vs, white, red, root)
