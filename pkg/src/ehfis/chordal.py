"""Chordality via maximum cardinality search, and exact MIS on chordal graphs.

The mask-level helpers (``peo_mask``, ``chordal_mis_mask``) operate on an
adjacency tuple restricted to a vertex mask, so the solver can test and solve
vertex subsets without materialising induced subgraphs.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, from_mask, iter_bits


class NotChordalError(ValueError):
    """Raised by chordal-only routines on a graph with a hole."""


def mcs_order(adj: tuple[int, ...], mask: int) -> list[int]:
    """Maximum cardinality search over ``mask``, reversed.

    MCS visits vertices by decreasing count of already-visited neighbors
    (smallest id first on ties); the reversed visit order is a perfect
    elimination ordering whenever the subgraph is chordal.
    """
    weight = {v: 0 for v in iter_bits(mask)}
    visited = []
    while weight:
        best = max(weight.values())
        v = min(u for u, w in weight.items() if w == best)
        del weight[v]
        visited.append(v)
        for u in iter_bits(adj[v] & mask):
            if u in weight:
                weight[u] += 1
    visited.reverse()
    return visited


def is_peo_mask(adj: tuple[int, ...], order: Sequence[int]) -> bool:
    later = 0
    for v in order:
        later |= 1 << v
    for v in order:
        later &= ~(1 << v)
        nb = adj[v] & later
        rest = nb
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if (nb & ~low) & ~adj[u]:
                return False
            rest ^= low
    return True


def peo_mask(adj: tuple[int, ...], mask: int) -> list[int] | None:
    order = mcs_order(adj, mask)
    return order if is_peo_mask(adj, order) else None


def chordal_mis_mask(adj: tuple[int, ...], mask: int) -> int:
    order = peo_mask(adj, mask)
    if order is None:
        raise NotChordalError("vertex subset does not induce a chordal graph")
    taken = 0
    for v in order:
        if not adj[v] & taken:
            taken |= 1 << v
    return taken


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    return is_peo_mask(g.adj, order)


def perfect_elimination_ordering(g: Graph) -> list[int] | None:
    return peo_mask(g.adj, g.full_mask)


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_ordering(g) is not None


def chordal_mis(g: Graph) -> frozenset[int]:
    """Maximum independent set of a chordal graph.

    Greedy along a perfect elimination ordering: each vertex is taken unless a
    neighbor was taken before it.
    """
    return from_mask(chordal_mis_mask(g.adj, g.full_mask))
