"""Immutable undirected graphs over vertices ``0..n-1``.

Adjacency is stored as one bitmask per vertex (bit ``u`` of ``adj[v]`` is set
iff ``uv`` is an edge). Sorted neighbor tuples are kept alongside for
iteration. Vertex sets cross the public API as ``frozenset[int]``; the solver
internals work on integer masks directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class VertexError(ValueError):
    """A vertex id outside ``0..n-1``."""


def bit(v: int) -> int:
    return 1 << v


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise VertexError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "neighbors", tuple(tuple(iter_bits(r)) for r in self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors[u]:
                if u < v:
                    yield u, v

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexError(f"vertex {v} out of range for n={self.n}")

    def mask_of(self, s: Iterable[int]) -> int:
        m = 0
        for v in s:
            self.check_vertex(v)
            m |= 1 << v
        return m

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in removed:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def with_edges(self, added: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in added:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``g[s]`` relabelled to ``0..|s|-1`` and the map back to ``g``.

    ``ids[i]`` is the vertex of ``g`` that became vertex ``i``; ids are kept in
    increasing order so relabelling is monotone.
    """
    ids = tuple(iter_bits(g.mask_of(s)))
    index = {v: i for i, v in enumerate(ids)}
    rows = []
    for v in ids:
        row = 0
        for u in g.neighbors[v]:
            j = index.get(u)
            if j is not None:
                row |= 1 << j
        rows.append(row)
    return Graph(len(ids), tuple(rows)), ids


def independent_mask(adj: tuple[int, ...], mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if adj[v] & mask:
            return False
        rest ^= low
    return True


def clique_mask(adj: tuple[int, ...], mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if (mask & ~low) & ~adj[v]:
            return False
        rest ^= low
    return True


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    return independent_mask(g.adj, g.mask_of(s))


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    return clique_mask(g.adj, g.mask_of(s))


def components_mask(adj: tuple[int, ...], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, as masks,
    ordered by smallest member."""
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = adj[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        rest &= ~comp
    return out


def induces_forest(g: Graph, s: Iterable[int]) -> bool:
    mask = g.mask_of(s)
    edges = sum(popcount(g.adj[v] & mask) for v in iter_bits(mask)) // 2
    return edges == popcount(mask) - len(components_mask(g.adj, mask))


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [from_mask(c) for c in components_mask(g.adj, g.full_mask)]
