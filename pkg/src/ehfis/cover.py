"""Independent set of size k in an even-hole-free graph via clique covers.

``cover_or_is`` either finds ``k`` pairwise non-adjacent vertices or covers
the graph by at most ``2^(k-1) - 1`` cliques (using only that the graph has
no induced 4-cycle). Any independent set of size ``k`` then meets ``k``
distinct cliques, so ``isehf_solve`` tries every ``k``-subset of the cover
as a transversal instance.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, clique_mask, from_mask, independent_mask, induced_subgraph, iter_bits, popcount
from .instance import InvariantViolation, SolveStats
from .tisehf import tisehf_solve


class NotC4FreeError(ValueError):
    """A common neighbourhood that should have been a clique was not."""


@dataclass(frozen=True)
class CoverOrIS:
    independent: frozenset[int] | None = None
    cliques: tuple[frozenset[int], ...] | None = None

    @property
    def is_cover(self) -> bool:
        return self.cliques is not None


def _nonadjacent_pair(adj: tuple[int, ...], mask: int) -> tuple[int, int] | None:
    for x in iter_bits(mask):
        rest = mask & ~adj[x] & ~((1 << (x + 1)) - 1)
        if rest:
            return x, (rest & -rest).bit_length() - 1
    return None


def _cover_or_is(adj: tuple[int, ...], mask: int, k: int) -> tuple[bool, object]:
    # returns (True, independent mask) or (False, list of clique masks)
    pair = _nonadjacent_pair(adj, mask)
    if pair is None:
        return False, [mask] if mask else []
    x, y = pair
    if k == 2:
        return True, (1 << x) | (1 << y)
    cover = []
    for v in (x, y):
        found, res = _cover_or_is(adj, mask & ~adj[v] & ~(1 << v), k - 1)
        if found:
            return True, res | (1 << v)
        cover.extend(res)
    common = mask & adj[x] & adj[y]
    if not clique_mask(adj, common):
        raise NotC4FreeError(f"common neighbours of {x} and {y} are not a clique: the graph has an induced C4")
    if common:
        cover.append(common)
    return False, cover


def cover_or_is(g: Graph, k: int, stats: SolveStats | None = None) -> CoverOrIS:
    if k < 2:
        raise ValueError("k must be at least 2")
    found, res = _cover_or_is(g.adj, g.full_mask, k)
    if found:
        if popcount(res) != k or not independent_mask(g.adj, res):
            raise InvariantViolation("cover_or_is produced a bad independent set")
        return CoverOrIS(independent=from_mask(res))
    covered = 0
    for c in res:
        if not clique_mask(g.adj, c):
            raise InvariantViolation("cover_or_is produced a non-clique")
        covered |= c
    if covered != g.full_mask:
        raise InvariantViolation("cover_or_is left a vertex uncovered")
    if len(res) > 2 ** (k - 1) - 1:
        raise InvariantViolation(f"{len(res)} cliques exceed the bound for k={k}")
    if stats is not None:
        stats.cover_calls.append((k, g.n, len(res)))
    return CoverOrIS(cliques=tuple(from_mask(c) for c in res))


def partition_from_cover(cover: Sequence[Iterable[int]], g: Graph) -> tuple[frozenset[int], ...]:
    """Assign each vertex to the first clique containing it; drop emptied cliques."""
    taken = 0
    parts = []
    for c in cover:
        m = g.mask_of(c) & ~taken
        taken |= m
        if m:
            parts.append(from_mask(m))
    if taken != g.full_mask:
        missing = min(iter_bits(g.full_mask & ~taken))
        raise ValueError(f"vertex {missing} is not covered")
    return tuple(parts)


def _try_subset(g: Graph, chosen: tuple[frozenset[int], ...], stats: SolveStats | None = None) -> frozenset[int] | None:
    sub, ids = induced_subgraph(g, frozenset().union(*chosen))
    index = {v: i for i, v in enumerate(ids)}
    local = tuple(frozenset(index[v] for v in p) for p in chosen)
    found = tisehf_solve(sub, local, stats)
    return None if found is None else frozenset(ids[v] for v in found)


def isehf_solve(g: Graph, k: int, stats: SolveStats | None = None, threads: int = 1) -> frozenset[int] | None:
    """An independent set of size ``k``, or None if none exists.

    ``g`` must be even-hole-free (not checked; an induced 4-cycle may surface
    as ``NotC4FreeError``). With ``threads > 1`` the clique subsets are tried
    in worker processes; the first success in subset order is returned either
    way, and stats are only collected in-process.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return frozenset()
    if k == 1:
        return frozenset({0}) if g.n else None
    res = cover_or_is(g, k, stats)
    if not res.is_cover:
        return _verified(g, res.independent, k)
    parts = partition_from_cover(res.cliques, g)
    if len(parts) < k:
        return None
    subsets = combinations(parts, k)
    if threads > 1:
        pool = ProcessPoolExecutor(max_workers=threads)
        try:
            for found in pool.map(partial(_try_subset, g), subsets, chunksize=16):
                if found is not None:
                    return _verified(g, found, k)
        finally:
            pool.shutdown(cancel_futures=True)
        return None
    for chosen in subsets:
        found = _try_subset(g, chosen, stats)
        if found is not None:
            return _verified(g, found, k)
    return None


def _verified(g: Graph, s: frozenset[int], k: int) -> frozenset[int]:
    if len(s) != k or not independent_mask(g.adj, g.mask_of(s)):
        raise InvariantViolation("isehf_solve produced an invalid witness")
    return s
