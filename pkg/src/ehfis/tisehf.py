"""Transversal independent sets in even-hole-free graphs.

Given ``K = k + 1`` clique parts, the solver

1. finds a transversal ``W`` of the first ``k`` parts (recursively) and tries
   every ``w_i`` as a member of the answer;
2. guesses how ``W`` attaches to the answer (a white tree on the parts),
   cleans the parts accordingly and turns ``W`` into external vertices;
3. finds a second transversal ``X`` of the cleaned first ``k`` parts, tries
   every ``x_i`` as a member, then guesses a red in-arborescence and cleans
   again, keeping the ``x_i`` as ineligible anchors;
4. solves the remaining bi-tree instance by peeling bi-spiders off the
   white/red bi-tree until the root's spider is left.

Part indices are 0-based, so the root is part ``k`` (the last one).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .bispider import NonChordalBranch, all_root_candidates, apply_bicut, bispider_solve, plan_legs
from .bitree import as_bispider, find_alternating_obstruction, find_bispider_separation, find_directed_obstruction, restrict
from .graph import Graph, clique_mask, from_mask, independent_mask, iter_bits, popcount
from .instance import (
    Anchor,
    External,
    InvariantViolation,
    SolveStats,
    TransversalInstance,
    WitnessTable,
    log,
)


class InvalidPartition(ValueError):
    pass


def _is_tree(k: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        count += 1
    return count == k


@lru_cache(maxsize=None)
def _white_structures(k: int) -> tuple[tuple[int, ...], ...]:
    choices = [[j for j in range(k + 1) if j != i] for i in range(k)]
    return tuple(b for b in product(*choices) if _is_tree(k, enumerate(b)))


@lru_cache(maxsize=None)
def _red_structures(k: int) -> tuple[tuple[int, ...], ...]:
    def reaches_root(r: tuple[int, ...]) -> bool:
        for i in range(k):
            seen = set()
            u = i
            while u != k:
                if u in seen:
                    return False
                seen.add(u)
                u = r[u]
        return True

    choices = [[j for j in range(k + 1) if j != i] for i in range(k)]
    return tuple(r for r in product(*choices) if reaches_root(r))


def enumerate_white_structures(k: int) -> Iterator[tuple[int, ...]]:
    """Maps ``b`` on ``0..k-1`` into ``0..k`` with ``b[i] != i`` whose edges
    ``{i, b[i]}`` form a spanning tree on ``0..k``; there are ``(k+1)^(k-1)``."""
    return iter(_white_structures(k))


def enumerate_red_structures(k: int) -> Iterator[tuple[int, ...]]:
    """Maps ``r`` whose arcs ``i -> r[i]`` form an in-arborescence rooted at ``k``."""
    return iter(_red_structures(k))


def _check_parts(g: Graph, parts: Sequence[Iterable[int]]) -> tuple[int, ...]:
    masks = []
    seen = 0
    for i, p in enumerate(parts):
        m = g.mask_of(p)
        if m & seen:
            raise InvalidPartition(f"part {i} overlaps an earlier part")
        if not clique_mask(g.adj, m):
            raise InvalidPartition(f"part {i} is not a clique")
        seen |= m
        masks.append(m)
    return tuple(masks)


def is_transversal(g: Graph, parts: Sequence[int], s: int) -> bool:
    return independent_mask(g.adj, s) and all(popcount(s & p) == 1 for p in parts) and popcount(s) == len(parts)


def tisehf_solve(
    g: Graph,
    parts: Sequence[Iterable[int]],
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """An independent set meeting every clique part exactly once, or None.

    ``g`` is assumed even-hole-free; this is not checked. Parts must be
    disjoint cliques but need not cover ``g``.
    """
    masks = _check_parts(g, parts)
    result = _solve(g, masks, stats)
    if result is None:
        return None
    if not is_transversal(g, masks, result):
        raise InvariantViolation("solver returned a set that is not a transversal")
    return from_mask(result)


def _solve(g: Graph, parts: tuple[int, ...], stats: SolveStats | None) -> int | None:
    if stats is not None:
        stats.calls += 1
    if any(p == 0 for p in parts):
        return None
    K = len(parts)
    if K == 0:
        return 0
    if K == 1:
        return parts[0] & -parts[0]
    result = _solve_staged(g, parts, stats)
    if result is not None and not is_transversal(g, parts, result):
        raise InvariantViolation(f"non-transversal result on {K} parts")
    return result


def solve_assuming_member(g: Graph, parts: tuple[int, ...], p: int, v: int, stats: SolveStats | None = None) -> int | None:
    """Transversal containing ``v`` (a vertex of part ``p``), or None."""
    if not parts[p] >> v & 1:
        raise ValueError(f"vertex {v} is not in part {p}")
    rest = tuple(q & ~g.adj[v] for j, q in enumerate(parts) if j != p)
    sub = _solve(g, rest, stats)
    return None if sub is None else sub | (1 << v)


def compute_disjoint_solution(g: Graph, parts: tuple[int, ...], stats: SolveStats | None = None) -> int | None:
    """Transversal of every part except the last."""
    return _solve(g, parts[:-1], stats)


def _members(parts: Sequence[int], s: int) -> list[int]:
    return [(s & p).bit_length() - 1 for p in parts]


def _solve_staged(g: Graph, parts: tuple[int, ...], stats: SolveStats | None) -> int | None:
    k = len(parts) - 1
    W = compute_disjoint_solution(g, parts, stats)
    if W is None:
        return None
    ws = _members(parts[:k], W)
    for i, w in enumerate(ws):
        sol = solve_assuming_member(g, parts, i, w, stats)
        if sol is not None:
            return sol
    base = TransversalInstance(g, parts)
    for b in _white_structures(k):
        if stats is not None:
            stats.white_branches += 1
        inst = clean_white(base, b, ws)
        if inst is None:
            if stats is not None:
                stats.white_pruned += 1
            continue
        X = compute_disjoint_solution(g, inst.parts, stats)
        if X is None:
            continue
        xs = _members(inst.parts[:k], X)
        for i, x in enumerate(xs):
            sol = solve_assuming_member(g, inst.parts, i, x, stats)
            if sol is not None:
                return sol
        for r in _red_structures(k):
            if stats is not None:
                stats.red_branches += 1
            inst2 = clean_red(inst, r, xs)
            if inst2 is None:
                if stats is not None:
                    stats.red_pruned += 1
                continue
            sol = solve_bitree_instance(inst2, stats)
            if sol is not None:
                return sol
    return None


def clean_white(inst: TransversalInstance, b: Sequence[int], ws: Sequence[int]) -> TransversalInstance | None:
    """Restrict the parts to the attachment pattern ``b`` of ``W = ws``.

    Part ``b[i]`` keeps only neighbours of ``w_i``; every other part except
    ``i`` loses the neighbours of ``w_i``. The ``w_i`` leave their parts and
    become externals ``(w_i, i, b[i])``. Parts are then permuted so the last
    index is a leaf of the white tree. Returns None if a part empties.
    """
    adj = inst.g.adj
    k = len(ws)
    parts = list(inst.parts)
    for i, w in enumerate(ws):
        nb = adj[w]
        for j in range(k + 1):
            if j == i:
                continue
            if j == b[i]:
                parts[j] &= nb
            else:
                parts[j] &= ~nb
    for i, w in enumerate(ws):
        parts[i] &= ~(1 << w)
    if any(p == 0 for p in parts):
        return None
    degree = [0] * (k + 1)
    for i in range(k):
        degree[i] += 1
        degree[b[i]] += 1
    order = list(range(k + 1))
    if degree[k] != 1:
        leaf = degree.index(1)
        order[leaf], order[k] = k, leaf
    pos = {old: new for new, old in enumerate(order)}
    externals = tuple(External(w, pos[i], pos[b[i]]) for i, w in enumerate(ws))
    return TransversalInstance(inst.g, tuple(parts[old] for old in order), externals)


def clean_red(inst: TransversalInstance, r: Sequence[int], xs: Sequence[int]) -> TransversalInstance | None:
    """Restrict the parts to the red pattern ``r`` of ``X = xs``.

    Part ``r[i]`` keeps only neighbours of ``x_i`` plus its own anchor; every
    other part except ``i`` loses the neighbours of ``x_i``. Returns None if a
    part is left without an eligible vertex.
    """
    adj = inst.g.adj
    k = len(xs)
    own = [1 << x for x in xs] + [0]
    parts = list(inst.parts)
    for i, x in enumerate(xs):
        nb = adj[x]
        for j in range(k + 1):
            if j == i:
                continue
            if j == r[i]:
                parts[j] &= nb | own[j]
            else:
                parts[j] &= ~nb
    if any(p & ~own[j] == 0 for j, p in enumerate(parts)):
        return None
    anchors = tuple(Anchor(x, r[i]) for i, x in enumerate(xs)) + (None,)
    return TransversalInstance(inst.g, tuple(parts), inst.externals, anchors)


def solve_bitree_instance(inst: TransversalInstance, stats: SolveStats | None = None) -> int | None:
    """Peel bi-spiders off the instance's bi-tree until the root's is left.

    Each round cuts a separation ``(i, B, C)`` whose head ``B + i`` is a
    bi-spider, removes from the ``B`` parts every vertex with a neighbour on
    the ``C`` side, shrinks part ``i`` to the vertices that extend through
    the head, and drops the ``B`` parts.
    """
    if stats is not None:
        stats.bitree_runs += 1
    k = inst.size - 1
    tree = inst.bitree()
    table = WitnessTable(inst.g)
    rounds = 0
    try:
        while True:
            if find_directed_obstruction(tree) is not None or find_alternating_obstruction(tree) is not None:
                if stats is not None:
                    stats.obstruction_prunes += 1
                return None
            decomp = as_bispider(tree)
            if decomp is not None:
                return bispider_solve(inst, decomp, plan_legs(decomp), table, stats)
            sep, head = find_bispider_separation(tree)
            rounds += 1
            if rounds > k:
                raise InvariantViolation(f"bi-tree loop exceeded {k} rounds")
            inst = apply_bicut(inst, sep)
            if any(inst.eligible(j) == 0 for j in sep.X):
                return None
            cands, witnesses = all_root_candidates(inst, head, plan_legs(head), table, stats)
            log.debug("round %d: cut at part %d, head %s, %d candidates", rounds, sep.v, sorted(sep.X), popcount(cands))
            if not cands:
                return None
            covered = {j: inst.parts[j] for j in sep.X | {sep.v}}
            for y, wit in witnesses.items():
                cov = dict(covered)
                for u in iter_bits(wit):
                    if u in table:
                        for j in table.covered_parts(u):
                            cov[j] = inst.parts[j]
                table.record(sep.v, y, wit, cov)
            parts = list(inst.parts)
            parts[sep.v] = cands | inst.anchor_mask(sep.v)
            inst = TransversalInstance(inst.g, tuple(parts), inst.externals, inst.anchors)
            tree = restrict(tree, sep.Y | {sep.v})
    except NonChordalBranch:
        return None
    finally:
        if stats is not None:
            stats.iteration_log.append((k, rounds))
            stats.max_iterations_excess = max(stats.max_iterations_excess, rounds - k)
