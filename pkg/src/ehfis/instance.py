"""State threaded through the transversal solver.

Parts are indexed ``0..K-1`` and the last index is the root of both trees.
Vertex sets are integer masks over the host graph's ids.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .bitree import BiTree
from .graph import Graph, independent_mask, iter_bits, popcount

log = logging.getLogger("ehfis.trace")


class InvariantViolation(AssertionError):
    """A solver-internal guarantee failed; indicates a bad input or a bug."""


@dataclass(frozen=True)
class External:
    """A first-solution vertex complete to parts ``a`` and ``b``."""

    w: int
    a: int
    b: int


@dataclass(frozen=True)
class Anchor:
    """A second-solution vertex of its part, complete to part ``r`` minus
    that part's own anchor."""

    x: int
    r: int


@dataclass(frozen=True)
class TransversalInstance:
    g: Graph
    parts: tuple[int, ...]
    externals: tuple[External, ...] = ()
    anchors: tuple[Anchor | None, ...] = ()

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def root(self) -> int:
        return len(self.parts) - 1

    def anchor_mask(self, i: int) -> int:
        if i < len(self.anchors) and self.anchors[i] is not None:
            return 1 << self.anchors[i].x
        return 0

    def eligible(self, i: int) -> int:
        """Vertices of part ``i`` that may serve as its solution vertex."""
        return self.parts[i] & ~self.anchor_mask(i)

    def bitree(self) -> BiTree:
        white = frozenset(frozenset((e.a, e.b)) for e in self.externals)
        red = frozenset((i, a.r) for i, a in enumerate(self.anchors) if a is not None)
        return BiTree(frozenset(range(self.size)), white, red, self.root)


def validate_instance(inst: TransversalInstance) -> str | None:
    """Check the hypotheses that hold once both cleaning stages have run."""
    adj = inst.g.adj
    seen = 0
    for i, p in enumerate(inst.parts):
        if not p:
            return f"part {i} is empty"
        if p & seen:
            return f"part {i} overlaps an earlier part"
        seen |= p
        for v in iter_bits(p):
            if (p & ~(1 << v)) & ~adj[v]:
                return f"part {i} is not a clique"
    for e in inst.externals:
        for j, p in enumerate(inst.parts):
            nb = adj[e.w] & p
            if j in (e.a, e.b):
                if nb != p:
                    return f"external {e.w} is not complete to part {j}"
            elif nb:
                return f"external {e.w} has a neighbor in part {j}"
    if inst.anchors:
        xs = [a.x for a in inst.anchors if a is not None]
        xmask = sum(1 << x for x in xs)
        if not independent_mask(adj, xmask):
            return "anchors are not independent"
        for i, a in enumerate(inst.anchors):
            if a is None:
                continue
            if not inst.parts[i] >> a.x & 1:
                return f"anchor {a.x} is not in part {i}"
            for j, p in enumerate(inst.parts):
                if j == i:
                    continue
                nb = adj[a.x] & p
                if j == a.r:
                    if nb != inst.eligible(j):
                        return f"anchor {a.x} is not complete to part {j} minus its anchor"
                elif nb:
                    return f"anchor {a.x} has a neighbor in part {j}"
    return None


class WitnessTable:
    """Partial transversals recorded for reduced parts, keyed by vertex.

    Witnesses are stored fully expanded: a witness contains the witnesses of
    every reduced-part vertex it uses.
    """

    def __init__(self, g: Graph) -> None:
        self.g = g
        self._table: dict[int, tuple[int, int, tuple[int, ...]]] = {}

    def __contains__(self, v: int) -> bool:
        return v in self._table

    def __len__(self) -> int:
        return len(self._table)

    def record(self, part: int, v: int, witness: int, covered: dict[int, int]) -> None:
        """Store ``witness`` for ``v``; ``covered`` maps each recorded part
        index to that part's vertex mask at recording time."""
        if not witness >> v & 1 or not covered.get(part, 0) >> v & 1:
            raise InvariantViolation(f"witness for {v} does not contain it in part {part}")
        if not independent_mask(self.g.adj, witness):
            raise InvariantViolation(f"witness for {v} is not independent")
        for j, p in covered.items():
            if popcount(witness & p) != 1:
                raise InvariantViolation(f"witness for {v} misses or repeats part {j}")
        self._table[v] = (part, witness, tuple(sorted(covered)))

    def expand(self, mask: int) -> int:
        out = mask
        for v in iter_bits(mask):
            entry = self._table.get(v)
            if entry is not None:
                out |= entry[1]
        return out

    def covered_parts(self, v: int) -> tuple[int, ...]:
        return self._table[v][2]


@dataclass
class SolveStats:
    """Counters collected by the solver when a stats object is passed in."""

    calls: int = 0
    white_branches: int = 0
    white_pruned: int = 0
    red_branches: int = 0
    red_pruned: int = 0
    obstruction_prunes: int = 0
    bitree_runs: int = 0
    max_iterations_excess: int = 0
    iteration_log: list[tuple[int, int]] = field(default_factory=list)
    gprime_checks: int = 0
    gprime_nonchordal: int = 0
    witness_checks: int = 0
    witness_failures: int = 0
    cover_calls: list[tuple[int, int, int]] = field(default_factory=list)

    def merge(self, other: SolveStats) -> None:
        for name, value in vars(other).items():
            mine = getattr(self, name)
            if isinstance(value, list):
                mine.extend(value)
            elif name == "max_iterations_excess":
                setattr(self, name, max(mine, value))
            else:
                setattr(self, name, mine + value)
