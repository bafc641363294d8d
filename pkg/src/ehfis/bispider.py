"""Transversals over bi-spider shaped instances.

Each leg of the spider is a red path ``j_1 -> ... -> j_s = root`` whose white
edges fan out from ``j_1`` (to ``j_2..j_t``) and from the root (to
``j_{t+1}..j_{s-1}`` and ``j_1``). Phase one finds, per leg, the vertices of
part ``j_1`` that extend through ``j_2..j_t``; phase two finds the root
vertices that extend through every leg's phase-one set and the root-side
parts. Every intermediate graph is an induced subgraph on white neighbours of
one part minus that vertex's neighbourhood, which is chordal in an
even-hole-free host, so each test is a greedy MIS.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitree import BiSpiderDecomp, Separation
from .chordal import chordal_mis_mask, peo_mask
from .graph import independent_mask, iter_bits, popcount
from .instance import InvariantViolation, SolveStats, TransversalInstance, WitnessTable, log


class NonChordalBranch(Exception):
    """An intermediate graph had a hole: the branch is infeasible."""


@dataclass(frozen=True)
class Leg:
    parts: tuple[int, ...]
    t: int

    @property
    def head(self) -> int:
        return self.parts[0]

    @property
    def head_targets(self) -> tuple[int, ...]:
        return self.parts[1:self.t]

    @property
    def root_side(self) -> tuple[int, ...]:
        return self.parts[self.t:-1]


LegPlan = tuple[Leg, ...]


def plan_legs(decomp: BiSpiderDecomp) -> LegPlan:
    plan = []
    for cert in decomp.legs:
        if cert.order[-1] != decomp.root or not 1 <= cert.t <= len(cert.order) - 1:
            raise ValueError(f"leg {cert} does not match the spider root {decomp.root}")
        plan.append(Leg(cert.order, cert.t))
    return tuple(plan)


def _chordal_mis(inst: TransversalInstance, mask: int, stats: SolveStats | None) -> int:
    if stats is not None:
        stats.gprime_checks += 1
    order = peo_mask(inst.g.adj, mask)
    if order is None:
        if stats is not None:
            stats.gprime_nonchordal += 1
        log.debug("non-chordal intermediate graph on %d vertices", popcount(mask))
        raise NonChordalBranch
    return chordal_mis_mask(inst.g.adj, mask)


def _check_witness(inst: TransversalInstance, witness: int, stats: SolveStats | None) -> None:
    if stats is not None:
        stats.witness_checks += 1
    if not independent_mask(inst.g.adj, witness):
        if stats is not None:
            stats.witness_failures += 1
        raise InvariantViolation("combined witness is not independent")


def extendable_set(
    inst: TransversalInstance,
    p: int,
    targets: tuple[int, ...],
    stats: SolveStats | None = None,
) -> tuple[int, dict[int, int]]:
    """Eligible vertices of part ``p`` that extend to an independent set
    meeting every target part once, with one witness per kept vertex."""
    adj = inst.g.adj
    pool = 0
    for j in targets:
        pool |= inst.eligible(j)
    keep = 0
    witnesses = {}
    for y in iter_bits(inst.eligible(p)):
        if not targets:
            keep |= 1 << y
            witnesses[y] = 1 << y
            continue
        mis = _chordal_mis(inst, pool & ~adj[y], stats)
        if popcount(mis) == len(targets):
            keep |= 1 << y
            witnesses[y] = mis | (1 << y)
    return keep, witnesses


def all_root_candidates(
    inst: TransversalInstance,
    decomp: BiSpiderDecomp,
    plan: LegPlan | None = None,
    table: WitnessTable | None = None,
    stats: SolveStats | None = None,
) -> tuple[int, dict[int, int]]:
    """Every eligible root vertex that lies in a transversal of the spider's
    parts, each with an expanded witness over those parts."""
    plan = plan_legs(decomp) if plan is None else plan
    adj = inst.g.adj
    heads = {}
    head_wit: dict[int, int] = {}
    for leg in plan:
        keep, wit = extendable_set(inst, leg.head, leg.head_targets, stats)
        if not keep:
            log.debug("leg headed by part %d has no extendable vertex", leg.head)
            return 0, {}
        heads[leg.head] = keep
        head_wit.update(wit)
    pool = 0
    need = 0
    for leg in plan:
        pool |= heads[leg.head]
        for j in leg.root_side:
            pool |= inst.eligible(j)
        need += 1 + len(leg.root_side)
    cands = 0
    witnesses = {}
    for y in iter_bits(inst.eligible(decomp.root)):
        mis = _chordal_mis(inst, pool & ~adj[y], stats)
        if popcount(mis) != need:
            continue
        witness = mis | (1 << y)
        for leg in plan:
            chosen = mis & heads[leg.head]
            witness |= head_wit[chosen.bit_length() - 1]
        if table is not None:
            witness = table.expand(witness)
        _check_witness(inst, witness, stats)
        cands |= 1 << y
        witnesses[y] = witness
    return cands, witnesses


def bispider_solve(
    inst: TransversalInstance,
    decomp: BiSpiderDecomp,
    plan: LegPlan | None = None,
    table: WitnessTable | None = None,
    stats: SolveStats | None = None,
) -> int | None:
    cands, witnesses = all_root_candidates(inst, decomp, plan, table, stats)
    if not cands:
        return None
    return witnesses[(cands & -cands).bit_length() - 1]


def apply_bicut(inst: TransversalInstance, sep: Separation) -> TransversalInstance:
    """Delete eligible vertices of the parts in ``X`` (the cut-off side, not
    the separating part) that have a neighbour in any part of ``Y``."""
    adj = inst.g.adj
    far = 0
    for j in sep.Y:
        far |= inst.parts[j]
    parts = list(inst.parts)
    for j in sep.X:
        doomed = 0
        for v in iter_bits(inst.eligible(j)):
            if adj[v] & far:
                doomed |= 1 << v
        parts[j] &= ~doomed
    return TransversalInstance(inst.g, tuple(parts), inst.externals, inst.anchors)
