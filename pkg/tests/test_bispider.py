from functools import lru_cache

import pytest

from ehfis.bispider import Leg, all_root_candidates, apply_bicut, bispider_solve, extendable_set, plan_legs
from ehfis.bitree import BiPathCert, BiSpiderDecomp, Separation, as_bispider, find_bispider_separation
from ehfis.gen import gen_planted
from ehfis.graph import Graph, from_mask, is_independent, iter_bits, popcount, to_mask
from ehfis.instance import InvariantViolation, SolveStats, TransversalInstance, WitnessTable
from ehfis.oracle import brute_transversal, iter_transversals

from conftest import eligible_sets, planted_branch


def two_part_instance(edges, n=4):
    g = Graph.from_edges(n, [(0, 1), (2, 3)] + edges)
    return TransversalInstance(g, (to_mask({0, 1}), to_mask({2, 3})))


EDGE = BiSpiderDecomp(1, (BiPathCert((0, 1), 1),))


@lru_cache(maxsize=None)
def planted_cases(kind, count, k_range=(2, 3, 4), part_size=4):
    out = []
    for seed in range(400):
        inst = gen_planted(k_range[seed % len(k_range)], part_size, 0.5, seed)
        cleaned = planted_branch(inst)
        spider = as_bispider(cleaned.bitree()) is not None
        if spider == (kind == "spider"):
            out.append((inst, cleaned))
        if len(out) == count:
            return out
    raise AssertionError(f"not enough {kind} cases")


def test_leg_plan():
    plan = plan_legs(BiSpiderDecomp(4, (BiPathCert((1, 2, 3, 4), 2), BiPathCert((5, 4), 1))))
    assert plan[0] == Leg((1, 2, 3, 4), 2)
    assert plan[0].head == 1 and plan[0].head_targets == (2,) and plan[0].root_side == (3,)
    assert plan[1].head_targets == () and plan[1].root_side == ()
    with pytest.raises(ValueError):
        plan_legs(BiSpiderDecomp(3, (BiPathCert((1, 2), 1),)))


def test_extendable_without_targets_keeps_everything():
    inst = two_part_instance([])
    keep, wit = extendable_set(inst, 0, ())
    assert keep == to_mask({0, 1})
    assert wit == {0: 1, 1: 2}


def test_extendable_drops_vertex_complete_to_target():
    inst = two_part_instance([(0, 2), (0, 3), (1, 2)])
    keep, wit = extendable_set(inst, 0, (1,))
    assert keep == to_mask({1})
    assert wit[1] == to_mask({1, 3})


def test_single_leg_root_candidates():
    inst = two_part_instance([(2, 0), (2, 1), (3, 1)])
    cands, wit = all_root_candidates(inst, EDGE)
    assert cands == to_mask({3})
    assert wit[3] == to_mask({0, 3})


def test_root_complete_to_other_part_gives_none():
    inst = two_part_instance([(u, v) for u in (0, 1) for v in (2, 3)])
    assert bispider_solve(inst, EDGE) is None


def test_empty_head_gives_no_candidates():
    g = Graph.from_edges(3, [(0, 1)])
    inst = TransversalInstance(g, (to_mask({0, 1}), to_mask({2})), (), (None, None))
    emptied = TransversalInstance(g, (0, to_mask({2})))
    assert all_root_candidates(emptied, EDGE) == (0, {})
    assert bispider_solve(inst, EDGE) is not None


def test_apply_bicut_examples():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5), (0, 4), (0, 5)])
    inst = TransversalInstance(g, (to_mask({0, 1}), to_mask({2, 3}), to_mask({4, 5})))
    assert apply_bicut(inst, Separation(1, frozenset({0}), frozenset({2}))).parts[0] == to_mask({1})
    clean = TransversalInstance(g, (to_mask({0, 1}), to_mask({2, 3}), to_mask({4, 5})))
    assert apply_bicut(clean, Separation(2, frozenset({1}), frozenset({0}))).parts == clean.parts


def test_witness_table_rejects_bad_witness():
    g = Graph.from_edges(3, [(0, 1)])
    table = WitnessTable(g)
    with pytest.raises(InvariantViolation):
        table.record(0, 0, to_mask({0, 1}), {0: to_mask({0}), 1: to_mask({1})})
    table.record(0, 0, to_mask({0, 2}), {0: to_mask({0}), 1: to_mask({2})})
    assert 0 in table
    assert table.expand(to_mask({0})) == to_mask({0, 2})


@pytest.mark.parametrize("case", range(25))
def test_root_candidates_match_oracle(case):
    inst, cleaned = planted_cases("spider", 25)[case]
    decomp = as_bispider(cleaned.bitree())
    stats = SolveStats()
    cands, witnesses = all_root_candidates(cleaned, decomp, stats=stats)
    elig = eligible_sets(cleaned)
    root = cleaned.root
    expected = {v for v in elig[root] if brute_transversal(inst.g, elig[:root] + [{v}] + elig[root + 1:]) is not None}
    assert from_mask(cands) == expected
    assert (to_mask(inst.planted) & cleaned.eligible(root)) & cands
    for y, w in witnesses.items():
        assert popcount(w) == cleaned.size
        assert is_independent(inst.g, from_mask(w))
        assert all(popcount(w & cleaned.eligible(j)) == 1 for j in range(cleaned.size))
    assert stats.gprime_nonchordal == 0 and stats.witness_failures == 0


@pytest.mark.parametrize("case", range(10))
def test_planted_head_vertex_is_extendable(case):
    inst, cleaned = planted_cases("spider", 10)[case]
    for leg in plan_legs(as_bispider(cleaned.bitree())):
        keep, _ = extendable_set(cleaned, leg.head, leg.head_targets)
        assert to_mask(inst.planted) & cleaned.eligible(leg.head) & keep


@pytest.mark.parametrize("case", range(15))
def test_bicut_keeps_every_transversal(case):
    inst, cleaned = planted_cases("deep", 15, k_range=(3, 4), part_size=4)[case]
    sep, _ = find_bispider_separation(cleaned.bitree())
    cut = apply_bicut(cleaned, sep)
    live = set()
    for s in iter_transversals(inst.g, eligible_sets(cleaned)):
        live |= s
    for j in range(cleaned.size):
        assert live & from_mask(cleaned.eligible(j)) <= from_mask(cut.eligible(j))
    for j in sep.X:
        assert to_mask(inst.planted) & cut.eligible(j)
