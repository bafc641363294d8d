import pytest
from hypothesis import given

from ehfis.bitree import validate
from ehfis.gen import gen_chordal, gen_ehf
from ehfis.graph import Graph, induced_subgraph, induces_forest, is_independent
from ehfis.oracle import (
    brute_mis,
    brute_transversal,
    enumerate_bitrees,
    find_even_hole,
    induced_cycle_lengths,
    is_even_hole,
    iter_transversals,
    labeled_trees,
    naive_even_hole,
)

from conftest import graphs


def test_mis_examples():
    assert len(brute_mis(Graph.cycle(5))) == 2
    assert len(brute_mis(Graph.complete(7))) == 1
    assert len(brute_mis(Graph.path(6))) == 3
    assert brute_mis(Graph.empty(0)) == frozenset()


@given(graphs(max_n=10))
def test_mis_is_maximum(g):
    s = brute_mis(g)
    assert is_independent(g, s)
    best = max(
        (bin(m).count("1") for m in range(1 << g.n) if is_independent(g, [v for v in range(g.n) if m >> v & 1])),
        default=0,
    )
    assert len(s) == best


def test_even_hole_examples():
    c4 = find_even_hole(Graph.cycle(4))
    assert c4 is not None and sorted(c4.cycle) == [0, 1, 2, 3]
    assert find_even_hole(Graph.cycle(5)) is None
    c6 = find_even_hole(Graph.cycle(6))
    assert c6 is not None and len(c6.cycle) == 6
    assert is_even_hole(Graph.cycle(6), c6.cycle)


def test_even_hole_ignores_chorded_cycles():
    assert find_even_hole(Graph.cycle(6).with_edges([(0, 3)])) is not None
    assert find_even_hole(Graph.cycle(6).with_edges([(0, 2), (0, 3), (0, 4)])) is None


@given(graphs(max_n=10))
def test_even_hole_matches_naive_search(g):
    cert = find_even_hole(g)
    has_even = any(length % 2 == 0 for length in induced_cycle_lengths(g))
    assert (cert is not None) == has_even == (naive_even_hole(g) is not None)
    if cert is not None:
        assert is_even_hole(g, cert.cycle)


def test_transversal_examples():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert brute_transversal(g, [{0, 1}, {2, 3}]) == frozenset({0, 2})
    full = Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert brute_transversal(full, [{0, 1}, {2, 3}]) is None
    assert len(brute_transversal(Graph.complete(3), [{0, 1, 2}])) == 1
    assert brute_transversal(g, [{0}, set()]) is None


@given(graphs(max_n=9))
def test_transversals_are_exact(g):
    parts = [set(range(i, min(i + 3, g.n))) for i in range(0, g.n, 3)]
    for s in iter_transversals(g, parts):
        assert is_independent(g, s)
        assert all(len(s & p) == 1 for p in parts)


def test_bitree_counts():
    assert sum(1 for _ in enumerate_bitrees(2)) == 2
    assert sum(1 for _ in enumerate_bitrees(3)) == 27
    assert sum(1 for _ in labeled_trees(5)) == 125


def test_enumerated_bitrees_validate():
    seen = set()
    for t in enumerate_bitrees(4):
        assert validate(t) is None
        seen.add(t)
    assert len(seen) == 16 * 64


@pytest.mark.parametrize("seed", range(30))
def test_two_disjoint_independent_sets_induce_forest(seed):
    n = 8 + seed % 12
    g = gen_ehf(n, 0.35, seed) if seed % 2 else gen_chordal(n, 0.5, seed)
    first = brute_mis(g)
    rest, ids = induced_subgraph(g, set(range(n)) - first)
    second = {ids[v] for v in brute_mis(rest)}
    assert induces_forest(g, first | second)
