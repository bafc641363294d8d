import os

from hypothesis import HealthCheck, settings, strategies as st

from ehfis.graph import Graph

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_and_subset(draw, max_n=9):
    g = draw(graphs(max_n=max_n))
    s = draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    return g, frozenset(s)


def planted_branch(inst):
    """The cleaned instance on the branch whose guesses match the planted
    white tree and red arborescence."""
    from ehfis.graph import to_mask
    from ehfis.instance import TransversalInstance
    from ehfis.tisehf import clean_red, clean_white

    base = TransversalInstance(inst.g, tuple(to_mask(p) for p in inst.parts))
    white = clean_white(base, inst.white, inst.planted_w)
    if white is None:
        return None
    return clean_red(white, inst.red, inst.planted_x)


def eligible_sets(inst):
    from ehfis.graph import from_mask

    return [from_mask(inst.eligible(j)) for j in range(inst.size)]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(module.RESULTS):
        ok, detail = module.RESULTS[criterion]
        terminalreporter.write_line(f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
