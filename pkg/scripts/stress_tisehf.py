"""Compare tisehf_solve with brute force on planted, perturbed and randomly
partitioned instances, checking every cleaned branch the solver reaches.

    python scripts/stress_tisehf.py --count 300 --max-k 5
"""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

import ehfis.tisehf as tisehf
from ehfis.gen import add_cross_edges, gen_ehf, gen_planted, random_clique_partition
from ehfis.graph import from_mask
from ehfis.instance import SolveStats, validate_instance
from ehfis.oracle import brute_transversal


@dataclass
class Config:
    count: int = 300
    max_k: int = 5
    seed: int = 0
    check_branches: bool = True


def instances(cfg: Config):
    for i in range(cfg.count):
        s = cfg.seed + i
        rng = random.Random(s)
        kind = ("planted", "perturbed", "random")[i % 3]
        if kind == "random":
            g = gen_ehf(rng.randint(10, 22), rng.choice((0.3, 0.5, 0.7)), s)
            yield kind, g, random_clique_partition(g, rng.randint(2, cfg.max_k + 1), s)
            continue
        inst = gen_planted(rng.randint(2, cfg.max_k), rng.randint(3, 5), rng.choice((0.2, 0.5, 0.8)), s)
        g = inst.g if kind == "planted" else add_cross_edges(inst, rng.randint(1, 12), s)
        yield kind, g, inst.parts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--max-k", type=int, default=Config.max_k)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--no-branch-check", dest="check_branches", action="store_false")
    cfg = Config(**vars(ap.parse_args()))

    tally = Counter()
    original = tisehf.solve_bitree_instance

    def checked(branch, stats=None):
        got = original(branch, stats)
        tally["branches"] += 1
        if validate_instance(branch) is not None:
            tally["invalid branch"] += 1
        truth = brute_transversal(branch.g, [from_mask(branch.eligible(j)) for j in range(branch.size)])
        if (got is None) != (truth is None):
            tally["BRANCH MISMATCH"] += 1
        return got

    if cfg.check_branches:
        tisehf.solve_bitree_instance = checked
    stats = SolveStats()
    start = time.perf_counter()
    for kind, g, parts in instances(cfg):
        got = tisehf.tisehf_solve(g, parts, stats)
        truth = brute_transversal(g, parts)
        tally[kind, "feasible" if truth is not None else "infeasible"] += 1
        if (got is None) != (truth is None):
            tally["MISMATCH"] += 1
    for key, value in sorted(tally.items(), key=str):
        print(key, value)
    print(f"max rounds {max((r for _, r in stats.iteration_log), default=0)}, "
          f"non-chordal {stats.gprime_nonchordal}, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
