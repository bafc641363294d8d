"""Time isehf_solve against brute-force MIS on generated even-hole-free
graphs and print a per-k summary.

    python scripts/benchmark_isehf.py --graphs 300 --max-n 22
"""

from __future__ import annotations

import argparse
import time
from collections import defaultdict
from dataclasses import dataclass

from ehfis.cover import isehf_solve
from ehfis.gen import gen_chordal, gen_ehf
from ehfis.instance import SolveStats
from ehfis.oracle import brute_mis


@dataclass
class Config:
    graphs: int = 300
    min_n: int = 8
    max_n: int = 22
    max_k: int = 6
    seed: int = 0


def corpus(cfg: Config):
    span = cfg.max_n - cfg.min_n + 1
    for i in range(cfg.graphs):
        s = cfg.seed + i
        n = cfg.min_n + i % span
        yield (gen_ehf(n, (0.15, 0.3, 0.45, 0.6)[s % 4], s) if s % 2 else gen_chordal(n, (0.2, 0.5, 0.8)[s % 3], s))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    times = defaultdict(float)
    worst = defaultdict(float)
    answers = defaultdict(lambda: [0, 0])
    mismatches = 0
    stats = SolveStats()
    for g in corpus(cfg):
        alpha = len(brute_mis(g))
        for k in range(2, cfg.max_k + 1):
            start = time.perf_counter()
            found = isehf_solve(g, k, stats)
            dt = time.perf_counter() - start
            times[k] += dt
            worst[k] = max(worst[k], dt)
            answers[k][found is not None] += 1
            mismatches += (found is not None) != (alpha >= k)
    print(f"{'k':>3} {'yes':>5} {'no':>5} {'total s':>9} {'worst s':>9}")
    for k in sorted(times):
        print(f"{k:>3} {answers[k][1]:>5} {answers[k][0]:>5} {times[k]:>9.2f} {worst[k]:>9.3f}")
    print(f"mismatches {mismatches}, cover calls {len(stats.cover_calls)}, "
          f"white branches {stats.white_branches}, red branches {stats.red_branches}, bi-tree runs {stats.bitree_runs}")


if __name__ == "__main__":
    main()
