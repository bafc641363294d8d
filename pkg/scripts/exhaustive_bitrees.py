"""Sweep every labelled bi-tree on m vertices and check the two structure
claims: an inseparable obstruction-free bi-tree is a bi-path, and an
obstruction-free bi-tree is a bi-spider or has a valid bi-spider cut.

    python scripts/exhaustive_bitrees.py --max-m 6
    python scripts/exhaustive_bitrees.py --min-m 6 --max-m 6 --shards 8 --shard 0
    python scripts/exhaustive_bitrees.py --sample 200000 --m 7 --seed 1
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from ehfis.bitree import (
    BiTree,
    InvalidBiTree,
    as_bipath,
    as_bispider,
    find_alternating_obstruction,
    find_bispider_separation,
    find_directed_obstruction,
    find_separation,
    satisfies_cut_properties,
)
from ehfis.oracle import enumerate_bitrees, labeled_trees, orient_towards


@dataclass
class Tally:
    total: int = 0
    obstructed: int = 0
    spiders: int = 0
    cuts: int = 0
    inseparable: int = 0
    path_failures: int = 0
    cut_failures: int = 0


def check(t: BiTree, tally: Tally) -> None:
    tally.total += 1
    if find_directed_obstruction(t) is not None or find_alternating_obstruction(t) is not None:
        tally.obstructed += 1
        return
    if find_separation(t) is None:
        tally.inseparable += 1
        if as_bipath(t) is None:
            tally.path_failures += 1
            print("no bi-path:", t, flush=True)
    if as_bispider(t) is not None:
        tally.spiders += 1
        return
    try:
        sep, _ = find_bispider_separation(t)
    except InvalidBiTree as exc:
        tally.cut_failures += 1
        print("no cut:", t, exc, flush=True)
        return
    tally.cuts += 1
    if not satisfies_cut_properties(t, sep):
        tally.cut_failures += 1
        print("bad cut:", t, sep, flush=True)


def random_tree(rng: random.Random, m: int) -> frozenset:
    if m == 2:
        return frozenset({frozenset((1, 2))})
    seq = [rng.randint(1, m) for _ in range(m - 2)]
    degree = [1] * (m + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, m + 1) if degree[v] == 1)
        edges.append(frozenset((leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, m + 1) if degree[w] == 1)
    edges.append(frozenset((u, v)))
    return frozenset(edges)


def sampled(m: int, count: int, seed: int):
    rng = random.Random(seed)
    vs = frozenset(range(1, m + 1))
    for _ in range(count):
        root = rng.randint(1, m)
        yield BiTree(vs, random_tree(rng, m), orient_towards(random_tree(rng, m), m, root), root)


def sharded(m: int, shards: int, shard: int):
    if shards == 1:
        yield from enumerate_bitrees(m)
        return
    vs = frozenset(range(1, m + 1))
    trees = list(labeled_trees(m))
    arbs = [(orient_towards(t, m, r), r) for t in trees for r in range(1, m + 1)]
    for white in trees[shard::shards]:
        for red, root in arbs:
            yield BiTree(vs, white, red, root)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-m", type=int, default=2)
    ap.add_argument("--max-m", type=int, default=5)
    ap.add_argument("--shards", type=int, default=1, help="split each sweep by white tree")
    ap.add_argument("--shard", type=int, default=0)
    ap.add_argument("--m", type=int, default=7, help="size for --sample")
    ap.add_argument("--sample", type=int, default=0, help="check this many random bi-trees instead")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--progress", type=int, default=500_000)
    args = ap.parse_args()
    if args.sample:
        sizes = [(args.m, sampled(args.m, args.sample, args.seed))]
    else:
        sizes = [(m, sharded(m, args.shards, args.shard)) for m in range(args.min_m, args.max_m + 1)]
    for m, stream in sizes:
        tally = Tally()
        start = time.perf_counter()
        for t in stream:
            check(t, tally)
            if tally.total % args.progress == 0:
                print(f"  m={m}: {tally.total} checked, {time.perf_counter() - start:.0f}s", flush=True)
        label = f"m={m}" + (f" shard {args.shard}/{args.shards}" if args.shards > 1 else "")
        print(f"{label} {tally} {time.perf_counter() - start:.1f}s", flush=True)


if __name__ == "__main__":
    main()
