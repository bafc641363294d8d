"""Command-line front end.

File formats (vertex ids are 1-based on disk, 0-based in memory):

* graph: ``p <n> <m>`` header (``p edge <n> <m>`` is accepted too), then one
  ``e <u> <v>`` line per edge; lines starting with ``c`` are comments.
* partition: one part per line, space-separated vertex ids.
* witness: whitespace-separated vertex ids.

Every command prints one JSON report on stdout; logs go to stderr.
Exit codes: 0 found / verified, 1 no solution / verification failed,
2 parse or input error, 3 even hole found under ``--verify-ehf``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from .cover import NotC4FreeError, isehf_solve
from .gen import GenerationFailed, gen_chordal, gen_ehf, gen_planted
from .graph import Graph, is_clique
from .instance import SolveStats
from .oracle import brute_mis, brute_transversal, find_even_hole
from .tisehf import InvalidPartition, tisehf_solve

DEFAULT_SEED = 20240101

EXIT_FOUND, EXIT_NONE, EXIT_PARSE, EXIT_EVEN_HOLE = 0, 1, 2, 3

log = logging.getLogger("ehfis.cli")


class ParseError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, line in _content_lines(text):
        fields = line.split()
        if fields[0] == "p":
            nums = fields[2:] if len(fields) == 4 else fields[1:]
            if n is not None or len(nums) != 2:
                raise ParseError(f"line {lineno}: bad or repeated header {line!r}")
            try:
                n, m = int(nums[0]), int(nums[1])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: negative header values")
        elif fields[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer vertex") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at {u}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unknown record {fields[0]!r}")
    if n is None:
        raise ParseError("missing 'p <n> <m>' header")
    g = Graph.from_edges(n, edges)
    if g.num_edges() != m:
        log.warning("header announces %d edges, found %d distinct", m, g.num_edges())
    return g


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p {g.n} {g.num_edges()}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_ids(fields: Sequence[str], lineno: int, n: int) -> list[int]:
    out = []
    for f in fields:
        try:
            v = int(f)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex {f!r}") from None
        if not 1 <= v <= n:
            raise ParseError(f"line {lineno}: vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def parse_partition(text: str, n: int) -> list[frozenset[int]]:
    parts = []
    for lineno, line in _content_lines(text):
        ids = _parse_ids(line.split(), lineno, n)
        if len(set(ids)) != len(ids):
            raise ParseError(f"line {lineno}: repeated vertex in part")
        parts.append(frozenset(ids))
    return parts


def format_partition(parts: Sequence[frozenset[int]]) -> str:
    return "".join(" ".join(str(v + 1) for v in sorted(p)) + "\n" for p in parts)


def parse_witness(text: str, n: int) -> list[int]:
    out = []
    for lineno, line in _content_lines(text):
        out.extend(_parse_ids(line.split(), lineno, n))
    return out


def format_witness(s) -> str:
    return " ".join(str(v + 1) for v in sorted(s)) + "\n"


# -- verification (graph predicates only, no solver code) ---------------------


def verify_witness(g: Graph, witness: Sequence[int], k: int | None = None, parts=None) -> dict:
    report: dict = {"size": len(witness)}
    problems = []
    if len(set(witness)) != len(witness):
        problems.append("witness repeats a vertex")
    ws = sorted(set(witness))
    pair = next(((u, v) for i, u in enumerate(ws) for v in ws[i + 1:] if g.has_edge(u, v)), None)
    report["independent"] = pair is None
    if pair is not None:
        problems.append(f"vertices {pair[0] + 1} and {pair[1] + 1} are adjacent")
    if k is not None:
        report["size_ok"] = len(ws) == k
        if len(ws) != k:
            problems.append(f"witness has {len(ws)} vertices, expected {k}")
    if parts is not None:
        bad = None
        for i, p in enumerate(parts):
            hits = len(p.intersection(ws))
            if hits != 1:
                bad = (i, hits)
                break
        outside = [v for v in ws if not any(v in p for p in parts)]
        report["traversal"] = bad is None and not outside and len(ws) == len(parts)
        if bad is not None:
            problems.append(f"part {bad[0] + 1} is hit {bad[1]} times")
        elif outside:
            problems.append(f"vertex {outside[0] + 1} lies in no part")
    report["problems"] = problems
    report["ok"] = not problems
    return report


# -- commands --------------------------------------------------------------------


def _digest(*paths: Path) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(p.read_bytes())
    return h.hexdigest()


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _even_hole_report(g: Graph) -> dict | None:
    hole = find_even_hole(g)
    return None if hole is None else {"even_hole": [v + 1 for v in hole.cycle]}


def cmd_solve(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    path = Path(args.graph)
    report = {"command": "solve", "argv": args.argv, "seed": args.seed, "k": args.k}
    try:
        g = parse_graph(path.read_text())
    except (OSError, ParseError, ValueError) as exc:
        report.update(error=str(exc), answer="error")
        _emit(report)
        return EXIT_PARSE
    report["input_digest"] = _digest(path)
    if args.k < 0:
        report.update(error="k must be non-negative", answer="error")
        _emit(report)
        return EXIT_PARSE
    if args.verify_ehf:
        hole = _even_hole_report(g)
        if hole is not None:
            report.update(answer="precondition_violated", **hole)
            _emit(report)
            return EXIT_EVEN_HOLE
    stats = SolveStats()
    try:
        found = isehf_solve(g, args.k, stats if args.threads == 1 else None, threads=args.threads)
    except NotC4FreeError as exc:
        report.update(answer="precondition_violated", error=str(exc))
        _emit(report)
        return EXIT_EVEN_HOLE
    report["answer"] = "found" if found is not None else "none"
    report["witness"] = sorted(v + 1 for v in found) if found is not None else None
    verification = {"even_hole_free": True if args.verify_ehf else None}
    if found is not None:
        verification.update(verify_witness(g, sorted(found), k=args.k))
    if args.oracle:
        alpha = len(brute_mis(g))
        verification["oracle_alpha"] = alpha
        verification["oracle_agrees"] = (alpha >= args.k) == (found is not None)
        if not verification["oracle_agrees"]:
            log.error("solver disagrees with brute-force MIS (alpha=%d, k=%d)", alpha, args.k)
    report["verification"] = verification
    report["stats"] = {"branches_white": stats.white_branches, "branches_red": stats.red_branches, "calls": stats.calls}
    report["wall_time"] = round(time.perf_counter() - start, 6)
    _emit(report)
    return EXIT_FOUND if found is not None else EXIT_NONE


def cmd_tisehf(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    gpath, ppath = Path(args.graph), Path(args.partition)
    report = {"command": "tisehf", "argv": args.argv, "seed": args.seed}
    try:
        g = parse_graph(gpath.read_text())
        parts = parse_partition(ppath.read_text(), g.n)
        covered = [v for p in parts for v in p]
        if any(not p for p in parts):
            raise ParseError("empty part")
        if len(covered) != len(set(covered)):
            raise ParseError("parts are not disjoint")
        if set(covered) != set(range(g.n)):
            missing = min(set(range(g.n)) - set(covered))
            raise ParseError(f"vertex {missing + 1} is in no part")
        for i, p in enumerate(parts):
            if not is_clique(g, p):
                raise ParseError(f"part {i + 1} is not a clique")
    except (OSError, ParseError, ValueError) as exc:
        report.update(error=str(exc), answer="error")
        _emit(report)
        return EXIT_PARSE
    report["input_digest"] = _digest(gpath, ppath)
    report["parts"] = len(parts)
    if args.verify_ehf:
        hole = _even_hole_report(g)
        if hole is not None:
            report.update(answer="precondition_violated", **hole)
            _emit(report)
            return EXIT_EVEN_HOLE
    try:
        found = tisehf_solve(g, parts, SolveStats())
    except InvalidPartition as exc:
        report.update(error=str(exc), answer="error")
        _emit(report)
        return EXIT_PARSE
    report["answer"] = "found" if found is not None else "none"
    report["witness"] = sorted(v + 1 for v in found) if found is not None else None
    verification = {"even_hole_free": True if args.verify_ehf else None}
    if found is not None:
        verification.update(verify_witness(g, sorted(found), parts=parts))
    if args.oracle:
        truth = brute_transversal(g, parts)
        verification["oracle_feasible"] = truth is not None
        verification["oracle_agrees"] = (truth is not None) == (found is not None)
    report["verification"] = verification
    report["wall_time"] = round(time.perf_counter() - start, 6)
    _emit(report)
    return EXIT_FOUND if found is not None else EXIT_NONE


def cmd_gen(args: argparse.Namespace) -> int:
    report = {"command": "gen", "kind": args.kind, "argv": args.argv, "seed": args.seed}
    try:
        if args.kind == "chordal":
            g = gen_chordal(args.n, args.density, args.seed)
            written = _write_graph(args.out, g, f"chordal n={args.n} density={args.density} seed={args.seed}")
        elif args.kind == "ehf":
            g = gen_ehf(args.n, args.p, args.seed)
            written = _write_graph(args.out, g, f"ehf n={args.n} p={args.p} seed={args.seed}")
        else:
            inst = gen_planted(args.k, args.part_size, args.noise, args.seed)
            comment = f"planted k={args.k} part_size={args.part_size} noise={args.noise} seed={args.seed}"
            prefix = args.out
            files = {
                f"{prefix}.graph": format_graph(inst.g, comment),
                f"{prefix}.parts": format_partition(inst.parts),
                f"{prefix}.witness": format_witness(inst.planted),
            }
            for name, text in files.items():
                Path(name).write_text(text)
            written = list(files)
            g = inst.g
    except (ValueError, OSError, GenerationFailed) as exc:
        report["error"] = str(exc)
        _emit(report)
        return EXIT_PARSE
    report.update(n=g.n, m=g.num_edges(), files=written)
    print(f"seed {args.seed}", file=sys.stderr)
    _emit(report)
    return EXIT_FOUND


def _write_graph(out: str, g: Graph, comment: str) -> list[str]:
    Path(out).write_text(format_graph(g, comment))
    return [out]


def cmd_verify(args: argparse.Namespace) -> int:
    gpath, wpath = Path(args.graph), Path(args.witness)
    report = {"command": "verify", "argv": args.argv}
    try:
        g = parse_graph(gpath.read_text())
        witness = parse_witness(wpath.read_text(), g.n)
        parts = parse_partition(Path(args.parts).read_text(), g.n) if args.parts else None
    except (OSError, ParseError, ValueError) as exc:
        report["error"] = str(exc)
        _emit(report)
        return EXIT_PARSE
    paths = [gpath, wpath] + ([Path(args.parts)] if args.parts else [])
    report["input_digest"] = _digest(*paths)
    report["witness"] = sorted(v + 1 for v in witness)
    report["verification"] = verify_witness(g, witness, k=args.k, parts=parts)
    ok = report["verification"]["ok"]
    for problem in report["verification"]["problems"]:
        log.error("%s", problem)
    report["answer"] = "valid" if ok else "invalid"
    _emit(report)
    return EXIT_FOUND if ok else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ehfis", description="Independent sets in even-hole-free graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trace", action="store_true", help="log solver branches to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="find an independent set of size k")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--verify-ehf", action="store_true", help="reject inputs with an even hole first")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force MIS")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("tisehf", parents=[common], help="find an independent transversal of a clique partition")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("--verify-ehf", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_tisehf)

    p = sub.add_parser("gen", parents=[common], help="generate test inputs")
    p.add_argument("kind", choices=["chordal", "ehf", "planted"])
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--part-size", type=int, default=4)
    p.add_argument("--noise", type=float, default=0.3)
    p.add_argument("--out", required=True, help="output file, or prefix for planted")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a witness file")
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--parts")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_FOUND
    args.argv = argv
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.trace else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.trace:
        logging.getLogger("ehfis").setLevel(logging.DEBUG)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
