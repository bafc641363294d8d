"""Bi-trees: a white spanning tree and a red in-arborescence on one vertex set.

Vertices are arbitrary integer labels (the enumerators use ``1..m``, the
solver uses part indices). Paths are tuples of vertices from one end to the
other; red paths are always listed in arc direction.

Disjointness of obstruction paths is the strict form: a vertex lying on two of
the paths must be an endpoint of both of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable


class InvalidBiTree(ValueError):
    pass


def _pair(u: int, v: int) -> frozenset[int]:
    return frozenset((u, v))


@dataclass(frozen=True)
class BiTree:
    vertices: frozenset[int]
    white: frozenset[frozenset[int]]
    red: frozenset[tuple[int, int]]
    root: int

    @classmethod
    def build(
        cls,
        vertices: int | Iterable[int],
        white: Iterable[tuple[int, int]],
        red: Iterable[tuple[int, int]],
        root: int,
    ) -> BiTree:
        """``vertices`` is either a count ``m`` (labels ``1..m``) or the labels."""
        vs = frozenset(range(1, vertices + 1)) if isinstance(vertices, int) else frozenset(vertices)
        return cls(vs, frozenset(_pair(u, v) for u, v in white), frozenset(tuple(a) for a in red), root)

    @property
    def m(self) -> int:
        return len(self.vertices)

    @cached_property
    def parent(self) -> dict[int, int]:
        return {u: v for u, v in self.red}

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.red):
            out[v].append(u)
        return {v: tuple(c) for v, c in out.items()}

    @cached_property
    def white_adj(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.white:
            u, v = tuple(e)
            out[u].add(v)
            out[v].add(u)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def union_adj(self) -> dict[int, frozenset[int]]:
        out = {v: set(s) for v, s in self.white_adj.items()}
        for u, v in self.red:
            out[u].add(v)
            out[v].add(u)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def depth(self) -> dict[int, int]:
        """Number of red arcs from each vertex to the root."""
        out = {}
        for v in self.vertices:
            d, u = 0, v
            while u != self.root:
                u = self.parent[u]
                d += 1
            out[v] = d
        return out

    @cached_property
    def white_paths(self) -> dict[tuple[int, int], tuple[int, ...]]:
        paths = {}
        for s in self.vertices:
            prev = {s: s}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.white_adj[u]:
                    if w not in prev:
                        prev[w] = u
                        queue.append(w)
            for t in self.vertices:
                path = [t]
                while path[-1] != s:
                    path.append(prev[path[-1]])
                paths[(s, t)] = tuple(reversed(path))
        return paths

    def red_path(self, a: int, v: int) -> tuple[int, ...] | None:
        """Directed red path from ``a`` up to its ancestor ``v``, or None."""
        path = [a]
        while path[-1] != v:
            nxt = self.parent.get(path[-1])
            if nxt is None:
                return None
            path.append(nxt)
        return tuple(path)

    def red_between(self, a: int, b: int) -> tuple[int, ...] | None:
        """Red path joining ``a`` and ``b`` in either direction, ordered from
        ``a`` to ``b``."""
        p = self.red_path(a, b)
        if p is not None:
            return p
        p = self.red_path(b, a)
        return None if p is None else tuple(reversed(p))

    def red_indegree(self, v: int) -> int:
        return len(self.children[v])

    def white_degree(self, v: int) -> int:
        return len(self.white_adj[v])


def validate(t: BiTree) -> str | None:
    """Return a description of the first violated bi-tree invariant, or None."""
    vs = t.vertices
    if t.root not in vs:
        return f"root {t.root} is not a vertex"
    for e in t.white:
        if len(e) != 2 or not e <= vs:
            return f"white edge {sorted(e)} is not a pair of vertices"
    if len(t.white) != len(vs) - 1:
        return f"white edge count {len(t.white)} != {len(vs) - 1}: white is not a tree"
    if _count_components(vs, t.white_adj) != 1:
        return "white edges do not span the vertex set"
    out: dict[int, int] = {}
    for u, v in t.red:
        if u not in vs or v not in vs or u == v:
            return f"red arc {(u, v)} is not an arc between distinct vertices"
        if u in out:
            return f"vertex {u} has red out-degree > 1"
        out[u] = v
    if t.root in out:
        return f"root {t.root} has an outgoing red arc"
    for v in vs:
        if v != t.root and v not in out:
            return f"non-root vertex {v} has red out-degree 0"
    for v in vs:
        seen = {v}
        u = v
        while u != t.root:
            u = out[u]
            if u in seen:
                return f"red arcs contain a cycle through {u}"
            seen.add(u)
    return None


def check(t: BiTree) -> BiTree:
    problem = validate(t)
    if problem is not None:
        raise InvalidBiTree(problem)
    return t


def _count_components(vs: Iterable[int], adj: dict[int, frozenset[int]]) -> int:
    return len(_components(frozenset(vs), adj))


def _components(vs: frozenset[int], adj: dict[int, frozenset[int]]) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(vs):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in vs and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


# -- separations -------------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    v: int
    X: frozenset[int]
    Y: frozenset[int]


def split_at(t: BiTree, v: int) -> list[frozenset[int]]:
    """Components of the white+red union graph after removing ``v``."""
    return _components(t.vertices - {v}, t.union_adj)


def is_separation(t: BiTree, sep: Separation) -> bool:
    v, X, Y = sep.v, sep.X, sep.Y
    if not X or not Y or v in X or v in Y or X & Y or (X | Y | {v}) != t.vertices:
        return False
    for e in t.white:
        if e & X and e & Y:
            return False
    for a, b in t.red:
        if (a in X and b in Y) or (a in Y and b in X):
            return False
    return True


def separation_vertices(t: BiTree) -> list[int]:
    return [v for v in sorted(t.vertices) if len(split_at(t, v)) >= 2]


def separation_at(t: BiTree, v: int) -> Separation | None:
    """A separation at ``v``: the root's component goes to Y; when ``v`` is the
    root, the first component goes to X."""
    comps = split_at(t, v)
    if len(comps) < 2:
        return None
    if v == t.root:
        X = comps[0]
    else:
        X = frozenset().union(*(c for c in comps if t.root not in c))
    return Separation(v, X, t.vertices - X - {v})


def find_separation(t: BiTree) -> Separation | None:
    for v in sorted(t.vertices):
        sep = separation_at(t, v)
        if sep is not None:
            return sep
    return None


# -- obstructions ------------------------------------------------------------


@dataclass(frozen=True)
class DirectedObstruction:
    a: int
    b: int
    v: int
    pab: tuple[int, ...]
    pav: tuple[int, ...]
    pbv: tuple[int, ...]


@dataclass(frozen=True)
class AlternatingObstruction:
    a: int
    b: int
    c: int
    d: int
    pab: tuple[int, ...]
    pbc: tuple[int, ...]
    pcd: tuple[int, ...]
    pda: tuple[int, ...]


def strictly_disjoint(*paths: tuple[int, ...]) -> bool:
    """Any vertex shared by two paths is an endpoint of both."""
    for i in range(len(paths)):
        p = paths[i]
        pe = {p[0], p[-1]}
        ps = set(p)
        for q in paths[i + 1:]:
            common = ps.intersection(q)
            if common and not common <= (pe & {q[0], q[-1]}):
                return False
    return True


def is_directed_obstruction(t: BiTree, o: DirectedObstruction) -> bool:
    a, b, v = o.a, o.b, o.v
    if len({a, b, v}) != 3 or not {a, b, v} <= t.vertices:
        return False
    if not _is_white_path(t, o.pab, a, b) or len(o.pab) not in (2, 3):
        return False
    if not _is_red_path(t, o.pav, a, v) or not _is_red_path(t, o.pbv, b, v):
        return False
    return strictly_disjoint(o.pab, o.pav, o.pbv)


def is_alternating_obstruction(t: BiTree, o: AlternatingObstruction) -> bool:
    a, b, c, d = o.a, o.b, o.c, o.d
    if len({a, b, c, d}) != 4 or not {a, b, c, d} <= t.vertices:
        return False
    if not _is_white_path(t, o.pab, a, b) or not _is_white_path(t, o.pcd, c, d):
        return False
    if len(o.pab) != 2 and len(o.pcd) != 2:
        return False
    if not _is_red_either(t, o.pbc, b, c) or not _is_red_either(t, o.pda, d, a):
        return False
    return strictly_disjoint(o.pab, o.pbc, o.pcd, o.pda)


def _is_white_path(t: BiTree, p: tuple[int, ...], a: int, b: int) -> bool:
    if len(p) < 2 or p[0] != a or p[-1] != b or len(set(p)) != len(p):
        return False
    return all(_pair(x, y) in t.white for x, y in zip(p, p[1:]))


def _is_red_path(t: BiTree, p: tuple[int, ...], a: int, b: int) -> bool:
    if len(p) < 2 or p[0] != a or p[-1] != b or len(set(p)) != len(p):
        return False
    return all((x, y) in t.red for x, y in zip(p, p[1:]))


def _is_red_either(t: BiTree, p: tuple[int, ...], a: int, b: int) -> bool:
    """``p`` runs from ``a`` to ``b`` and is a directed red path one way or the other."""
    return _is_red_path(t, p, a, b) or _is_red_path(t, tuple(reversed(p)), b, a)


@lru_cache(maxsize=1 << 16)
def find_directed_obstruction(t: BiTree) -> DirectedObstruction | None:
    wp = t.white_paths
    for v in sorted(t.vertices):
        below = sorted(u for u in t.vertices if u != v and t.red_path(u, v) is not None)
        for i, a in enumerate(below):
            pav = t.red_path(a, v)
            for b in below[i + 1:]:
                pab = wp[(a, b)]
                if len(pab) > 3:
                    continue
                pbv = t.red_path(b, v)
                if strictly_disjoint(pab, pav, pbv):
                    return DirectedObstruction(a, b, v, pab, pav, pbv)
    return None


@lru_cache(maxsize=1 << 16)
def find_alternating_obstruction(t: BiTree) -> AlternatingObstruction | None:
    wp = t.white_paths
    related = []
    for x, y in permutations(sorted(t.vertices), 2):
        p = t.red_between(x, y)
        if p is not None:
            related.append((x, y, p))
    for b, c, pbc in related:
        for d, a, pda in related:
            if len({a, b, c, d}) < 4:
                continue
            pab = wp[(a, b)]
            pcd = wp[(c, d)]
            if len(pab) != 2 and len(pcd) != 2:
                continue
            if strictly_disjoint(pab, pbc, pcd, pda):
                return AlternatingObstruction(a, b, c, d, pab, pbc, pcd, pda)
    return None


def has_obstruction(t: BiTree) -> bool:
    return find_directed_obstruction(t) is not None or find_alternating_obstruction(t) is not None


# -- bi-paths and bi-spiders -------------------------------------------------


@dataclass(frozen=True)
class BiPathCert:
    order: tuple[int, ...]
    t: int


def white_pattern(order: tuple[int, ...], t: int) -> frozenset[frozenset[int]]:
    """The white edge set a bi-path with this order and split must have."""
    n = len(order)
    edges = {_pair(order[0], order[-1])}
    edges.update(_pair(order[0], order[i]) for i in range(1, t))
    edges.update(_pair(order[i], order[-1]) for i in range(t, n - 1))
    return frozenset(edges)


def is_bipath_cert(t: BiTree, cert: BiPathCert) -> bool:
    order = cert.order
    n = len(order)
    if n < 2 or frozenset(order) != t.vertices or len(set(order)) != n:
        return False
    if not 1 <= cert.t <= n - 1:
        return False
    if t.red != frozenset(zip(order, order[1:])):
        return False
    return t.white == white_pattern(order, cert.t)


@lru_cache(maxsize=1 << 16)
def as_bipath(t: BiTree) -> BiPathCert | None:
    if t.m < 2:
        return None
    if any(len(c) > 1 for c in t.children.values()):
        return None
    start = [v for v in t.vertices if not t.children[v]]
    if len(start) != 1:
        return None
    order = [start[0]]
    while order[-1] != t.root:
        order.append(t.parent[order[-1]])
    order_t = tuple(order)
    n = len(order_t)
    first, last = order_t[0], order_t[-1]
    if _pair(first, last) not in t.white:
        return None
    split = 1
    for i in range(n - 2, 0, -1):
        if _pair(first, order_t[i]) in t.white:
            split = i + 1
            break
    if t.white != white_pattern(order_t, split):
        return None
    return BiPathCert(order_t, split)


@dataclass(frozen=True)
class BiSpiderDecomp:
    root: int
    legs: tuple[BiPathCert, ...]


@lru_cache(maxsize=1 << 16)
def as_bispider(t: BiTree) -> BiSpiderDecomp | None:
    if t.m < 2:
        return None
    legs = []
    for comp in split_at(t, t.root):
        leg = restrict(t, comp | {t.root})
        cert = as_bipath(leg)
        if cert is None or cert.order[-1] != t.root:
            return None
        legs.append(cert)
    return BiSpiderDecomp(t.root, tuple(legs))


def restrict(t: BiTree, keep: Iterable[int]) -> BiTree:
    """The bi-tree induced on ``keep``; its root is the kept vertex whose red
    parent was dropped (or the original root when kept)."""
    ks = frozenset(keep)
    if not ks <= t.vertices or not ks:
        raise InvalidBiTree("kept vertices must be a nonempty subset of the bi-tree")
    white = frozenset(e for e in t.white if e <= ks)
    red = frozenset(a for a in t.red if a[0] in ks and a[1] in ks)
    if t.root in ks:
        root = t.root
    else:
        tops = [v for v in ks if t.parent[v] not in ks]
        if len(tops) != 1:
            raise InvalidBiTree("kept set is not closed under a separation")
        root = tops[0]
    out = BiTree(ks, white, red, root)
    problem = validate(out)
    if problem is not None:
        raise InvalidBiTree(f"restriction is not a bi-tree: {problem}")
    return out


def glue(t1: BiTree, v: int, t2: BiTree) -> BiTree:
    """Identify the root of ``t2`` with vertex ``v`` of ``t1``.

    Non-root vertices of ``t2`` are relabelled to fresh labels above
    ``max(t1.vertices)`` in increasing order of their old labels.
    """
    check(t1)
    check(t2)
    if v not in t1.vertices:
        raise InvalidBiTree(f"{v} is not a vertex of the host bi-tree")
    nxt = max(t1.vertices) + 1
    relabel = {t2.root: v}
    for u in sorted(t2.vertices - {t2.root}):
        relabel[u] = nxt
        nxt += 1
    white = t1.white | {frozenset(relabel[x] for x in e) for e in t2.white}
    red = t1.red | {(relabel[a], relabel[b]) for a, b in t2.red}
    return check(BiTree(t1.vertices | frozenset(relabel.values()), frozenset(white), frozenset(red), t1.root))


def is_red_leaf(t: BiTree, v: int) -> bool:
    return not t.children[v]


def is_white_leaf(t: BiTree, v: int) -> bool:
    return t.white_degree(v) == 1


def satisfies_cut_properties(t: BiTree, sep: Separation) -> bool:
    """Properties (a) and (b) of a bi-spider cut: ``t - Y`` is a bi-spider rooted
    at ``v`` and ``v`` is a red or white leaf of ``t - X``."""
    if not is_separation(t, sep) or t.root not in sep.Y:
        return False
    head = restrict(t, sep.X | {sep.v})
    if head.root != sep.v or as_bispider(head) is None:
        return False
    tail = restrict(t, sep.Y | {sep.v})
    return is_red_leaf(tail, sep.v) or is_white_leaf(tail, sep.v)


@lru_cache(maxsize=1 << 16)
def find_bispider_separation(t: BiTree) -> tuple[Separation, BiSpiderDecomp]:
    """Separation ``(v, X, Y)`` cutting off a maximal bi-spider ``t - Y``.

    ``v`` is a deepest separation vertex other than the root. X starts from a
    component isolating a bi-path and absorbs further components while the
    head stays a bi-spider.
    """
    if has_obstruction(t):
        raise InvalidBiTree("bi-tree has an obstruction")
    if as_bispider(t) is not None:
        raise InvalidBiTree("bi-tree is already a bi-spider")
    cands = [v for v in separation_vertices(t) if v != t.root]
    if not cands:
        raise InvalidBiTree("no separation vertex other than the root")
    v = max(cands, key=lambda u: (t.depth[u], -u))
    comps = [c for c in split_at(t, v) if t.root not in c]
    start = next((c for c in comps if as_bipath(restrict(t, c | {v})) is not None), None)
    if start is None:
        raise InvalidBiTree(f"no component at {v} isolates a bi-path")
    X = set(start)
    for c in comps:
        if c is start:
            continue
        if as_bispider(restrict(t, X | c | {v})) is not None:
            X |= c
    sep = Separation(v, frozenset(X), t.vertices - frozenset(X) - {v})
    if not satisfies_cut_properties(t, sep):
        raise InvalidBiTree(f"separation at {v} fails the bi-spider cut properties")
    decomp = as_bispider(restrict(t, sep.X | {v}))
    assert decomp is not None
    return sep, decomp
