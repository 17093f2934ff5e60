"""Seeded random instance families. Every generator takes an explicit seed
and builds its class by construction."""

from __future__ import annotations

import itertools
import random

from .formula import Formula
from .graph import Graph, Instance


def _rng(seed: int) -> random.Random:
    if seed is None:
        raise ValueError("a seed is required")
    return random.Random(seed)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    _need(n >= 0 and 0.0 <= p <= 1.0, "need n >= 0 and 0 <= p <= 1")
    rng = _rng(seed)
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_max_degree(n: int, delta: int, seed: int, density: float = 0.9) -> Graph:
    """Random graph with maximum degree <= delta, filled by random edge attempts."""
    _need(n >= 0 and delta >= 0, "need n >= 0 and delta >= 0")
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < delta and deg[v] < delta and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_subcubic(n: int, seed: int) -> Graph:
    return random_max_degree(n, 3, seed)


def random_planted_vc(n: int, vc: int, seed: int, p: float = 0.5) -> Graph:
    """Edges all touch a hidden set of ``vc`` vertices."""
    _need(0 <= vc <= n, "need 0 <= vc <= n")
    rng = _rng(seed)
    cover = set(rng.sample(range(n), vc))
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if (u in cover or v in cover) and rng.random() < p
    ]
    return Graph(n, edges)


def random_cograph(n: int, seed: int) -> Graph:
    """Random cotree: leaves are vertices, internal nodes union or join."""
    _need(n >= 1, "need n >= 1")
    rng = _rng(seed)
    edges: list[tuple[int, int]] = []

    def build(vs: list[int]) -> None:
        if len(vs) == 1:
            return
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        build(left)
        build(right)
        if rng.random() < 0.5:
            edges.extend((min(a, b), max(a, b)) for a in left for b in right)

    vs = list(range(n))
    rng.shuffle(vs)
    build(vs)
    return Graph(n, edges)


def random_chordal(n: int, seed: int, max_clique: int = 4) -> Graph:
    """Each new vertex joins a random sub-clique of an existing clique, so
    the insertion order reversed is a perfect elimination ordering."""
    _need(n >= 1 and max_clique >= 1, "need n >= 1 and max_clique >= 1")
    rng = _rng(seed)
    cliques = [(0,)]
    edges = []
    for v in range(1, n):
        base = rng.choice(cliques)
        size = rng.randint(1, min(len(base), max_clique - 1)) if max_clique > 1 else 0
        nb = tuple(sorted(rng.sample(base, size)))
        edges.extend((u, v) for u in nb)
        cliques.append(nb + (v,))
    return Graph(n, edges)


def random_small_domination(n: int, k: int, seed: int, p: float = 0.15) -> Graph:
    """Graph dominated by ``k`` hidden vertices, plus sparse extra edges."""
    _need(1 <= k <= n, "need 1 <= k <= n")
    rng = _rng(seed)
    dom = rng.sample(range(n), k)
    edges = set()
    for v in range(n):
        if v not in dom:
            d = rng.choice(dom)
            edges.add((min(v, d), max(v, d)))
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


def random_nd_graph(types: int, seed: int, max_size: int = 4, p: float = 0.4) -> Graph:
    """Blow up a random graph on ``types`` vertices into twin classes."""
    _need(types >= 1 and max_size >= 1, "need types >= 1 and max_size >= 1")
    rng = _rng(seed)
    sizes = [rng.randint(1, max_size) for _ in range(types)]
    clique = [rng.random() < 0.5 for _ in range(types)]
    owner = [t for t, s in enumerate(sizes) for _ in range(s)]
    quotient = {(a, b) for a, b in itertools.combinations(range(types), 2) if rng.random() < p}
    edges = [
        (u, v) for u, v in itertools.combinations(range(len(owner)), 2)
        if (owner[u] == owner[v] and clique[owner[u]]) or (min(owner[u], owner[v]), max(owner[u], owner[v])) in quotient
    ]
    return Graph(len(owner), edges)


def random_forbidden(g: Graph, p: float, seed: int) -> Instance:
    rng = _rng(seed)
    return Instance(g, frozenset(e for e in g.edges() if rng.random() < p))


def _block(kind: str, rng: random.Random) -> tuple[int, list[tuple[int, int]]]:
    if kind == "edge":
        return 2, [(0, 1)]
    if kind == "even-cycle":
        k = rng.choice((4, 6))
        return k, [(i, (i + 1) % k) for i in range(k)]
    if kind == "k23":
        return 5, [(a, b) for a in (0, 1) for b in (2, 3, 4)]
    if kind == "triangle":
        return 3, [(0, 1), (1, 2), (0, 2)]
    if kind == "k4":
        return 4, list(itertools.combinations(range(4), 2))
    pages = rng.randint(2, 4)
    return 2 + pages, [(0, 1)] + [(s, 2 + i) for i in range(pages) for s in (0, 1)]


BLOCK_KINDS = ("edge", "even-cycle", "k23", "triangle", "k4", "book")


def random_block_composed(n: int, seed: int, forbid_p: float = 0.2) -> Instance:
    """Blocks from {bipartite, triangle, K4, book} glued at cut vertices,
    with each edge forbidden independently with probability ``forbid_p``.
    Blocks are added while they fit; the result has at most n vertices."""
    _need(n >= 1, "need n >= 1")
    rng = _rng(seed)
    total = 1
    edges: list[tuple[int, int]] = []
    while True:
        fitting = []
        for kind in BLOCK_KINDS:
            size, _ = _block(kind, random.Random(0))
            if total + size - 1 <= n:
                fitting.append(kind)
        if not fitting:
            break
        size, local = _block(rng.choice(fitting), rng)
        if total + size - 1 > n:
            continue
        anchor = rng.randrange(total)
        ids = [anchor] + list(range(total, total + size - 1))
        # the shared vertex plays a random role in the new block
        rng.shuffle(ids)
        total += size - 1
        edges.extend((min(ids[a], ids[b]), max(ids[a], ids[b])) for a, b in local)
        if rng.random() < 0.15:
            break
    g = Graph(total, edges)
    return Instance(g, frozenset(e for e in g.edges() if rng.random() < forbid_p))


def random_formula(num_vars: int, num_clauses: int, seed: int, positive: bool = False) -> Formula:
    """Random formula; ``positive=True`` gives positive 3-clauses on distinct
    variables, otherwise the result respects the bounded-occurrence rules
    (clauses of 2 or 3 literals, <= 2 positive and <= 1 negative occurrence
    per variable)."""
    _need(num_vars >= 1 and num_clauses >= 0, "need num_vars >= 1 and num_clauses >= 0")
    rng = _rng(seed)
    if positive:
        _need(num_vars >= 3, "positive 3-clauses need at least 3 variables")
        clauses = [tuple(sorted(rng.sample(range(1, num_vars + 1), 3))) for _ in range(num_clauses)]
        return Formula(num_vars, tuple(clauses))
    pos = [0] * (num_vars + 1)
    neg = [0] * (num_vars + 1)
    clauses = []
    for _ in range(num_clauses):
        open_vars = [v for v in range(1, num_vars + 1) if pos[v] < 2 or neg[v] < 1]
        open_vars = [v for v in open_vars if pos[v] + neg[v] < 3]
        if len(open_vars) < 2:
            break
        size = min(rng.choice((2, 3)), len(open_vars))
        clause = []
        for v in rng.sample(open_vars, size):
            can_pos, can_neg = pos[v] < 2, neg[v] < 1
            if can_neg and (not can_pos or rng.random() < 0.35):
                neg[v] += 1
                clause.append(-v)
            else:
                pos[v] += 1
                clause.append(v)
        clauses.append(tuple(clause))
    return Formula(num_vars, tuple(clauses))
