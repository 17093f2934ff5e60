"""Forbidden-substructure detectors (sound NO-certificates) and class tests."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import networkx as nx

from .graph import Graph, block_cut_tree, is_bipartite

POOL_BUDGET = 10**6


class SearchBudgetExceeded(RuntimeError):
    """A bounded detector gave up before deciding."""


@dataclass(frozen=True)
class Witness:
    kind: str
    vertices: tuple[int, ...]
    parameter: int | None = None

    def to_json(self) -> dict:
        # 1-based ids, like every other file format here
        return {"kind": self.kind, "vertices": [v + 1 for v in self.vertices], "k": self.parameter}


def _bits_iter(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_K5(g: Graph) -> Witness | None:
    bits = g.bits
    for a in range(g.n):
        ca = bits[a] & ~((1 << (a + 1)) - 1)
        for b in _bits_iter(ca):
            cb = ca & bits[b]
            for c in _bits_iter(cb):
                cc = cb & bits[c]
                for d in _bits_iter(cc):
                    cd = cc & bits[d]
                    if cd:
                        e = (cd & -cd).bit_length() - 1
                        return Witness("K5", (a, b, c, d, e))
    return None


def _cycles_in(g: Graph, allowed: int, length: int):
    """Simple cycles of exactly ``length`` inside vertex mask ``allowed``.

    Each cycle is yielded once, starting at its smallest vertex with the
    second vertex smaller than the last.
    """
    bits = g.bits
    for s in _bits_iter(allowed):
        higher = allowed & ~((1 << (s + 1)) - 1)
        path = [s]

        def extend(u: int, used: int):
            if len(path) == length:
                if bits[u] >> s & 1 and path[1] < path[-1]:
                    yield tuple(path)
                return
            for w in _bits_iter(bits[u] & higher & ~used):
                path.append(w)
                yield from extend(w, used | (1 << w))
                path.pop()

        yield from extend(s, 1 << s)


def find_wheel(g: Graph, kmax: int = 6) -> Witness | None:
    """Hub plus a k-cycle (4 <= k <= min(kmax, 6)) in its neighborhood.

    Larger wheels contain two disjoint P3 in the hub's neighborhood and are
    left to :func:`find_two_disjoint_P3`.
    """
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    for hub in range(g.n):
        for k in range(4, min(kmax, 6) + 1):
            for cyc in _cycles_in(g, g.bits[hub], k):
                return Witness("wheel", (hub, *cyc), k)
    return None


def _p3_in(g: Graph, mask: int):
    bits = g.bits
    for b in _bits_iter(mask):
        ends = list(_bits_iter(bits[b] & mask))
        for a, c in itertools.combinations(ends, 2):
            yield (a, b, c)


def find_two_disjoint_P3(g: Graph) -> Witness | None:
    """A vertex whose neighborhood contains two vertex-disjoint 3-paths."""
    bits = g.bits
    for v in range(g.n):
        nb = bits[v]
        if bin(nb).count("1") < 6:
            continue
        for p in _p3_in(g, nb):
            rest = nb & ~sum(1 << x for x in p)
            for q in _p3_in(g, rest):
                return Witness("two_disjoint_P3_in_neighborhood", (v, *p, *q))
    return None


def find_double_diamond(g: Graph) -> Witness | None:
    """Two diamonds sharing a degree-3 vertex; same search as the P3 pair."""
    w = find_two_disjoint_P3(g)
    return None if w is None else Witness("double_diamond", w.vertices)


def _border_assignment(g: Graph, cycle: list[int]) -> list[int] | None:
    k = len(cycle)
    in_cycle = sum(1 << x for x in cycle)
    bip = nx.Graph()
    slots = [("slot", i) for i in range(k)]
    bip.add_nodes_from(slots)
    for i in range(k):
        common = g.bits[cycle[i]] & g.bits[cycle[(i + 1) % k]] & ~in_cycle
        for b in _bits_iter(common):
            bip.add_edge(("slot", i), b)
    match = nx.bipartite.hopcroft_karp_matching(bip, top_nodes=slots)
    if not all(s in match for s in slots):
        return None
    return [match[("slot", i)] for i in range(k)]


def find_odd_pool(g: Graph, kmax: int = 7, budget: int = POOL_BUDGET) -> Witness | None:
    """Odd k-pool subgraph (3 <= k <= kmax, k odd) by guided backtracking.

    Cycle candidates only extend along edges that have a potential border
    (a common neighbor off the path); borders are then chosen as a system
    of distinct representatives. Raises :class:`SearchBudgetExceeded` once
    ``budget`` search nodes are spent.
    """
    if kmax < 3 or kmax % 2 == 0:
        raise ValueError("kmax must be odd and at least 3")
    bits = g.bits
    nodes = 0

    def has_border(u: int, w: int, used: int) -> bool:
        return bool(bits[u] & bits[w] & ~used)

    for k in range(3, kmax + 1, 2):
        for s in range(g.n):
            higher = ~((1 << (s + 1)) - 1)
            path = [s]
            stack = [(s, 1 << s, iter(list(_bits_iter(bits[s] & higher))))]
            while stack:
                u, used, it = stack[-1]
                w = next(it, None)
                if w is None:
                    stack.pop()
                    path.pop()
                    continue
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(f"odd-pool search exceeded {budget} nodes")
                if used >> w & 1 or not has_border(u, w, used | (1 << w)):
                    continue
                path.append(w)
                nused = used | (1 << w)
                if len(path) == k:
                    if bits[w] >> s & 1 and path[1] < path[-1] and has_border(w, s, nused):
                        borders = _border_assignment(g, path)
                        if borders is not None:
                            return Witness("odd_pool", (*path, *borders), k)
                    path.pop()
                    continue
                stack.append((w, nused, iter(list(_bits_iter(bits[w] & higher & ~nused)))))
    return None


def find_any_witness(g: Graph, pool_budget: int = POOL_BUDGET) -> Witness | None:
    """First NO-witness from the cheap detectors, then the odd-pool search."""
    for detect in (find_K5, find_wheel, find_two_disjoint_P3):
        w = detect(g)
        if w is not None:
            return w
    try:
        return find_odd_pool(g, 7, pool_budget)
    except SearchBudgetExceeded:
        return None


def verify_witness(g: Graph, w: Witness) -> bool:
    """Independent edge-by-edge check that ``w`` is realized as a subgraph."""
    vs = w.vertices
    if len(set(vs)) != len(vs):
        return False
    e = g.has_edge
    if w.kind == "K5":
        return len(vs) == 5 and all(e(a, b) for a, b in itertools.combinations(vs, 2))
    if w.kind == "wheel":
        hub, cyc = vs[0], vs[1:]
        k = len(cyc)
        return (
            k >= 4
            and all(e(hub, c) for c in cyc)
            and all(e(cyc[i], cyc[(i + 1) % k]) for i in range(k))
        )
    if w.kind in ("two_disjoint_P3_in_neighborhood", "double_diamond"):
        if len(vs) != 7:
            return False
        v, a1, b1, c1, a2, b2, c2 = vs
        return all(e(v, x) for x in vs[1:]) and all(
            e(a, b) for a, b in ((a1, b1), (b1, c1), (a2, b2), (b2, c2))
        )
    if w.kind == "odd_pool":
        k = len(vs) // 2
        if k < 3 or k % 2 == 0 or len(vs) != 2 * k:
            return False
        cyc, bord = vs[:k], vs[k:]
        return all(
            e(cyc[i], cyc[(i + 1) % k]) and e(bord[i], cyc[i]) and e(bord[i], cyc[(i + 1) % k])
            for i in range(k)
        )
    return False


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


TRIANGLE_CHECK_LIMIT = 20


def _has_long_odd_cycle(g: Graph, block: frozenset[int]) -> bool:
    """Exhaustive simple-cycle search inside one block for odd length >= 5."""
    bits = g.bits
    mask = sum(1 << v for v in block)
    for s in sorted(block):
        higher = mask & ~((1 << (s + 1)) - 1)
        stack = [(s, 1 << s, 1, iter(list(_bits_iter(bits[s] & higher))))]
        while stack:
            u, used, length, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                continue
            if length >= 4 and length % 2 == 0 and bits[w] >> s & 1:
                # path s..w has length+1 vertices, closing edge makes odd cycle
                return True
            stack.append((w, used | (1 << w), length + 1, iter(list(_bits_iter(bits[w] & higher & ~used)))))
    return False


def all_odd_cycles_are_triangles(g: Graph, limit: int = TRIANGLE_CHECK_LIMIT) -> Verdict:
    """Whether every odd cycle is a triangle; exhaustive only for n <= limit.

    Cycles never leave a block and bipartite blocks have none, so only the
    non-bipartite blocks are enumerated.
    """
    if g.n > limit:
        return Verdict.UNKNOWN
    for block in block_cut_tree(g).blocks:
        if len(block) < 5:
            continue
        sub, _ = g.induced(block)
        if is_bipartite(sub) is not None:
            continue
        if _has_long_odd_cycle(g, block):
            return Verdict.NO
    return Verdict.YES


def is_P5_free(g: Graph) -> bool:
    """No induced path on five vertices (induced-path extension search)."""
    bits = g.bits

    def extend(path: list[int], forbidden: int) -> bool:
        if len(path) == 5:
            return True
        last = path[-1]
        for w in _bits_iter(bits[last] & ~forbidden):
            # w must see only the last vertex of the path
            if len(path) == 4 and w < path[0]:
                continue
            if extend(path + [w], forbidden | bits[last] | (1 << w)):
                return True
        return False

    for s in range(g.n):
        if extend([s], 1 << s):
            return False
    return True
