"""Polynomial algorithms for bounded domination, P5-free graphs, and
graphs whose only odd cycles are triangles (with forbidden edges)."""

from __future__ import annotations

import itertools
import time
from typing import Callable

import networkx as nx

from .exact import SearchState, SolveStats
from .graph import (
    Certificate,
    Graph,
    Instance,
    as_instance,
    block_cut_tree,
    check_certificate,
    is_bipartite,
    norm_edge,
)
from .structure import Verdict, all_odd_cycles_are_triangles


class NoSmallDominatingSet(Exception):
    """No dominating set of the requested size exists."""


class ClassPromiseError(ValueError):
    """The input is outside the class the algorithm was called for."""


def _dominates(g: Graph, subset) -> bool:
    full = (1 << g.n) - 1
    covered = 0
    for v in subset:
        covered |= g.bits[v] | (1 << v)
    return covered == full


def enumerate_dominating_sets(g: Graph, k: int, visitor: Callable[[tuple[int, ...]], None] | None = None) -> int:
    """Visit dominating sets of size <= k, by size then lexicographically."""
    if k < 1:
        raise ValueError("k must be at least 1")
    count = 0
    for size in range(1, min(k, g.n) + 1):
        for subset in itertools.combinations(range(g.n), size):
            if _dominates(g, subset):
                count += 1
                if visitor is not None:
                    visitor(subset)
    return count


def first_dominating_set(g: Graph, k: int) -> tuple[int, ...] | None:
    for size in range(1, min(k, g.n) + 1):
        for subset in itertools.combinations(range(g.n), size):
            if _dominates(g, subset):
                return subset
    return None


def _resolve_by_matching(state: SearchState, leftovers: list[int]) -> bool:
    """Place independent leftovers; Z vertices compete for neighbor slots.

    X -> side 1 and Y -> side 0 cost nothing. A Z vertex has exactly one
    colored neighbor per side and must share the color of one of them,
    using up that neighbor's single matching slot, so Z is feasible iff
    Z can be matched into the free slots.
    """
    color, adj = state.color, state.adj
    Z = []
    for u in leftovers:
        a, b = state.cnt[u]
        if a and b:
            Z.append(u)
        elif not state.assign(u, 1 if a else 0):
            return False
    if not Z:
        return True
    bip = nx.Graph()
    top = [("z", z) for z in Z]
    bip.add_nodes_from(top)
    for z in Z:
        for w in adj[z]:
            if color[w] >= 0 and state.allowed(z, color[w]):
                bip.add_edge(("z", z), w)
    match = nx.bipartite.hopcroft_karp_matching(bip, top_nodes=top)
    if not all(t in match for t in top):
        return False
    for z in Z:
        if not state.assign(z, color[match[("z", z)]]):
            return False
    return True


def _resolve_by_partners(state: SearchState, dom: tuple[int, ...], stats: SolveStats) -> bool:
    """Enumerate the same-colored partner of each dominating vertex.

    Once every dominator's partner (or lack of one) is fixed, each other
    vertex is forced: it shares its partner's color or opposes all of its
    dominators. At most prod(deg + 1) leaves.
    """
    color, cnt, adj = state.color, state.cnt, state.adj

    def step(i: int) -> bool:
        stats.nodes += 1
        if i == len(dom):
            return all(c >= 0 for c in color)
        d = dom[i]
        c = color[d]
        mark = state.mark()
        if cnt[d][c] >= 1:
            return step(i + 1)
        for w in adj[d]:
            if color[w] < 0:
                if state.assign(w, c) and step(i + 1):
                    return True
                state.undo(mark)
        if all(state.assign(w, 1 - c) for w in adj[d] if color[w] < 0) and step(i + 1):
            return True
        state.undo(mark)
        return False

    return step(0)


def solve_domset(
    inst: Graph | Instance,
    k: int,
    stats: SolveStats | None = None,
    resolution: str = "matching",
) -> Certificate | None:
    """BM/ABM via a dominating set of size <= k.

    Every coloring restricts to some split of any fixed dominating set, so
    the splits of the first dominating set found already cover all
    solutions. ``resolution="matching"`` resolves independent leftovers by
    bipartite matching and falls back to partner enumeration otherwise;
    ``"enumerate"`` always enumerates partners.
    """
    inst = as_instance(inst)
    if k < 1:
        raise ValueError("k must be at least 1")
    if resolution not in ("matching", "enumerate"):
        raise ValueError(f"unknown resolution {resolution!r}")
    g = inst.graph
    stats = stats if stats is not None else SolveStats()
    t0 = time.perf_counter()
    if g.n == 0:
        return Certificate(())
    dom = first_dominating_set(g, k)
    if dom is None:
        raise NoSmallDominatingSet(f"no dominating set of size <= {k}")
    stats.extra["dominating_set"] = list(dom)
    for mask in range(1 << (len(dom) - 1)):
        sides = (0,) + tuple((mask >> i) & 1 for i in range(len(dom) - 1))
        if any(
            sum(1 for w in g.neighbors(v) if w in dom and sides[dom.index(w)] == s) > 1
            for v, s in zip(dom, sides)
        ):
            continue
        stats.nodes += 1
        state = SearchState(inst, 1)
        if not all(state.assign(v, s) for v, s in zip(dom, sides)):
            continue
        leftovers = [u for u in range(g.n) if state.color[u] < 0]
        independent = all(
            not (g.bits[u] & sum(1 << w for w in leftovers)) for u in leftovers
        )
        if resolution == "matching" and independent:
            ok = _resolve_by_matching(state, leftovers)
        else:
            ok = _resolve_by_partners(state, dom, stats)
        if ok and all(c >= 0 for c in state.color):
            cert = Certificate.from_coloring(g, state.color)
            if check_certificate(inst, cert) is None:
                stats.seconds += time.perf_counter() - t0
                return cert
    stats.seconds += time.perf_counter() - t0
    return None


def solve_p5_free(inst: Graph | Instance, stats: SolveStats | None = None) -> Certificate | None:
    """P5-free graphs in BM have domination number <= 4 per component."""
    inst = as_instance(inst)
    g = inst.graph
    stats = stats if stats is not None else SolveStats()
    coloring = [0] * g.n
    for comp in g.components():
        sub, back = g.induced(comp)
        index = {v: i for i, v in enumerate(back)}
        forb = frozenset(
            norm_edge(index[u], index[v]) for u, v in inst.forbidden if u in index and v in index
        )
        try:
            cert = solve_domset(Instance(sub, forb), 4, stats)
        except NoSmallDominatingSet:
            return None
        if cert is None:
            return None
        for i, v in enumerate(back):
            coloring[v] = cert.coloring[i]
    return Certificate.from_coloring(g, coloring)


# --- graphs whose odd cycles are all triangles -------------------------------


def _block_options(g: Graph, block: frozenset[int]) -> list[dict[int, int]]:
    """Candidate local colorings of a block, one per possible matching.

    Non-bipartite blocks in this class are K4, or a book: a spine edge xy
    with p >= 1 pages, each page adjacent to exactly x and y (p = 1 is a
    triangle). A 2-page book (diamond) has three bipartizing matchings;
    with three or more pages only the spine works.
    """
    vs = sorted(block)
    sub, _ = g.induced(vs)
    proper = is_bipartite(sub)
    if proper is not None:
        return [dict(zip(vs, proper))]
    if len(vs) == 4 and sub.m == 6:
        a, b, c, d = vs
        return [
            {a: 0, b: 0, c: 1, d: 1},
            {a: 0, c: 0, b: 1, d: 1},
            {a: 0, d: 0, b: 1, c: 1},
        ]
    if len(vs) == 3:
        a, b, c = vs
        return [{a: 0, b: 0, c: 1}, {a: 0, c: 0, b: 1}, {b: 0, c: 0, a: 1}]
    degs = {v: sum(1 for w in g.neighbors(v) if w in block) for v in vs}
    x, y = sorted(vs, key=lambda v: (-degs[v], v))[:2]
    pages = [v for v in vs if v not in (x, y)]
    is_book = g.has_edge(x, y) and all(
        {w for w in g.neighbors(p) if w in block} == {x, y} for p in pages
    )
    if not is_book:
        raise ClassPromiseError(f"block {vs} is not bipartite, a triangle, a K4, or a book")
    spine = {x: 0, y: 0, **{p: 1 for p in pages}}
    if len(pages) != 2:
        return [spine]
    p, q = pages
    return [spine, {x: 0, p: 0, y: 1, q: 1}, {x: 0, q: 0, y: 1, p: 1}]


def _local_mono(g: Graph, option: dict[int, int]) -> list[tuple[int, int]]:
    return [
        norm_edge(u, v)
        for u in option
        for v in g.neighbors(u)
        if u < v and v in option and option[u] == option[v]
    ]


def solve_triangle_only(inst: Graph | Instance, stats: SolveStats | None = None, check_class: bool = True) -> Certificate | None:
    """ABM on graphs whose only odd cycles are triangles.

    Leaf blocks of the block-cut tree are peeled off (smallest cut vertex
    first). A leaf block solvable without matching its cut vertex v is
    dropped; otherwise it is solved with v matched and every remaining
    edge at v becomes forbidden. The last block is solved freely, and the
    local colorings are glued back by flipping each block to agree on its
    cut vertex.
    """
    inst = as_instance(inst)
    g = inst.graph
    stats = stats if stats is not None else SolveStats()
    t0 = time.perf_counter()
    if check_class and all_odd_cycles_are_triangles(g) is Verdict.NO:
        raise ClassPromiseError("graph has an odd cycle longer than a triangle")
    forbidden = set(inst.forbidden)
    tree = block_cut_tree(g)
    blocks = list(tree.blocks)
    options = [_block_options(g, b) for b in blocks]
    active_at: dict[int, int] = {c: 0 for c in tree.cut_vertices}
    for b in blocks:
        for c in b & tree.cut_vertices:
            active_at[c] += 1
    active = set(range(len(blocks)))
    records: list[tuple[int, dict[int, int], int | None]] = []

    def pick(i: int, v: int | None) -> dict[int, int] | None:
        allowed = [o for o in options[i] if not any(e in forbidden for e in _local_mono(g, o))]
        stats.nodes += 1
        if not allowed:
            return None
        if v is None:
            return allowed[0]
        for o in allowed:
            if all(v not in e for e in _local_mono(g, o)):
                return o
        chosen = allowed[0]
        for w in g.neighbors(v):
            if w not in blocks[i]:
                forbidden.add(norm_edge(v, w))
        return chosen

    comp_of = {}
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    block_comp = [comp_of[min(b)] for b in blocks]
    remaining = {}
    for i in active:
        remaining[block_comp[i]] = remaining.get(block_comp[i], 0) + 1

    while active:
        leaves = []
        for i in active:
            if remaining[block_comp[i]] == 1:
                leaves.append((-1, min(blocks[i]), i, None))
                continue
            live = [c for c in blocks[i] & tree.cut_vertices if active_at[c] >= 2]
            if len(live) == 1:
                leaves.append((live[0], min(blocks[i]), i, live[0]))
        # peel a real leaf (lowest cut vertex) before closing a last block
        leaves.sort(key=lambda t: (t[3] is None, t[0], t[1]))
        _, _, i, v = leaves[0]
        chosen = pick(i, v)
        if chosen is None:
            stats.seconds += time.perf_counter() - t0
            return None
        records.append((i, chosen, v))
        active.discard(i)
        remaining[block_comp[i]] -= 1
        for c in blocks[i] & tree.cut_vertices:
            active_at[c] -= 1

    coloring = [-1] * g.n
    for i, option, v in reversed(records):
        flip = 0
        if v is not None and coloring[v] >= 0:
            flip = option[v] ^ coloring[v]
        for u, c in option.items():
            if coloring[u] < 0:
                coloring[u] = c ^ flip
    cert = Certificate.from_coloring(g, coloring)
    stats.seconds += time.perf_counter() - t0
    reason = check_certificate(inst, cert)
    if reason is not None:
        raise AssertionError(f"block gluing produced an invalid certificate: {reason}")
    return cert
