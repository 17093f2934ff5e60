"""Complete (2,d)-coloring search with forbidden monochromatic edges.

``solve_exact`` is a backtracking search with unit propagation;
``solve_brute`` enumerates all colorings and serves as the reference
oracle; ``enumerate_all`` lists every solution up to color swap.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numba
import numpy as np

from .graph import Certificate, Graph, Instance, as_instance, check_certificate

BRUTE_LIMIT = 26


class SizeLimitError(ValueError):
    pass


@dataclass
class SolveStats:
    nodes: int = 0
    max_depth: int = 0
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)


def _check_args(inst: Instance, d: int) -> None:
    if d < 0:
        raise ValueError("defect d must be non-negative")
    if inst.forbidden and d != 1:
        raise ValueError("forbidden edges are only meaningful for d = 1")


class SearchState:
    """Partial 2-coloring with per-vertex counts of neighbors in each color.

    ``cnt[v][c]`` is the number of neighbors of ``v`` colored ``c``; for a
    colored vertex ``cnt[v][color[v]]`` is its monochromatic degree. Every
    assignment goes through :meth:`assign`, which propagates forced colors
    and returns False on conflict; :meth:`undo` rolls back to a trail mark.
    """

    def __init__(self, inst: Instance, d: int):
        g = inst.graph
        self.graph = g
        self.adj = g.adj
        self.d = d
        self.color = [-1] * g.n
        self.cnt = [[0, 0] for _ in range(g.n)]
        self.trail: list[int] = []
        fn: list[set[int]] = [set() for _ in range(g.n)]
        for u, v in inst.forbidden:
            fn[u].add(v)
            fn[v].add(u)
        self.fnbr = fn

    def allowed(self, u: int, c: int) -> bool:
        d = self.d
        if self.cnt[u][c] > d:
            return False
        color, cnt, fn = self.color, self.cnt, self.fnbr[u]
        for w in self.adj[u]:
            if color[w] == c and (cnt[w][c] >= d or w in fn):
                return False
        return True

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        color, cnt, adj, trail = self.color, self.cnt, self.adj, self.trail
        while len(trail) > mark:
            v = trail.pop()
            c = color[v]
            color[v] = -1
            for w in adj[v]:
                cnt[w][c] -= 1

    def assign(self, v: int, c: int) -> bool:
        color, cnt, adj, d = self.color, self.cnt, self.adj, self.d
        queue = [(v, c)]
        while queue:
            v, c = queue.pop()
            if color[v] == c:
                continue
            if color[v] >= 0 or not self.allowed(v, c):
                return False
            color[v] = c
            self.trail.append(v)
            for w in adj[v]:
                cnt[w][c] += 1
            affected = [w for w in adj[v] if color[w] < 0]
            for w in adj[v]:
                if color[w] == c and cnt[w][c] >= d:
                    affected.extend(x for x in adj[w] if color[x] < 0)
            for u in affected:
                if color[u] >= 0:
                    continue
                a0 = self.allowed(u, 0)
                a1 = self.allowed(u, 1)
                if not a0 and not a1:
                    return False
                if not a0:
                    queue.append((u, 1))
                elif not a1:
                    queue.append((u, 0))
        return True

    def pick_branch_vertex(self, candidates: Iterable[int]) -> int:
        """Unassigned vertex with most colored neighbors, ties to lowest id."""
        color, cnt = self.color, self.cnt
        best, best_key = -1, -1
        for u in candidates:
            if color[u] < 0:
                k = cnt[u][0] + cnt[u][1]
                if k > best_key:
                    best, best_key = u, k
        return best


def _search_component(
    state: SearchState,
    comp: list[int],
    stats: SolveStats,
    on_solution: Callable[[], bool],
    first_colors: tuple[int, ...] = (0,),
) -> bool:
    """Depth-first search over the vertices of one component.

    Calls ``on_solution`` for every full coloring of ``comp`` reached;
    stops and returns True as soon as it returns True. The component root
    only tries ``first_colors`` (swap symmetry).
    """
    base = state.mark()
    root = comp[0]
    if state.color[root] >= 0:
        root = state.pick_branch_vertex(comp)
        first_colors = (0, 1)
        if root < 0:
            return on_solution()
    # frames: [vertex, remaining colors, trail mark]
    frames = [[root, list(first_colors), state.mark()]]
    while frames:
        frame = frames[-1]
        v, todo, mark = frame
        state.undo(mark)
        if not todo:
            frames.pop()
            continue
        c = todo.pop(0)
        stats.nodes += 1
        if not state.assign(v, c):
            continue
        nxt = state.pick_branch_vertex(comp)
        if nxt < 0:
            if on_solution():
                return True
            continue
        frames.append([nxt, [0, 1], state.mark()])
        if len(frames) > stats.max_depth:
            stats.max_depth = len(frames)
    state.undo(base)
    return False


def solve_exact(inst: Graph | Instance, d: int = 1, stats: SolveStats | None = None) -> Certificate | None:
    """Decide (2,d)-colorability (d = 1: allowed bipartizing matching).

    Components are solved independently; the lowest vertex of each is
    colored 0. Returns a verified certificate, or None (a proof of NO).
    """
    inst = as_instance(inst)
    _check_args(inst, d)
    stats = stats if stats is not None else SolveStats()
    t0 = time.perf_counter()
    state = SearchState(inst, d)
    for comp in inst.graph.components():
        found = _search_component(state, comp, stats, lambda: True)
        if not found:
            stats.seconds += time.perf_counter() - t0
            return None
    stats.seconds += time.perf_counter() - t0
    cert = _make_certificate(inst.graph, state.color, d)
    reason = check_certificate(inst, cert, d)
    if reason is not None:
        raise AssertionError(f"solver produced an invalid certificate: {reason}")
    return cert


def solve_abm(inst: Graph | Instance, stats: SolveStats | None = None) -> Certificate | None:
    return solve_exact(inst, 1, stats)


def _make_certificate(g: Graph, coloring, d: int) -> Certificate:
    if d == 1:
        return Certificate.from_coloring(g, coloring)
    return Certificate(tuple(coloring))


def enumerate_all(
    inst: Graph | Instance,
    d: int = 1,
    visitor: Callable[[Certificate], None] | None = None,
    stats: SolveStats | None = None,
) -> int:
    """Visit every solution once modulo a color swap per component.

    Canonical form: the lowest vertex of every component has color 0.
    Returns the number of canonical solutions.
    """
    inst = as_instance(inst)
    _check_args(inst, d)
    stats = stats if stats is not None else SolveStats()
    state = SearchState(inst, d)
    comps = inst.graph.components()
    per_comp: list[list[tuple[int, ...]]] = []
    counts: list[int] = []
    for comp in comps:
        sols: list[tuple[int, ...]] = []
        tally = [0]

        def record(comp=comp, sols=sols, tally=tally):
            tally[0] += 1
            if visitor is not None:
                sols.append(tuple(state.color[v] for v in comp))
            return False

        _search_component(state, comp, stats, record)
        if tally[0] == 0:
            return 0
        counts.append(tally[0])
        per_comp.append(sols)
    total = 1
    for c in counts:
        total *= c
    if visitor is not None:
        coloring = [0] * inst.n
        for combo in itertools.product(*per_comp):
            for comp, part in zip(comps, combo):
                for v, c in zip(comp, part):
                    coloring[v] = c
            visitor(_make_certificate(inst.graph, coloring, d))
    return total


@numba.njit(cache=True)
def _popcount(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (x * 0x0101010101010101) >> 56


@numba.njit(cache=True)
def _first_valid_coloring(n, rows, d, fu, fv, stop):
    full = (np.uint64(1) << np.uint64(n)) - np.uint64(1)
    for code in range(stop):
        x = np.uint64(code)
        ok = True
        for v in range(n):
            if (x >> np.uint64(v)) & np.uint64(1):
                same = x
            else:
                same = ~x & full
            if _popcount(rows[v] & same) > d:
                ok = False
                break
        if ok:
            for i in range(fu.shape[0]):
                if ((x >> np.uint64(fu[i])) & np.uint64(1)) == ((x >> np.uint64(fv[i])) & np.uint64(1)):
                    ok = False
                    break
        if ok:
            return code
    return -1


def solve_brute(inst: Graph | Instance, d: int = 1) -> Certificate | None:
    """Reference oracle: first valid coloring in counting order.

    Vertex ``v`` takes bit ``v`` of the counter. Only codes with the top
    bit clear are scanned: the complement of a valid coloring is valid, so
    the first valid code always has its top bit clear.
    """
    inst = as_instance(inst)
    _check_args(inst, d)
    n = inst.n
    if n > BRUTE_LIMIT:
        raise SizeLimitError(f"brute force limited to n <= {BRUTE_LIMIT}, got n = {n}")
    if n == 0:
        return _make_certificate(inst.graph, (), d)
    rows = np.array(inst.graph.bits, dtype=np.uint64)
    fu = np.array([u for u, _ in sorted(inst.forbidden)], dtype=np.int64)
    fv = np.array([v for _, v in sorted(inst.forbidden)], dtype=np.int64)
    code = _first_valid_coloring(n, rows, d, fu, fv, 1 << (n - 1))
    if code < 0:
        return None
    coloring = [(code >> v) & 1 for v in range(n)]
    cert = _make_certificate(inst.graph, coloring, d)
    assert check_certificate(inst, cert, d) is None
    return cert
