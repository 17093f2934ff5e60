"""Bounded search tree for BM parameterized by a vertex cover.

Every bipartition (A, B) of the cover whose sides induce max degree <= 1
is propagated to a fixpoint over the outside vertices. Leftovers split
into X (one neighbor in A, none in B), Y (the mirror image) and Z (one
neighbor on each side). X goes to B and Y to A, which never costs a
matching slot. Each z in Z is then branched: z joins A, taking its
A-neighbor's slot, or joins B, taking its B-neighbor's. Either branch
saturates a cover vertex, so the tree has height at most |cover| + 1.
"""

from __future__ import annotations

import time

from .exact import SearchState, SolveStats
from .graph import Certificate, Graph, Instance, as_instance, check_certificate

SIDE_A, SIDE_B = 0, 1


def find_vertex_cover(g: Graph, k: int) -> list[int] | None:
    """Cover of size <= k by branching on the lowest uncovered edge."""
    if k < 0:
        raise ValueError("k must be non-negative")
    edges = list(g.edges())

    def branch(chosen: frozenset[int], budget: int) -> frozenset[int] | None:
        for u, v in edges:
            if u not in chosen and v not in chosen:
                break
        else:
            return chosen
        if budget == 0:
            return None
        return branch(chosen | {u}, budget - 1) or branch(chosen | {v}, budget - 1)

    found = branch(frozenset(), k)
    return None if found is None else sorted(found)


def minimum_vertex_cover(g: Graph) -> list[int]:
    k = 0
    while True:
        cover = find_vertex_cover(g, k)
        if cover is not None:
            return cover
        k += 1


def is_vertex_cover(g: Graph, cover) -> bool:
    s = set(cover)
    return all(u in s or v in s for u, v in g.edges())


def valid_partitions(g: Graph, cover: list[int]):
    """Side assignments of the cover (first cover vertex fixed to A) whose
    sides each induce max degree <= 1."""
    if not cover:
        yield {}
        return
    rest = cover[1:]
    for mask in range(1 << len(rest)):
        sides = {cover[0]: SIDE_A}
        for i, v in enumerate(rest):
            sides[v] = (mask >> i) & 1
        if all(
            sum(1 for w in g.neighbors(v) if sides.get(w) == sides[v]) <= 1
            for v in cover
        ):
            yield sides


def classify(state: SearchState, outside: list[int]) -> tuple[list[int], list[int], list[int], list[int]]:
    """Split unassigned outside vertices into (X, Y, Z, isolated)."""
    X, Y, Z, iso = [], [], [], []
    for u in outside:
        if state.color[u] >= 0:
            continue
        a, b = state.cnt[u]
        if a >= 2 or b >= 2:
            raise AssertionError(f"vertex {u} left unforced after propagation")
        if a and b:
            Z.append(u)
        elif a:
            X.append(u)
        elif b:
            Y.append(u)
        else:
            iso.append(u)
    return X, Y, Z, iso


def solve_vc(
    inst: Graph | Instance,
    cover,
    stats: SolveStats | None = None,
) -> Certificate | None:
    inst = as_instance(inst)
    g = inst.graph
    cover = sorted(set(cover))
    if not is_vertex_cover(g, cover):
        raise ValueError("given vertex set is not a vertex cover")
    stats = stats if stats is not None else SolveStats()
    t0 = time.perf_counter()
    in_cover = set(cover)
    outside = [v for v in range(g.n) if v not in in_cover]

    def explore(state: SearchState, depth: int) -> bool:
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        X, Y, Z, iso = classify(state, outside)
        mark = state.mark()
        for group, side in ((X, SIDE_B), (Y, SIDE_A), (iso, SIDE_A)):
            for u in group:
                if not state.assign(u, side):
                    raise AssertionError("free placement of an X/Y vertex failed")
        if not Z:
            return True
        z = Z[0]
        for side in (SIDE_A, SIDE_B):
            inner = state.mark()
            if state.assign(z, side) and explore(state, depth + 1):
                return True
            state.undo(inner)
        state.undo(mark)
        return False

    for sides in valid_partitions(g, cover):
        state = SearchState(inst, 1)
        if all(state.assign(v, sides[v]) for v in cover) and explore(state, 1):
            stats.seconds += time.perf_counter() - t0
            cert = Certificate.from_coloring(g, state.color)
            if check_certificate(inst, cert) is not None:
                raise AssertionError("vertex-cover search produced an invalid certificate")
            return cert
    stats.seconds += time.perf_counter() - t0
    return None
