"""Neighborhood-diversity types and a kernel of at most 2*nd(G) vertices
for the allowed bipartizing matching problem.

Rules, tried in order and restarted from the top after any change:

1. a K5 anywhere -> NO
2. a triangle type with two or more outside neighbors (a K5 minus an edge) -> NO
3. a triangle with every edge forbidden, or a K4 whose three perfect
   matchings all use a forbidden edge -> NO
4. drop a K4 type (it is a whole component)
5. drop a triangle type with no outside neighbor
6. drop a triangle type with one outside neighbor v and forbid v's other edges
7. contract an independent type of size >= 3 to its lowest vertex and
   forbid that vertex's edges
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Certificate, Graph, Instance, as_instance, check_certificate, norm_edge


class LiftError(RuntimeError):
    """A kernel certificate could not be turned into one for the input."""


@dataclass(frozen=True)
class NDPartition:
    types: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]  # "clique", "independent", or "single"

    def __len__(self) -> int:
        return len(self.types)

    def type_of(self) -> dict[int, int]:
        return {v: i for i, t in enumerate(self.types) for v in t}


def _types_from_adjacency(vertices, adj: dict[int, set[int]]) -> NDPartition:
    open_groups: dict[frozenset, list[int]] = {}
    closed_groups: dict[frozenset, list[int]] = {}
    for v in vertices:
        open_groups.setdefault(frozenset(adj[v]), []).append(v)
        closed_groups.setdefault(frozenset(adj[v] | {v}), []).append(v)
    placed: dict[int, tuple[tuple[int, ...], str]] = {}
    for groups, kind in ((open_groups, "independent"), (closed_groups, "clique")):
        for members in groups.values():
            if len(members) >= 2:
                t = tuple(sorted(members))
                for v in t:
                    placed[v] = (t, kind)
    seen = set()
    types, kinds = [], []
    for v in sorted(vertices):
        t, kind = placed.get(v, ((v,), "single"))
        if t not in seen:
            seen.add(t)
            types.append(t)
            kinds.append(kind)
    return NDPartition(tuple(types), tuple(kinds))


def nd_decompose(g: Graph) -> NDPartition:
    """Twin classes: false twins share open, true twins closed neighborhoods.

    A vertex cannot have both a false and a true twin, so the two
    groupings never overlap.
    """
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    return _types_from_adjacency(range(g.n), adj)


def nd_pairwise(g: Graph) -> NDPartition:
    """Slow pairwise-comparison twin classes, kept as a test oracle."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in itertools.combinations(range(g.n), 2):
        if g.neighbor_set(u) - {v} == g.neighbor_set(v) - {u}:
            parent[find(v)] = find(u)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(find(v), []).append(v)
    types, kinds = [], []
    for members in sorted(classes.values()):
        types.append(tuple(members))
        if len(members) == 1:
            kinds.append("single")
        else:
            kinds.append("clique" if g.has_edge(members[0], members[1]) else "independent")
    return NDPartition(tuple(types), tuple(kinds))


@dataclass(frozen=True)
class Step:
    rule: int
    vertices: tuple[int, ...]
    anchor: int | None = None  # rule 6: the outside neighbor; rule 7: representative
    forbidden: frozenset = frozenset()  # forbidden pairs inside the removed part when it went
    added: frozenset = frozenset()  # pairs newly forbidden by this step


@dataclass
class KernelTrace:
    steps: list[Step] = field(default_factory=list)
    kernel_to_original: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class Rejected:
    """Kernelization proved the instance has no allowed bipartizing matching."""

    rule: int
    vertices: tuple[int, ...]


class _Work:
    def __init__(self, inst: Instance):
        g = inst.graph
        self.alive = set(range(g.n))
        self.adj = {v: set(g.neighbors(v)) for v in range(g.n)}
        self.forbidden = set(inst.forbidden)

    def remove(self, vs) -> None:
        for v in vs:
            for w in self.adj.pop(v):
                if w in self.adj:
                    self.adj[w].discard(v)
            self.alive.discard(v)
        self.forbidden = {e for e in self.forbidden if e[0] in self.alive and e[1] in self.alive}

    def forbid(self, pairs) -> None:
        self.forbidden |= set(pairs)

    def local_forbidden(self, vs) -> frozenset:
        s = set(vs)
        return frozenset(e for e in self.forbidden if e[0] in s and e[1] in s)

    def apply(self, step: Step) -> None:
        if step.rule in (4, 5, 6):
            self.remove(step.vertices)
            self.forbid(step.added)
        elif step.rule == 7:
            self.remove([v for v in step.vertices if v != step.anchor])
            self.forbid(step.added)
        else:
            raise ValueError(f"rule {step.rule} never appears in a trace")

    def instance(self) -> tuple[Instance, list[int]]:
        order = sorted(self.alive)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[w]) for u in order for w in self.adj[u] if u < w]
        forb = frozenset(norm_edge(index[u], index[w]) for u, w in self.forbidden)
        return Instance(Graph(len(order), edges), forb), order


def _perfect_matchings(q):
    a, b, c, d = q
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def _find_k5(work: _Work):
    alive = sorted(work.alive)
    adj = work.adj
    for a in alive:
        for b in sorted(w for w in adj[a] if w > a):
            cab = adj[a] & adj[b]
            for c in sorted(w for w in cab if w > b):
                cabc = cab & adj[c]
                for d in sorted(w for w in cabc if w > c):
                    rest = [w for w in cabc & adj[d] if w > d]
                    if rest:
                        return (a, b, c, d, min(rest))
    return None


def _rule3(work: _Work):
    adj, forb = work.adj, work.forbidden
    for a in sorted(work.alive):
        for b in sorted(w for w in adj[a] if w > a):
            common = sorted(w for w in adj[a] & adj[b] if w > b)
            for c in common:
                if all(norm_edge(x, y) in forb for x, y in ((a, b), (b, c), (a, c))):
                    return (a, b, c)
            for c, d in itertools.combinations(common, 2):
                if d in adj[c] and all(
                    any(norm_edge(*e) in forb for e in pm) for pm in _perfect_matchings((a, b, c, d))
                ):
                    return (a, b, c, d)
    return None


def _next_step(work: _Work) -> Step | Rejected | None:
    k5 = _find_k5(work)
    if k5 is not None:
        return Rejected(1, k5)
    part = _types_from_adjacency(work.alive, work.adj)
    adj = work.adj

    def outside(t):
        s = set(t)
        return sorted(set().union(*(adj[v] for v in t)) - s)

    triangles = [t for t, k in zip(part.types, part.kinds) if k == "clique" and len(t) == 3]
    for t in triangles:
        out = outside(t)
        if len(out) >= 2:
            return Rejected(2, t + tuple(out[:2]))
    bad = _rule3(work)
    if bad is not None:
        return Rejected(3, bad)
    for t, k in zip(part.types, part.kinds):
        if k == "clique" and len(t) == 4:
            return Step(4, t, forbidden=work.local_forbidden(t))
    for t in triangles:
        if not outside(t):
            return Step(5, t, forbidden=work.local_forbidden(t))
    for t in triangles:
        (v,) = outside(t)
        added = frozenset(norm_edge(v, u) for u in adj[v] if u not in t) - work.forbidden
        return Step(6, t, anchor=v, forbidden=work.local_forbidden(t + (v,)), added=added)
    for t, k in zip(part.types, part.kinds):
        if k == "independent" and len(t) >= 3:
            rep = t[0]
            added = frozenset(norm_edge(rep, u) for u in adj[rep]) - work.forbidden
            return Step(7, t, anchor=rep, added=added)
    return None


def kernelize(inst: Graph | Instance) -> Rejected | tuple[Instance, KernelTrace]:
    inst = as_instance(inst)
    work = _Work(inst)
    trace = KernelTrace()
    while True:
        step = _next_step(work)
        if step is None:
            break
        if isinstance(step, Rejected):
            return step
        trace.steps.append(step)
        work.apply(step)
    kernel, order = work.instance()
    trace.kernel_to_original = order
    return kernel, trace


def replay_trace(inst: Graph | Instance, trace: KernelTrace) -> Instance:
    """Re-apply the recorded steps mechanically; must reproduce the kernel."""
    work = _Work(as_instance(inst))
    for step in trace.steps:
        work.apply(step)
    kernel, _ = work.instance()
    return kernel


def _lift_pendant_triangle(step: Step, color: list[int]) -> None:
    t, v = step.vertices, step.anchor
    part = t + (v,)
    for bits in itertools.product((0, 1), repeat=3):
        local = dict(zip(t, bits))
        local[v] = color[v]
        same = {x: 0 for x in part}
        ok = True
        for x, y in itertools.combinations(part, 2):
            if local[x] == local[y]:
                if norm_edge(x, y) in step.forbidden:
                    ok = False
                same[x] += 1
                same[y] += 1
        if ok and all(c <= 1 for c in same.values()):
            for x in t:
                color[x] = local[x]
            return
    raise LiftError(f"no coloring of triangle {t} fits its neighbor {v}")


def lift_certificate(inst: Graph | Instance, trace: KernelTrace, kcert: Certificate) -> Certificate:
    inst = as_instance(inst)
    color = [-1] * inst.n
    for i, v in enumerate(trace.kernel_to_original):
        color[v] = kcert.coloring[i]
    for step in reversed(trace.steps):
        if step.rule == 7:
            for v in step.vertices:
                color[v] = color[step.anchor]
        elif step.rule == 4:
            for (a, b), (c, d) in _perfect_matchings(step.vertices):
                if norm_edge(a, b) not in step.forbidden and norm_edge(c, d) not in step.forbidden:
                    color[a] = color[b] = 0
                    color[c] = color[d] = 1
                    break
            else:
                raise LiftError(f"K4 {step.vertices} has no allowed perfect matching")
        elif step.rule == 5:
            a, b, c = step.vertices
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                if norm_edge(x, y) not in step.forbidden:
                    color[x] = color[y] = 0
                    color[z] = 1
                    break
            else:
                raise LiftError(f"triangle {step.vertices} has every edge forbidden")
        elif step.rule == 6:
            _lift_pendant_triangle(step, color)
    if any(c < 0 for c in color):
        raise LiftError("some vertex was left uncolored")
    cert = Certificate.from_coloring(inst.graph, color)
    reason = check_certificate(inst, cert)
    if reason is not None:
        raise LiftError(f"lifted certificate fails verification: {reason}")
    return cert
