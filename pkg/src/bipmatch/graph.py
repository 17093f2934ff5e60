"""Core graph types: simple graphs, ABM instances, certificates, blocks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Neighbors are kept both as sorted tuples (deterministic iteration) and
    as integer bit rows (fast common-neighborhood queries).
    """

    __slots__ = ("n", "adj", "_nbr", "bits", "m")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbr: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbr[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbr[u].add(v)
            nbr[v].add(u)
        self.n = n
        self._nbr = tuple(frozenset(s) for s in nbr)
        self.adj = tuple(tuple(sorted(s)) for s in nbr)
        self.bits = tuple(sum(1 << w for w in s) for s in nbr)
        self.m = sum(len(s) for s in nbr) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        edges = {norm_edge(u, v) for u, row in enumerate(adjacency) for v in row}
        return cls(len(adjacency), sorted(edges))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> Iterator[Edge]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled densely; returns (graph, new->old)."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v])
            for u in order
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Graph(len(order), edges), order

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp, stack = [], [root]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Instance:
    """An ABM instance: a graph plus edges that may not be matched."""

    graph: Graph
    forbidden: frozenset[Edge] = frozenset()

    def __post_init__(self):
        fixed = frozenset(norm_edge(u, v) for u, v in self.forbidden)
        for u, v in fixed:
            if not self.graph.has_edge(u, v):
                raise ValueError(f"forbidden pair ({u}, {v}) is not an edge")
        object.__setattr__(self, "forbidden", fixed)

    @property
    def n(self) -> int:
        return self.graph.n

    def is_forbidden(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.forbidden


def as_instance(obj: Graph | Instance) -> Instance:
    return obj if isinstance(obj, Instance) else Instance(obj)


@dataclass(frozen=True)
class Certificate:
    """A YES-witness: a 2-coloring and its monochromatic edges."""

    coloring: tuple[int, ...]
    matching: frozenset[Edge] = field(default_factory=frozenset)

    @classmethod
    def from_coloring(cls, graph: Graph, coloring: Sequence[int]) -> "Certificate":
        coloring = tuple(int(c) for c in coloring)
        return cls(coloring, frozenset(monochromatic_edges(graph, coloring)))


def monochromatic_edges(graph: Graph, coloring: Sequence[int]) -> list[Edge]:
    return [(u, v) for u, v in graph.edges() if coloring[u] == coloring[v]]


def is_bipartite(g: Graph) -> tuple[int, ...] | None:
    """Proper 2-coloring by BFS, roots in id order colored 0; None if odd cycle."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for u in queue:
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


DEGREE_VIOLATION = "degree-violation"
MATCHING_VIOLATION = "matching-violation"
FORBIDDEN_EDGE_USED = "forbidden-edge-used"
MATCHING_MISMATCH = "matching-mismatch"
MALFORMED = "malformed-coloring"


def check_certificate(inst: Graph | Instance, cert: Certificate, d: int = 1) -> str | None:
    """Return None if ``cert`` is a valid (2,d)-certificate, else a reason code."""
    inst = as_instance(inst)
    g = inst.graph
    col = cert.coloring
    if len(col) != g.n or any(c not in (0, 1) for c in col):
        return MALFORMED
    mono = monochromatic_edges(g, col)
    same = [0] * g.n
    for u, v in mono:
        same[u] += 1
        same[v] += 1
    if d != 1:
        if inst.forbidden:
            return FORBIDDEN_EDGE_USED
        if any(s > d for s in same):
            return DEGREE_VIOLATION
        if cert.matching:
            return MATCHING_MISMATCH
        return None
    if any(s > 1 for s in same):
        return MATCHING_VIOLATION
    if any(e in inst.forbidden for e in mono):
        return FORBIDDEN_EDGE_USED
    if frozenset(norm_edge(*e) for e in cert.matching) != frozenset(mono):
        return MATCHING_MISMATCH
    return None


def verify_certificate(inst: Graph | Instance, cert: Certificate, d: int = 1) -> bool:
    return check_certificate(inst, cert, d) is None


@dataclass(frozen=True)
class BlockTree:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    # block index -> sorted cut vertices it contains
    incidence: tuple[tuple[int, ...], ...]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_cut_tree(g: Graph) -> BlockTree:
    """Biconnected components via iterative Tarjan with an edge stack.

    Bridges come out as 2-vertex blocks, isolated vertices as singletons.
    Blocks are listed sorted by their sorted vertex tuple.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            blocks.append(frozenset([root]))
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(g.adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                blocks.append(frozenset(comp))
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=lambda b: tuple(sorted(b)))
    incidence = tuple(tuple(sorted(b & cuts)) for b in blocks)
    return BlockTree(tuple(blocks), frozenset(cuts), incidence)
