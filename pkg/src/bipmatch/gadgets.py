"""Gadget builders for the hardness reduction from 1-in-3 SAT.

Conventions used throughout:

* a *head* is a 7-vertex graph with a unique bipartizing matching that
  matches its neck; "putting a head on x" makes x the neck of a new head,
  so every other edge at x is forced to be bichromatic.
* a pool edge "subdivided with heads" becomes a path p - s - t - q where
  s and t are necks; the path forces p and q to get different colors,
  exactly like an edge that can never be matched.
* connection edges always join two necks' neighbors through a neck, so
  they are never matched either.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import enumerate_all
from .formula import Formula, FormulaError
from .graph import Certificate, Graph

# neck = 0, h1..h5 = 1..5, h6 = 6
HEAD_CORE_EDGES = ((0, 1), (0, 4), (1, 4), (1, 2), (2, 3), (3, 4), (1, 5), (2, 5), (3, 5))
# h3h5 is the one core edge the uniqueness argument never uses; it is the
# edge a degree-4 head is allowed to move.
HEAD_SPARE_EDGE = (3, 5)
# Frozen result of derive_head(); tests re-derive it.
HEAD_EDGES = (
    (0, 1), (0, 4), (1, 2), (1, 4), (1, 5), (2, 3), (2, 5), (2, 6),
    (3, 4), (3, 6), (4, 5), (5, 6),
)


class DerivationError(RuntimeError):
    pass


class GadgetContractError(AssertionError):
    pass


@dataclass(frozen=True)
class LabeledGadget:
    graph: Graph
    labels: dict[str, int]

    def __getitem__(self, role: str) -> int:
        return self.labels[role]


class GraphBuilder:
    def __init__(self):
        self.n = 0
        self.edges: set[tuple[int, int]] = set()
        self.labels: dict[str, int] = {}

    def vertex(self, label: str | None = None) -> int:
        v = self.n
        self.n += 1
        if label is not None:
            if label in self.labels:
                raise ValueError(f"duplicate label {label!r}")
            self.labels[label] = v
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))

    def remove_edge(self, u: int, v: int) -> None:
        self.edges.remove((min(u, v), max(u, v)))

    def head(self, neck: int, name: str) -> dict[str, int]:
        """Make ``neck`` the neck of a fresh head; returns h1..h6."""
        ids = [neck] + [self.vertex(f"{name}.h{i}") for i in range(1, 7)]
        for a, b in HEAD_EDGES:
            self.edge(ids[a], ids[b])
        return {f"h{i}": ids[i] for i in range(1, 7)}

    def subdivide(self, u: int, v: int, name: str) -> tuple[int, int]:
        """Replace edge uv by u - s - t - v with heads on s and t."""
        self.remove_edge(u, v)
        s, t = self.vertex(f"{name}.s"), self.vertex(f"{name}.t")
        self.edge(u, s)
        self.edge(s, t)
        self.edge(t, v)
        self.head(s, f"{name}.s")
        self.head(t, f"{name}.t")
        return s, t

    def absorb(self, other: LabeledGadget, prefix: str) -> dict[int, int]:
        offset = self.n
        self.n += other.graph.n
        for u, v in other.graph.edges():
            self.edge(u + offset, v + offset)
        for label, v in other.labels.items():
            self.labels[f"{prefix}{label}"] = v + offset
        return {v: v + offset for v in range(other.graph.n)}

    def build(self) -> LabeledGadget:
        return LabeledGadget(Graph(self.n, sorted(self.edges)), dict(self.labels))


def _unique_solution(g: Graph) -> Certificate | None:
    sols: list[Certificate] = []
    if enumerate_all(g, 1, sols.append) != 1:
        return None
    return sols[0]


def _head_candidates():
    """Core variants in search order: the core itself, then the core with
    its spare edge moved to each other free pair of h1..h5."""
    yield HEAD_CORE_EDGES
    base = tuple(e for e in HEAD_CORE_EDGES if e != HEAD_SPARE_EDGE)
    for pair in itertools.combinations(range(1, 6), 2):
        if pair not in HEAD_CORE_EDGES:
            yield base + (pair,)


def derive_head(max_degree: int = 4) -> tuple[tuple[int, int], ...]:
    """First head (core variant, then 3-subset of h1..h5 for h6) that has
    exactly one bipartizing matching, matches the neck, and keeps the
    maximum degree at ``max_degree``.

    The degree cap matters because a neck carries outside edges and h6 may
    serve as a port; with the plain core every unique attachment needs h1,
    which already has degree 4.
    """
    for core in _head_candidates():
        for subset in itertools.combinations(range(1, 6), 3):
            edges = tuple(sorted(core + tuple((a, 6) for a in subset)))
            g = Graph(7, edges)
            if g.max_degree > max_degree:
                continue
            cert = _unique_solution(g)
            if cert is not None and any(0 in e for e in cert.matching):
                return edges
    raise DerivationError("no head variant has a unique matching covering the neck")


def build_head() -> LabeledGadget:
    b = GraphBuilder()
    neck = b.vertex("neck")
    b.head(neck, "head")
    gadget = b.build()
    labels = {"neck": 0, **{f"h{i}": i for i in range(1, 7)}}
    return LabeledGadget(gadget.graph, labels)


def head_coloring() -> tuple[int, ...]:
    """The unique head coloring with the neck colored 0."""
    cert = _unique_solution(build_head().graph)
    if cert is None:
        raise GadgetContractError("head does not have a unique bipartizing matching")
    return cert.coloring


def _check_pool_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"pool size must be odd and at least 3, got {k}")


def _pool_into(b: GraphBuilder, k: int, with_last_border: bool) -> None:
    ps = [b.vertex(f"p{i}") for i in range(1, k + 1)]
    for i in range(k):
        b.edge(ps[i], ps[(i + 1) % k])
    for i in range(k if with_last_border else k - 1):
        x = b.vertex(f"b{i + 1}")
        b.edge(x, ps[i])
        b.edge(x, ps[(i + 1) % k])


def build_pool(k: int) -> LabeledGadget:
    """k-pool: cycle p1..pk and borders bi adjacent to pi, p(i+1)."""
    _check_pool_k(k)
    b = GraphBuilder()
    _pool_into(b, k, True)
    return b.build()


def build_pool_minus_border(k: int) -> LabeledGadget:
    """k-pool without bk, the border on the p1-pk edge."""
    _check_pool_k(k)
    b = GraphBuilder()
    _pool_into(b, k, False)
    return b.build()


def build_clause_gadget(size: int) -> LabeledGadget:
    """Pool-minus-border on 2*size+1 cycle vertices.

    Only p1p2, p3p4, ... (one per literal) stay plain; every other cycle
    edge is subdivided with heads, so exactly one plain edge is matched.
    Literal k owns borders b(2k-1), b(2k); l(k,b) hangs off b(2k-1) and
    l(k,w) off b(2k), each with a head. Literal k's pair is same-colored
    exactly when p(2k-1)p(2k) is the matched edge.
    """
    if size not in (2, 3):
        raise ValueError("clause gadgets exist for 2 or 3 literals")
    k = 2 * size + 1
    b = GraphBuilder()
    _pool_into(b, k, False)
    L = b.labels
    plain = {(2 * i - 1, 2 * i) for i in range(1, size + 1)}
    for i in range(1, k + 1):
        j = i % k + 1
        if (i, j) not in plain:
            b.subdivide(L[f"p{i}"], L[f"p{j}"], f"p{i}p{j}")
    for lit in range(1, size + 1):
        for role, border in (("b", 2 * lit - 1), ("w", 2 * lit)):
            x = b.vertex(f"l({lit},{role})")
            b.edge(x, L[f"b{border}"])
            b.head(x, f"l({lit},{role})")
    return b.build()


def build_variable_gadget(modified: bool = False) -> LabeledGadget:
    """7-pool minus b7 with p2p3, p3p4, p4p5, p6p7 subdivided with heads.

    Ports: d(1,b)=b1, d(1,w)=b2, d(2,w)=b4, d(3,b)=b5, d(3,w)=b6, and an
    extra d(2,b) forced to the color opposite p4. The plain gadget makes
    d(2,b) a neck adjacent to p4 (p4 then has degree 5); the modified one
    uses the free h6 port of a head on the p3-p4 subdivision path instead,
    keeping the maximum degree at 4.
    """
    b = GraphBuilder()
    _pool_into(b, 7, False)
    L = b.labels
    paths = {}
    for i, j in ((2, 3), (3, 4), (4, 5), (6, 7)):
        paths[(i, j)] = b.subdivide(L[f"p{i}"], L[f"p{j}"], f"p{i}p{j}")
    for role, border in (("d(1,b)", 1), ("d(1,w)", 2), ("d(2,w)", 4), ("d(3,b)", 5), ("d(3,w)", 6)):
        L[role] = L[f"b{border}"]
    if not modified:
        x = b.vertex("d(2,b)")
        b.edge(x, L["p4"])
        b.head(x, "d(2,b)")
    else:
        # path p3 - s - t - p4: s has p4's color, t the opposite one
        s, t = paths[(3, 4)]
        coloring = head_coloring()
        h6_same_as_neck = coloring[6] == coloring[0]
        L["d(2,b)"] = L[f"p3p4.{'t' if h6_same_as_neck else 's'}.h6"]
    return b.build()


def clause_patterns(gadget: LabeledGadget, size: int) -> set[tuple[int, ...]]:
    """Distinct colorings of the l-ports (w then b per literal), normalized
    so that l(1,w) has color 0."""
    order = [gadget[f"l({k},{r})"] for k in range(1, size + 1) for r in ("w", "b")]
    return _port_patterns(gadget.graph, order)


def variable_patterns(gadget: LabeledGadget) -> set[tuple[int, ...]]:
    order = [gadget[f"d({k},{r})"] for k in (1, 2, 3) for r in ("w", "b")]
    return _port_patterns(gadget.graph, order)


def _port_patterns(g: Graph, order: list[int]) -> set[tuple[int, ...]]:
    found: set[tuple[int, ...]] = set()

    def visit(cert: Certificate) -> None:
        flip = cert.coloring[order[0]]
        found.add(tuple(cert.coloring[v] ^ flip for v in order))

    enumerate_all(g, 1, visit)
    return found


def check_clause_contract(gadget: LabeledGadget, size: int) -> None:
    pats = clause_patterns(gadget, size)
    if len(pats) != size:
        raise GadgetContractError(f"clause gadget has {len(pats)} port patterns, expected {size}")
    for p in pats:
        same = [k for k in range(size) if p[2 * k] == p[2 * k + 1]]
        if len(same) != 1:
            raise GadgetContractError(f"pattern {p} has {len(same)} same-colored pairs")
        # every w-port shares one color, so gadgets can be glued in phase
        if len({p[2 * k] for k in range(size)}) != 1:
            raise GadgetContractError(f"pattern {p} is out of phase")


def check_variable_contract(gadget: LabeledGadget) -> None:
    pats = variable_patterns(gadget)
    if len(pats) != 2:
        raise GadgetContractError(f"variable gadget has {len(pats)} port patterns, expected 2")
    for p in pats:
        same = [p[2 * k] == p[2 * k + 1] for k in range(3)]
        if not (same[0] == same[1] != same[2]):
            raise GadgetContractError(f"pattern {p} does not oppose d(3) to d(1), d(2)")
        if len({p[0], p[2], p[4]}) != 1:
            raise GadgetContractError(f"pattern {p} is out of phase")


def build_reduction(f: Formula, modified: bool = True) -> tuple[Graph, dict[str, int]]:
    """Graph that has a bipartizing matching iff f is 1-in-3 satisfiable.

    Literal slot k of clause j is wired to port pair k' of its variable:
    positive occurrences take k' = 1 then 2, the negative one k' = 3.
    Edges join l(k,b)-d(k',b) and l(k,w)-d(k',w).
    """
    errors = f.well_formed_errors()
    if errors:
        raise FormulaError("; ".join(errors))
    b = GraphBuilder()
    gadgets = {2: build_clause_gadget(2), 3: build_clause_gadget(3)}
    var_gadget = build_variable_gadget(modified)
    for i in range(1, f.num_vars + 1):
        b.absorb(var_gadget, f"X{i}:")
    for j, clause in enumerate(f.clauses, 1):
        b.absorb(gadgets[len(clause)], f"C{j}:")
    next_pos = {i: 1 for i in range(1, f.num_vars + 1)}
    for j, clause in enumerate(f.clauses, 1):
        for k, lit in enumerate(clause, 1):
            i = abs(lit)
            if lit > 0:
                port = next_pos[i]
                next_pos[i] += 1
            else:
                port = 3
            for r in ("b", "w"):
                b.edge(b.labels[f"C{j}:l({k},{r})"], b.labels[f"X{i}:d({port},{r})"])
    g = b.build()
    return g.graph, g.labels
