"""Independent reference computations used only by the tests.

Nothing here calls into the solvers under test beyond the Graph type.
"""

import itertools

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def valid_colorings(g, d=1, forbidden=frozenset()):
    """Every 2-coloring (as a tuple) with at most d same-colored neighbors
    per vertex and no forbidden monochromatic edge."""
    out = []
    for bits in itertools.product((0, 1), repeat=g.n):
        if any(sum(bits[w] == bits[v] for w in g.neighbors(v)) > d for v in range(g.n)):
            continue
        if any(bits[u] == bits[v] for u, v in forbidden):
            continue
        out.append(bits)
    return out


def has_bm(g, forbidden=frozenset(), d=1):
    return bool(valid_colorings(g, d, forbidden))


def canonical_count(g, d=1, forbidden=frozenset()):
    """Solutions up to a color swap in each connected component."""
    comps = list(nx.connected_components(to_nx(g)))
    return len(valid_colorings(g, d, forbidden)) // (2 ** len(comps)) if g.n else 1


def induced_p5_free(g):
    h = to_nx(g)
    p5 = nx.path_graph(5)
    for sub in itertools.combinations(range(g.n), 5):
        if nx.is_isomorphic(h.subgraph(sub), p5):
            return False
    return True


def odd_cycles_only_triangles(g):
    h = to_nx(g)
    return all(len(c) == 3 or len(c) % 2 == 0 for c in nx.simple_cycles(h))
