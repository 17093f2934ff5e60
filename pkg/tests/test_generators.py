import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipmatch import generators as gen
from bipmatch.classes import solve_triangle_only
from bipmatch.exact import solve_brute
from bipmatch.fpt_vc import is_vertex_cover
from bipmatch.graph import check_certificate
from bipmatch.kernel import nd_decompose
from bipmatch.structure import is_P5_free

from oracles import induced_p5_free, odd_cycles_only_triangles, to_nx

seeds = st.integers(0, 10**6)


@given(st.integers(1, 30), seeds)
@settings(max_examples=50, deadline=None)
def test_subcubic_degree(n, seed):
    g = gen.random_subcubic(n, seed)
    assert g.n == n and g.max_degree <= 3


@given(st.integers(1, 20), st.integers(0, 6), seeds)
@settings(max_examples=50, deadline=None)
def test_planted_cover_is_a_cover(n, vc, seed):
    vc = min(vc, n)
    g = gen.random_planted_vc(n, vc, seed)
    assert any(is_vertex_cover(g, c) for r in range(vc + 1) for c in itertools.combinations(range(n), r))


@given(st.integers(1, 12), seeds)
@settings(max_examples=50, deadline=None)
def test_cograph_is_p5_free(n, seed):
    g = gen.random_cograph(n, seed)
    assert induced_p5_free(g)
    assert is_P5_free(g)


@given(st.integers(1, 30), seeds)
@settings(max_examples=50, deadline=None)
def test_chordal(n, seed):
    g = gen.random_chordal(n, seed)
    assert nx.is_chordal(to_nx(g))
    assert max((len(c) for c in nx.find_cliques(to_nx(g))), default=1) <= 4


@given(st.integers(3, 25), st.integers(1, 3), seeds)
@settings(max_examples=50, deadline=None)
def test_small_domination(n, k, seed):
    g = gen.random_small_domination(n, k, seed)
    assert any(
        all(v in d or any(g.has_edge(v, x) for x in d) for v in range(n))
        for d in itertools.combinations(range(n), k)
    )


@given(st.integers(1, 6), seeds)
@settings(max_examples=50, deadline=None)
def test_nd_graph_has_few_types(types, seed):
    g = gen.random_nd_graph(types, seed)
    assert len(nd_decompose(g)) <= types


@given(st.integers(1, 20), seeds)
@settings(max_examples=60, deadline=None)
def test_block_composed_is_in_class_and_solvable(n, seed):
    inst = gen.random_block_composed(n, seed)
    assert inst.n <= n
    assert nx.is_connected(to_nx(inst.graph))
    assert odd_cycles_only_triangles(inst.graph)
    cert = solve_triangle_only(inst)
    assert (cert is None) == (solve_brute(inst) is None)
    if cert is not None:
        assert check_certificate(inst, cert) is None


@given(st.integers(1, 6), st.integers(0, 6), seeds)
@settings(max_examples=50, deadline=None)
def test_random_formula_well_formed(nv, nc, seed):
    f = gen.random_formula(nv, nc, seed)
    assert f.is_well_formed()


def test_positive_formula():
    f = gen.random_formula(5, 4, 3, positive=True)
    assert all(len(set(c)) == 3 and min(c) > 0 for c in f.clauses)
    with pytest.raises(ValueError):
        gen.random_formula(2, 1, 0, positive=True)


def test_same_seed_same_graph():
    for make in (
        lambda s: gen.random_gnp(15, 0.3, s),
        lambda s: gen.random_cograph(15, s),
        lambda s: gen.random_chordal(15, s),
        lambda s: gen.random_block_composed(15, s).graph,
    ):
        assert make(7) == make(7)
    assert gen.random_gnp(20, 0.5, 1) != gen.random_gnp(20, 0.5, 2)


def test_parameter_errors():
    with pytest.raises(ValueError):
        gen.random_gnp(5, 1.5, 0)
    with pytest.raises(ValueError):
        gen.random_planted_vc(3, 4, 0)
    with pytest.raises(ValueError):
        gen.random_gnp(5, 0.5, None)
    with pytest.raises(ValueError):
        gen.random_small_domination(3, 0, 0)
