import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipmatch.exact import solve_abm, solve_exact
from bipmatch.fpt_vc import minimum_vertex_cover
from bipmatch.generators import random_forbidden, random_nd_graph, random_planted_vc
from bipmatch.graph import Certificate, Graph, Instance, verify_certificate
from bipmatch.kernel import (
    LiftError,
    KernelTrace,
    Rejected,
    Step,
    kernelize,
    lift_certificate,
    nd_decompose,
    nd_pairwise,
    replay_trace,
)
from named_graphs import complete, cycle, disjoint_union, star


def test_nd_examples():
    assert nd_decompose(complete(5)).types == ((0, 1, 2, 3, 4),)
    assert nd_decompose(complete(5)).kinds == ("clique",)
    part = nd_decompose(star(6))
    assert len(part) == 2 and part.kinds == ("single", "independent")
    assert len(nd_decompose(cycle(5))) == 5
    assert nd_decompose(cycle(5)) == nd_pairwise(cycle(5))


def test_kernel_rejects_k5():
    assert kernelize(complete(5)) == Rejected(1, (0, 1, 2, 3, 4))


def test_kernel_drops_a_k4_component():
    g = disjoint_union(complete(4), cycle(5))
    kernel, trace = kernelize(g)
    assert kernel.graph == cycle(5) and not kernel.forbidden
    assert [s.rule for s in trace.steps] == [4]
    cert = lift_certificate(g, trace, solve_exact(kernel))
    assert len([e for e in cert.matching if max(e) < 4]) == 2


def test_kernel_contracts_a_star():
    kernel, trace = kernelize(star(10))
    assert kernel.graph == Graph(2, [(0, 1)])
    assert kernel.forbidden == {(0, 1)}
    kcert = solve_exact(kernel)
    assert kcert is not None and not kcert.matching
    cert = lift_certificate(star(10), trace, kcert)
    assert len(set(cert.coloring[1:])) == 1 and cert.coloring[0] != cert.coloring[1]


def test_rule2_two_outside_neighbours():
    # triangle 0,1,2 fully joined to 3 and 4: K5 minus an edge
    g = Graph(5, list(itertools.combinations(range(3), 2)) + [(v, x) for v in range(3) for x in (3, 4)])
    result = kernelize(g)
    assert isinstance(result, Rejected) and result.rule == 2
    assert solve_exact(g) is None


def test_rule3_fully_forbidden_triangle():
    tri = complete(3)
    result = kernelize(Instance(tri, frozenset(tri.edges())))
    assert isinstance(result, Rejected) and result.rule == 3


def test_rule6_pendant_triangle_lift():
    # triangle type {0,1,2} hanging off vertex 3, which also sees 4
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (3, 4)])
    for forbidden in (frozenset(), frozenset({(0, 3)}), frozenset({(1, 2)})):
        inst = Instance(g, forbidden)
        kernel, trace = kernelize(inst)
        assert any(s.rule == 6 for s in trace.steps)
        kcert = solve_exact(kernel)
        assert (kcert is None) == (solve_exact(inst) is None)
        if kcert is not None:
            assert verify_certificate(inst, lift_certificate(inst, trace, kcert))


def test_lift_reports_impossible_steps():
    trace = KernelTrace([Step(5, (0, 1, 2), forbidden=frozenset({(0, 1), (0, 2), (1, 2)}))], [])
    with pytest.raises(LiftError):
        lift_certificate(complete(3), trace, Certificate(()))


@st.composite
def nd_instances(draw):
    types = draw(st.integers(1, 7))
    seed = draw(st.integers(0, 10**6))
    g = random_nd_graph(types, seed)
    p = draw(st.sampled_from([0.0, 0.15, 0.4]))
    return random_forbidden(g, p, seed)


@given(nd_instances())
@settings(max_examples=300, deadline=None)
def test_kernel_preserves_answer_and_size(inst):
    result = kernelize(inst)
    exact = solve_abm(inst)
    if isinstance(result, Rejected):
        assert exact is None
        return
    kernel, trace = result
    assert kernel.n <= 2 * len(nd_decompose(inst.graph))
    assert replay_trace(inst, trace) == kernel
    kcert = solve_abm(kernel)
    assert (kcert is None) == (exact is None)
    if kcert is not None:
        assert verify_certificate(inst, lift_certificate(inst, trace, kcert))


@given(st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=200, deadline=None)
def test_hashing_matches_pairwise_types(n, seed):
    g = random_nd_graph(max(1, n // 2), seed)
    assert nd_decompose(g) == nd_pairwise(g)


@given(st.integers(4, 20), st.integers(1, 4), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_nd_bounded_by_vertex_cover(n, vc, seed):
    g = random_planted_vc(n, vc, seed)
    k = len(minimum_vertex_cover(g))
    assert len(nd_decompose(g)) <= 2**k + k
