import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipmatch.exact import enumerate_all, solve_exact
from bipmatch.formula import Formula, FormulaError, brute_one_in_three, transform_formula
from bipmatch.gadgets import (
    HEAD_EDGES,
    GadgetContractError,
    build_clause_gadget,
    build_head,
    build_pool,
    build_pool_minus_border,
    build_reduction,
    build_variable_gadget,
    check_clause_contract,
    check_variable_contract,
    clause_patterns,
    derive_head,
    head_coloring,
)
from bipmatch.generators import random_formula
from bipmatch.graph import Graph
from bipmatch.io import parse_graph

GOLDEN = Path(__file__).parent / "golden"


def test_head_matches_golden_file_and_derivation():
    head = build_head()
    assert parse_graph((GOLDEN / "head.txt").read_text()).graph == head.graph
    assert derive_head() == HEAD_EDGES


def test_head_has_one_matching_covering_the_neck():
    head = build_head()
    sols = []
    assert enumerate_all(head.graph, 1, sols.append) == 1
    assert any(head["neck"] in e for e in sols[0].matching)
    assert head.graph.n == 7
    assert head.graph.degree(head["neck"]) == 2
    assert head.graph.degree(head["h6"]) == 3
    assert head.graph.max_degree == 4


def hosts(seed):
    """Head plus up to 8 outside vertices wired to the neck, h6 and each other."""
    rng = random.Random(seed)
    head = build_head()
    extra = rng.randint(1, 8)
    n = 7 + extra
    edges = set(head.graph.edges())
    outside = list(range(7, n))
    for x in outside:
        if rng.random() < 0.5:
            edges.add((head["neck"], x))
        if rng.random() < 0.3:
            edges.add((head["h6"], x))
    for a in outside:
        for b in outside:
            if a < b and rng.random() < 0.3:
                edges.add((a, b))
    return head, Graph(n, sorted(edges))


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_neck_edges_never_matched_in_any_host(seed):
    head, g = hosts(seed)
    base = head_coloring()
    neck = head["neck"]

    def visit(cert):
        flip = cert.coloring[neck]
        assert tuple(c ^ flip for c in cert.coloring[:7]) == base
        for e in cert.matching:
            assert not (neck in e and max(e) >= 7)

    enumerate_all(g, 1, visit)


def test_pool_sizes():
    assert (build_pool(3).graph.n, build_pool(3).graph.m) == (6, 9)
    assert (build_pool(5).graph.n, build_pool(5).graph.m) == (10, 15)
    g = build_pool_minus_border(5)
    assert g.graph.n == 9 and "b5" not in g.labels
    for bad in (2, 4, 1):
        with pytest.raises(ValueError):
            build_pool(bad)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_pool_minus_border_matches_one_cycle_edge(k):
    pool = build_pool_minus_border(k)
    p = [pool[f"p{i}"] for i in range(1, k + 1)]
    cyc = {tuple(sorted((p[i], p[(i + 1) % k]))) for i in range(k)}
    closing = tuple(sorted((p[0], p[-1])))
    sols = []
    enumerate_all(pool.graph, 1, sols.append)
    assert len(sols) == k - 1
    for cert in sols:
        assert len(cert.matching & cyc) == 1
        assert closing not in cert.matching
    assert solve_exact(build_pool(k).graph) is None


@pytest.mark.parametrize("size", [2, 3])
def test_clause_gadget_contract(size):
    gadget = build_clause_gadget(size)
    check_clause_contract(gadget, size)
    assert len(clause_patterns(gadget, size)) == size
    assert gadget.graph.max_degree <= 4


def test_clause_gadget_sizes():
    with pytest.raises(ValueError):
        build_clause_gadget(4)


def test_variable_gadget_contracts():
    plain = build_variable_gadget(False)
    check_variable_contract(plain)
    assert plain.graph.max_degree == 5
    modified = build_variable_gadget(True)
    check_variable_contract(modified)
    assert modified.graph.max_degree == 4


def test_contract_checker_catches_a_broken_gadget():
    # a bare pool-minus-border has free choices on every cycle edge
    broken = build_pool_minus_border(7)
    labels = dict(broken.labels)
    for k in (1, 2, 3):
        labels[f"l({k},b)"] = labels[f"b{2 * k - 1}"]
        labels[f"l({k},w)"] = labels[f"b{2 * k}"]
    with pytest.raises(GadgetContractError):
        check_clause_contract(type(broken)(broken.graph, labels), 3)


def test_reduction_rejects_ill_formed_formula():
    with pytest.raises(FormulaError):
        build_reduction(Formula(3, [(1, 2, 3), (1, 2), (1, 3)]))


def test_reduction_of_a_transformed_single_clause():
    f = transform_formula(Formula(3, [(1, 2, 3)]))
    g, labels = build_reduction(f)
    assert g.max_degree <= 4
    assert (solve_exact(g) is not None) == brute_one_in_three(f)


def test_unsatisfiable_formula_gives_no_instance():
    f = Formula(2, [(1, 2), (1, -2), (-1, 2)])
    assert not brute_one_in_three(f)
    g, _ = build_reduction(f)
    assert solve_exact(g) is None


@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_reduction_equivalence(nv, nc, seed):
    f = random_formula(nv, nc, seed)
    g, _ = build_reduction(f)
    assert g.max_degree <= 4
    assert (solve_exact(g) is not None) == brute_one_in_three(f)
