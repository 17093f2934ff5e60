import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipmatch.formula import (
    ONE_IN_THREE_LIMIT,
    Formula,
    FormulaError,
    brute_one_in_three,
    format_formula,
    parse_formula,
    transform_formula,
)
from bipmatch.generators import random_formula

# Oracle-derived over all 8 assignments: (x1,x2,x3) wants exactly one true,
# (-x1,-x2,-x3) exactly two true.
OPPOSED_CLAUSES_SAT = False


def slow_one_in_three(f):
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if all(sum(bits[abs(l) - 1] == (l > 0) for l in c) == 1 for c in f.clauses):
            return True
    return False


def test_brute_examples():
    assert brute_one_in_three(Formula(3, [(1, 2, 3)]))
    assert brute_one_in_three(Formula(3, [(1, 2, 3), (-1, -2, -3)])) == OPPOSED_CLAUSES_SAT
    assert slow_one_in_three(Formula(3, [(1, 2, 3), (-1, -2, -3)])) == OPPOSED_CLAUSES_SAT
    assert brute_one_in_three(Formula(0, []))


def test_brute_size_limit():
    with pytest.raises(FormulaError):
        brute_one_in_three(Formula(ONE_IN_THREE_LIMIT + 1, [(1, 2)]))


def test_literals_must_be_in_range():
    with pytest.raises(FormulaError):
        Formula(2, [(1, 3)])
    with pytest.raises(FormulaError):
        Formula(2, [()])


def test_transform_splits_thrice_used_variable():
    f = Formula(5, [(1, 2, 3), (1, 4, 5), (1, 2, 4)])
    t = transform_formula(f)
    # x1 occurs 3 times -> 3 copies and 3 binding clauses; the rest stay single
    assert len(t.clauses) == 3 + 3
    binding = t.clauses[3:]
    assert all(len(c) == 2 and c[0] > 0 and c[1] < 0 for c in binding)
    assert t.num_vars == 3 + 4
    assert t.is_well_formed()


def test_transform_keeps_twice_used_variable():
    f = Formula(4, [(1, 2, 3), (1, 2, 4)])
    t = transform_formula(f)
    assert t == Formula(4, [(1, 2, 3), (1, 2, 4)])


def test_transform_rejects_negative_literals():
    with pytest.raises(FormulaError):
        transform_formula(Formula(3, [(1, -2, 3)]))


def test_well_formedness_errors():
    f = Formula(3, [(1, 2, 3), (1, 2), (1, 3), (-2, -3)])
    errors = f.well_formed_errors()
    assert "literal 1 occurs 3 times" in errors
    assert not Formula(3, [(1, 2, 3, 1)]).is_well_formed()


def test_format_round_trip_and_parse_errors():
    f = Formula(4, [(1, -2, 3), (4, -1)])
    assert parse_formula(format_formula(f)) == f
    for bad in ("1 2 0\n", "p x13 2 1\n1 2\n", "p x13 2 2\n1 2 0\n", "p cnf 2 1\n1 2 0\n"):
        with pytest.raises(FormulaError):
            parse_formula(bad)


@given(st.integers(3, 6), st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_transform_preserves_satisfiability(nv, nc, seed):
    f = random_formula(nv, nc, seed, positive=True)
    t = transform_formula(f)
    assert t.is_well_formed()
    assert brute_one_in_three(f) == brute_one_in_three(t) == slow_one_in_three(f)


@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_random_formulas_are_well_formed(nv, nc, seed):
    f = random_formula(nv, nc, seed)
    assert f.is_well_formed()
    assert brute_one_in_three(f) == slow_one_in_three(f)
