from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ilconv.natset import (
    CellSelection,
    CofiniteCells,
    FiniteCells,
    SymbolicNatSet,
    cell_of,
    cells_hit,
    density,
    enumerate_prefix,
    next_member,
    prefix_mask,
)

N = 512

selections = st.builds(
    CellSelection,
    st.frozensets(st.integers(1, 10), max_size=4),
    st.booleans(),
)
natsets = st.builds(
    SymbolicNatSet,
    selections,
    st.frozensets(st.integers(1, 300), max_size=4),
    st.frozensets(st.integers(1, 300), max_size=4),
)


def members(S, n=N):
    return {k for k in range(1, n + 1) if k in S}


def test_cell_of_small_values():
    assert [cell_of(n) for n in range(1, 13)] == [1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3]
    assert cell_of(2**99) == 100
    with pytest.raises(ValueError):
        cell_of(0)


def test_cell_two_membership():
    D2 = SymbolicNatSet.cell(2)
    assert [n for n in range(1, 20) if n in D2] == [2, 6, 10, 14, 18]


def test_density_examples():
    assert density(SymbolicNatSet.cell(2)) == Fraction(1, 4)
    assert density(~SymbolicNatSet.cell(1)) == Fraction(1, 2)
    assert density(SymbolicNatSet.finite([1, 2, 3])) == 0
    assert density(SymbolicNatSet.all()) == 1


def test_normal_form_makes_equality_extensional():
    a = SymbolicNatSet.cell(1) | SymbolicNatSet.finite([3])
    assert a == SymbolicNatSet.cell(1)
    b = SymbolicNatSet.cell(1) - SymbolicNatSet.finite([3])
    assert 3 not in b and b.minus == {3}


def test_to_expr_forms():
    assert SymbolicNatSet.cell(2).to_expr() == "D(2)"
    assert (~SymbolicNatSet.cell(1)).to_expr() == "!D(1)"
    assert SymbolicNatSet.all().to_expr() == "all"
    assert SymbolicNatSet.empty().to_expr() == "empty"
    assert SymbolicNatSet.finite([2, 1]).to_expr() == "finite{1,2}"


def test_next_member_reaches_huge_indices():
    S = SymbolicNatSet(CofiniteCells(range(1, 100)))
    assert next_member(S, 0) == 2**99
    assert next_member(S, 2**99) == 2**100
    assert next_member(SymbolicNatSet.finite([5]), 5) is None


def test_elements_of_infinite_set_refused():
    with pytest.raises(ValueError):
        SymbolicNatSet.cell(1).elements()


@given(natsets, natsets)
def test_union_and_intersection_match_membership(S, T):
    assert members(S | T) == members(S) | members(T)
    assert members(S & T) == members(S) & members(T)
    assert members(S ^ T) == members(S) ^ members(T)
    assert members(S - T) == members(S) - members(T)


@given(natsets)
def test_complement_is_involutive_and_exact(S):
    assert ~~S == S
    assert members(~S) == set(range(1, N + 1)) - members(S)
    assert density(S) + density(~S) == 1


@given(natsets, natsets, natsets)
def test_boolean_algebra_laws(A, B, C):
    assert A | (B & C) == (A | B) & (A | C)
    assert A & (B | C) == (A & B) | (A & C)
    assert ~(A | B) == ~A & ~B
    assert ~(A & B) == ~A | ~B
    assert (A ^ B) ^ C == A ^ (B ^ C)
    assert A | (A & B) == A


@given(natsets)
def test_prefix_mask_and_enumeration_agree(S):
    mask = prefix_mask(S, N)
    assert not mask[0]
    assert set(enumerate_prefix(S, N)) == members(S)


@given(natsets, st.integers(0, 400))
def test_next_member_is_least_successor(S, after):
    expected = min((k for k in range(after + 1, 4 * N) if k in S), default=None)
    got = next_member(S, after)
    if expected is not None:
        assert got == expected
    else:
        assert got is None or got >= 4 * N


@given(natsets)
def test_finite_iff_no_cells(S):
    assert S.is_finite == (S.base == FiniteCells())
    assert cells_hit(S).is_finite == (not S.base.cofinite)


@given(natsets)
def test_empirical_density_near_exact(S):
    M = 2**14
    emp = Fraction(int(prefix_mask(S, M).sum()), M)
    assert abs(emp - density(S)) <= Fraction(len(S.plus) + len(S.minus) + 12, M)
