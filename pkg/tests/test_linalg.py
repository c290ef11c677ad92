from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from msk import linalg
from tests.strategies import small_rationals

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small_rationals, min_size=c, max_size=c), min_size=0, max_size=5)
    .map(lambda rows: (rows, c)))


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        linalg.as_fraction(0.5)


def test_rref_of_identity():
    rows, pivots = linalg.rref([[1, 0], [0, 1]])
    assert rows == [[1, 0], [0, 1]]
    assert pivots == [0, 1]


@given(matrices)
def test_rank_matches_sympy(case):
    rows, ncols = case
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert linalg.rank(rows, ncols) == expected


@given(matrices)
def test_nullspace_is_annihilated_and_complete(case):
    rows, ncols = case
    kernel = linalg.nullspace(rows, ncols)
    for v in kernel:
        assert all(x == 0 for x in linalg.mat_vec(rows, v))
    assert len(kernel) + linalg.rank(rows, ncols) == ncols


@given(matrices, st.lists(small_rationals, min_size=5, max_size=5))
def test_solve_is_consistent(case, coeffs):
    rows, ncols = case
    x = coeffs[:ncols]
    rhs = linalg.mat_vec(rows, x)
    sol = linalg.solve(rows, rhs, ncols)
    assert sol is not None
    assert linalg.mat_vec(rows, sol) == rhs


def test_solve_reports_inconsistency():
    assert linalg.solve([[1, 1], [1, 1]], [1, 2], 2) is None


@given(matrices)
def test_row_reducer_agrees_with_dense(case):
    rows, ncols = case
    reducer = linalg.RowReducer(ncols)
    for r in rows:
        reducer.add({j: Fraction(v) for j, v in enumerate(r) if v})
    assert reducer.rank == linalg.rank(rows, ncols)
    for v in reducer.nullspace():
        assert all(x == 0 for x in linalg.mat_vec(rows, v))
