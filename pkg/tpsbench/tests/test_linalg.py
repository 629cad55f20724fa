"""
Exact elimination checked against sympy.
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings as hyp_settings, strategies as st

from tpsbench.app.core.exceptions import SolverInvariantError
from tpsbench.app.domain.exactnum import GaussianRational, ONE, ZERO
from tpsbench.app.domain.linalg import EchelonForm, dot, nullspace, rank, rref, verify_nullspace

# Mostly zeros, like the constraint systems the solvers build
sparse_entries = st.one_of(
    st.just(ZERO),
    st.just(ZERO),
    st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2)),
    st.builds(GaussianRational, st.fractions(-2, 2, max_denominator=3)),
)
real_entries = st.one_of(st.just(ZERO), st.builds(GaussianRational, st.fractions(-3, 3, max_denominator=4)))


def matrices(entries, max_rows=5, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=max_rows)
    )


def to_rows(matrix):
    return [{c: v for c, v in enumerate(row) if v} for row in matrix]


def to_sympy(value: GaussianRational):
    return sympy.Rational(value.re.numerator, value.re.denominator) + sympy.I * sympy.Rational(
        value.im.numerator, value.im.denominator
    )


def sympy_matrix(matrix):
    return sympy.Matrix([[to_sympy(v) for v in row] for row in matrix])


def expanded_zero(x):
    return sympy.expand(x) == 0


def test_rank_and_nullspace_example():
    rows = [{0: ONE, 1: GaussianRational(2)}, {0: GaussianRational(2), 1: GaussianRational(4)}]
    assert rank(rows) == 1
    basis = nullspace(rows, 3)
    assert basis == [{1: ONE, 0: GaussianRational(-2)}, {2: ONE}]


def test_complex_pivot():
    i = GaussianRational(0, 1)
    rows = [{0: i, 1: ONE}]
    assert nullspace(rows, 2) == [{1: ONE, 0: i}]


def test_rref_has_unit_pivots():
    rows = [{0: GaussianRational(2), 1: GaussianRational(4)}, {1: GaussianRational(3), 2: GaussianRational(0, 3)}]
    assert rref(rows) == [
        {0: ONE, 2: GaussianRational(0, -2)},
        {1: ONE, 2: GaussianRational(0, 1)},
    ]


def test_empty_system_is_free():
    assert nullspace([], 2) == [{0: ONE}, {1: ONE}]
    assert rank([{}, {}]) == 0


def test_echelon_contains():
    echelon = EchelonForm([{0: ONE, 1: ONE}])
    assert echelon.contains({0: GaussianRational(Fraction(1, 2)), 1: GaussianRational(Fraction(1, 2))})
    assert not echelon.contains({0: ONE})
    assert echelon.add({0: ONE})
    assert not echelon.add({1: GaussianRational(5)})
    assert echelon.rank == 2


def test_verify_nullspace_rejects_bad_vector():
    rows = [{0: ONE, 1: ONE}]
    verify_nullspace(rows, [{0: ONE, 1: -ONE}])
    with pytest.raises(SolverInvariantError):
        verify_nullspace(rows, [{0: ONE}], context="test")


def test_result_independent_of_duplicate_rows():
    rows = [{0: ONE, 2: GaussianRational(3)}, {1: ONE, 2: -ONE}]
    assert nullspace(rows + rows, 3) == nullspace(rows, 3)


@hyp_settings(max_examples=60, deadline=None)
@given(matrices(sparse_entries))
def test_rank_matches_sympy(matrix):
    expected = sympy_matrix(matrix).rank(iszerofunc=expanded_zero, simplify=True)
    assert rank(to_rows(matrix)) == expected


@hyp_settings(max_examples=60, deadline=None)
@given(matrices(sparse_entries))
def test_nullspace_is_complete_and_exact(matrix):
    n_cols = len(matrix[0])
    rows = to_rows(matrix)
    basis = nullspace(rows, n_cols)
    assert len(basis) == n_cols - rank(rows)
    for vec in basis:
        for row in rows:
            assert dot(row, vec) == ZERO
    assert rank(basis) == len(basis)


@hyp_settings(max_examples=60, deadline=None)
@given(matrices(real_entries))
def test_rref_matches_sympy(matrix):
    n_cols = len(matrix[0])
    reduced, _ = sympy_matrix(matrix).rref()
    expected = []
    for r in range(reduced.rows):
        row = {c: reduced[r, c] for c in range(n_cols) if reduced[r, c] != 0}
        if row:
            expected.append(row)
    ours = [{c: to_sympy(v) for c, v in row.items()} for row in rref(to_rows(matrix))]
    assert ours == expected
