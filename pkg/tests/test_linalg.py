from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diho.exactalg import Lattice, SnfReport, Subspace, integer_kernel, nullspace, rank, smith_normal_form
from diho.exactalg.linalg import integer_row_echelon, solve_in_span
from oracles import determinantal_invariants

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def as_sparse(row):
    return {j: v for j, v in enumerate(row) if v}


def test_subspace_rows_are_reduced():
    s = Subspace(3, [{0: 2, 1: 4}, {0: 1, 2: 1}])
    assert s.rank == 2
    pivots = s.pivots
    assert list(pivots) == sorted(pivots)
    for p, row in zip(pivots, s.rows):
        assert row[p] == 1
        for q in pivots:
            if q != p:
                assert q not in row
    assert s.contains({0: 3, 1: 6})
    assert not s.contains({1: 1})


def test_add_reports_growth():
    s = Subspace(2)
    assert s.add({0: 1})
    assert not s.add({0: Fraction(5, 3)})
    assert s.free_columns() == (1,)


def test_rank_accepts_unordered_keys():
    assert rank([{"x": 1, ("y",): 1}, {"x": 2, ("y",): 2}, {None: 1}]) == 2


def test_nullspace_small():
    # columns are images of e0, e1, e2
    basis = nullspace([{0: 1}, {0: 1}, {1: 1}])
    assert basis == [{0: Fraction(1), 1: Fraction(-1)}]


def test_solve_in_span():
    assert solve_in_span([{0: 1}, {1: 2}], {0: 3, 1: 4}) == [3, 2]
    assert solve_in_span([{0: 1}], {1: 1}) is None
    with pytest.raises(ValueError):
        solve_in_span([{0: 1}, {0: 2}], {0: 1})


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_vectors_are_annihilated(rows):
    ncols = len(rows[0])
    columns = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(ncols)]
    basis = nullspace(columns, ncols)
    assert len(basis) == ncols - rank(as_sparse(r) for r in rows)
    for x in basis:
        for r in rows:
            assert sum(r[j] * x.get(j, 0) for j in range(ncols)) == 0


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_integer_echelon_is_unimodular_transform(rows):
    E, U = integer_row_echelon(rows, track=True)
    m, n = len(rows), len(rows[0])
    for i in range(m):
        assert E[i] == [sum(U[i][k] * rows[k][j] for k in range(m)) for j in range(n)]
    import sympy

    assert abs(sympy.Matrix(U).det()) == 1


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_integer_kernel_is_saturated_basis(rows):
    n = len(rows[0])
    K = integer_kernel(rows, n)
    for x in K:
        assert all(sum(r[j] * x[j] for j in range(n)) == 0 for r in rows)
    assert len(K) == n - rank(as_sparse(r) for r in rows)
    if K:
        # saturation: the kernel lattice has trivial torsion quotient
        assert smith_normal_form(K).invariant_factors == ()


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_smith_normal_form_matches_determinantal_divisors(rows):
    rep = smith_normal_form(rows)
    assert (rep.rank, rep.invariant_factors) == determinantal_invariants(rows)


def test_smith_examples():
    assert smith_normal_form([[0, 0], [0, 0]]) == SnfReport(0, ())
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == SnfReport(3, ())
    assert smith_normal_form([[2]]) == SnfReport(1, (2,))
    assert smith_normal_form([]) == SnfReport(0, ())
    assert SnfReport(1, (2,)).quotient(3) == (2, (2,))


def test_snf_report_validates_divisibility():
    with pytest.raises(ValueError):
        SnfReport(2, (2, 3))
    with pytest.raises(ValueError):
        SnfReport(1, (1,))


def test_lattice_membership():
    L = Lattice(2, [[2, 0], [0, 3]])
    assert L.contains([4, -3])
    assert not L.contains([1, 0])
    assert not L.contains([Fraction(1, 2), 0])
    assert L.rank == 2
