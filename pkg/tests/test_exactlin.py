from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lieder.errors import DimensionError
from lieder.exactlin import (
    Matrix,
    Subspace,
    contains,
    inverse,
    nullspace,
    rank,
    rational,
    rref,
    solve,
    span_of,
    subspace_equal,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish entries so that rank deficiency actually happens
    entry = st.one_of(st.just(Fraction(0)), small)
    return Matrix([[draw(entry) for _ in range(c)] for _ in range(r)], c)


def test_rref_examples():
    assert rref(Matrix([[2, 4], [1, 2]])) == (Matrix([[1, 2]]), [0])
    assert rref(Matrix.identity(3)) == (Matrix.identity(3), [0, 1, 2])
    m, piv = rref(Matrix([[0, 0], [0, 0]]))
    assert m.rows == 0 and piv == []


def test_rank_examples():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.zeros(3, 2)) == 0


def test_nullspace_examples():
    assert nullspace(Matrix.identity(2)).dim == 0
    assert nullspace(Matrix([[1, 1]])).basis == Matrix([[1, -1]])
    assert nullspace(Matrix([[1, 2], [2, 4]])).dim == 1


def test_solve_examples():
    assert solve(Matrix.identity(2), (3, 1)) == (3, 1)
    assert solve(Matrix([[1, 1], [0, 1]]), (3, 1)) == (2, 1)
    assert solve(Matrix([[1, 0], [1, 0]]), (0, 1)) is None
    with pytest.raises(DimensionError):
        solve(Matrix.identity(2), (1, 2, 3))


def test_span_membership_examples():
    assert contains(span_of([(1, 0), (1, 1)]), (0, 1))
    assert contains(span_of([(1, 2)]), (2, 4))
    assert not contains(span_of([(1, 0)]), (0, 1))
    assert subspace_equal(span_of([(1, 0), (1, 1)]), Subspace.full(2))
    with pytest.raises(DimensionError):
        subspace_equal(span_of([(1, 0)]), span_of([(1, 0, 0)]))


def test_rational_refuses_floats():
    assert rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(ValueError):
        rational("1.5")


def test_inverse_roundtrip():
    m = Matrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    assert m @ inverse(m) == Matrix.identity(3)
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_matrix_shapes():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix.identity(2) @ Matrix.identity(3)
    assert Matrix.from_vec(Matrix([[1, 2], [3, 4]]).vec(), 2, 2) == Matrix([[1, 2], [3, 4]])


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rref_idempotent_and_canonical(m):
    r, piv = rref(m)
    assert rref(r) == (r, piv)
    assert piv == sorted(piv)
    for row, p in zip(r.entries, piv):
        assert row[p] == 1
        assert all(v == 0 for v in row[:p])
        assert all(other[p] == 0 for other in r.entries if other is not row)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_sympy_rank(m):
    assert nullspace(m).dim + rank(m) == m.cols
    assert rank(m) == sp.Matrix(m.tolist()).rank()
    for v in nullspace(m).vectors():
        assert not any(m @ v)


@given(matrices(), st.data())
@settings(max_examples=80, deadline=None)
def test_solve_is_exact(m, data):
    b = tuple(data.draw(small) for _ in range(m.rows))
    x = solve(m, b)
    if x is not None:
        assert m @ x == b
    else:
        assert rank(Matrix([list(r) + [bi] for r, bi in zip(m.entries, b)])) == rank(m) + 1


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_span_contains_generators(m):
    s = span_of(m.entries)
    assert all(s.contains(v) for v in m.entries)
    assert s.dim == rank(m)
