from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from aralg.linalg import (FieldSpec, ShapeError, Subspace, hstack, kernel_basis, pullback_pair, rational_eigenvalues,
                          solve_left, vstack)

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)

small = st.integers(-4, 4)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(rows):
    assert Q.matrix(rows).rank() == sympy.Matrix(rows).rank()


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_kernel_is_annihilated(rows):
    m = Q.matrix(rows)
    k = kernel_basis(m)
    assert k.dim + m.rank() == m.rows
    assert (k.basis @ m).is_zero() if k.dim else True


@given(int_matrices(4, 4), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_left_on_consistent_systems(rows, coeffs):
    a = Q.matrix(rows)
    x = Q.matrix([coeffs[:a.rows]])
    b = x @ a
    sol = solve_left(a, b)
    assert sol is not None and sol @ a == b


def test_solve_left_inconsistent():
    a = Q.matrix([[1, 0], [2, 0]])
    assert solve_left(a, Q.matrix([[0, 1]])) is None


def test_shape_errors():
    with pytest.raises(ShapeError):
        solve_left(Q.matrix([[1, 2]]), Q.matrix([[1, 2, 3]]))
    with pytest.raises(ShapeError):
        Q.matrix([[1, 2]]) @ Q.matrix([[1, 2]])


@given(int_matrices(3, 4), int_matrices(3, 4))
@settings(max_examples=50, deadline=None)
def test_grassmann_formula(r1, r2):
    n = min(len(r1[0]), len(r2[0]))
    u = Subspace.span(Q.matrix([r[:n] for r in r1]))
    w = Subspace.span(Q.matrix([r[:n] for r in r2]))
    total = Subspace.span(vstack([u.basis, w.basis], cols=n, field=Q))
    assert total.dim == u.dim + w.dim - u.intersect(w).dim
    assert u.intersect(w).is_subspace_of(u)


def test_exact_rationals_no_rounding():
    m = Q.matrix([[Fraction(1, 3), 1], [1, 3]])
    assert m.rank() == 1
    h = Q.matrix([[1, Fraction(1, 7)], [0, 1]])
    assert h @ h.inverse() == Q.identity(2)


def test_prime_field_arithmetic():
    m = F5.matrix([[1, 2], [3, 1]])  # det = -5 = 0 mod 5
    assert m.rank() == 1
    assert Q.matrix([[1, 2], [3, 1]]).rank() == 2
    assert F5.parse_scalar("7") == F5.scalar(2)
    with pytest.raises(ValueError):
        FieldSpec.prime(6)


def test_field_descriptors_round_trip():
    for f in (Q, F5):
        assert FieldSpec.parse(f.descriptor) == f


def test_pullback_pair():
    f = Q.matrix([[1, 0], [0, 1]])
    g = Q.matrix([[1, 1]])
    sub, pu, pv = pullback_pair(f, g)
    assert sub.dim == 1 and pu @ f == pv @ g


def test_rational_eigenvalues():
    m = Q.matrix([[2, 1], [0, Fraction(1, 2)]])
    assert sorted(rational_eigenvalues(m)) == sorted([Q.scalar(2), Q.scalar(Fraction(1, 2))])
    rot = Q.matrix([[0, -1], [1, 0]])
    assert rational_eigenvalues(rot) == []


def test_hstack_vstack_shapes():
    a = Q.matrix([[1, 2]])
    assert hstack([a, a]).shape == (1, 4)
    assert vstack([a, a]).shape == (2, 2)
