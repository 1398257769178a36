import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fixtures import FP, Q, qq_rank, scalar_matrix, to_sympy
from biproj.errors import FieldError, InexactFieldError, SingularMatrix
from biproj.kernelalg import (DenseMatrix, FieldSpec, det, inverse, kernel_basis, rank, rref, solve,
                              to_approx)


def small_matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


# -- fields ---------------------------------------------------------------

def test_prime_modulus_checked():
    with pytest.raises(ValueError):
        FieldSpec.prime(65520)
    with pytest.raises(ValueError):
        FieldSpec.prime(2**31 + 11)
    assert FieldSpec.prime(2).p == 2


def test_scalar_normalization():
    assert Q(Fraction(4, -6)) == Fraction(-2, 3)
    assert Q(Fraction(4, -6)).denominator == 3
    assert FP(-1) == 65520
    assert FP(Fraction(1, 2)) * 2 % 65521 == 1
    assert FP.inv(3) * 3 % 65521 == 1


def test_field_json_roundtrip():
    for F in (Q, FP, FieldSpec.prime(101)):
        assert FieldSpec.from_json(F.to_json()) == F


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        FP.inv(0)


# -- rref -----------------------------------------------------------------

def test_rref_identity():
    R, piv, r = rref(DenseMatrix.identity(2, Q))
    assert R == DenseMatrix.identity(2, Q) and piv == [0, 1] and r == 2


def test_rref_zero():
    Z = DenseMatrix.zeros(3, 4, Q)
    R, piv, r = rref(Z)
    assert R == Z and piv == [] and r == 0


def test_rref_rank_one():
    R, piv, r = rref(scalar_matrix([[1, 2], [2, 4]]))
    assert R.tolist() == [[1, 2], [0, 0]] and piv == [0] and r == 1


def test_rref_rejects_floats():
    M = DenseMatrix([[0.5, 1.0]], FieldSpec.approx())
    with pytest.raises(InexactFieldError):
        rref(M)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(rows):
    M = scalar_matrix(rows)
    assert rank(M) == qq_rank(sympy.Matrix(rows))


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([Q, FP, FieldSpec.prime(7)]))
def test_rank_of_transpose(rows, F):
    M = scalar_matrix(rows, F)
    assert rank(M) == rank(M.transpose())


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([Q, FP]))
def test_rref_idempotent(rows, F):
    R, piv, r = rref(scalar_matrix(rows, F))
    R2, piv2, r2 = rref(R)
    assert R2 == R and piv2 == piv and r2 == r
    assert piv == sorted(set(piv)) and r == len(piv)


@settings(max_examples=40, deadline=None)
@given(small_matrices(), st.sampled_from([Q, FP]))
def test_rref_preserves_row_space(rows, F):
    M = scalar_matrix(rows, F)
    R, _, r = rref(M)
    stacked = DenseMatrix(M.rows + R.rows, F)
    assert rank(stacked) == r


# -- kernel ---------------------------------------------------------------

def test_kernel_identity_empty():
    assert kernel_basis(DenseMatrix.identity(3, Q)) == []


def test_kernel_of_zero():
    K = kernel_basis(DenseMatrix.zeros(2, 3, Q))
    assert sorted(map(tuple, K)) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_kernel_single_row():
    M = scalar_matrix([[1, 1, 0]])
    K = kernel_basis(M)
    assert len(K) == 2
    assert all(all(a == 0 for a in M.apply(v)) for v in K)


@settings(max_examples=50, deadline=None)
@given(small_matrices(), st.sampled_from([Q, FP]))
def test_kernel_dimension_and_vanishing(rows, F):
    M = scalar_matrix(rows, F)
    K = kernel_basis(M)
    assert len(K) == M.ncols - rank(M)
    assert all(all(a == 0 for a in M.apply(v)) for v in K)
    if K:
        assert rank(DenseMatrix(K, F)) == len(K)


# -- inverse, solve, det --------------------------------------------------

def test_inverse_identity():
    assert inverse(DenseMatrix.identity(4, Q)) == DenseMatrix.identity(4, Q)


def test_inverse_diagonal():
    assert inverse(scalar_matrix([[2, 0], [0, 4]])).tolist() == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]


def test_inverse_random_prime_field():
    rng = random.Random(1)
    while True:
        M = DenseMatrix([[FP.random_element(rng) for _ in range(5)] for _ in range(5)], FP)
        if det(M) != 0:
            break
    assert M @ inverse(M) == DenseMatrix.identity(5, FP)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        inverse(scalar_matrix([[1, 2], [2, 4]]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)),
       st.sampled_from([Q, FP]))
def test_inverse_involution(rows, F):
    M = scalar_matrix(rows, F)
    if rank(M) < M.nrows:
        return
    assert inverse(inverse(M)) == M
    assert M @ inverse(M) == DenseMatrix.identity(M.nrows, F)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(scalar_matrix(rows)) == sympy.Matrix(rows).det()


def test_solve():
    M = scalar_matrix([[2, 1], [1, 3]])
    x = solve(M, [Fraction(3), Fraction(5)])
    assert M.apply(x) == [3, 5]


# -- floating conversion --------------------------------------------------

def test_to_approx_values():
    assert to_approx(scalar_matrix([[Fraction(1, 2)]])).tolist() == [[0.5]]
    assert to_approx(scalar_matrix([[Fraction(1, 3)]])).tolist() == [[0.3333333333333333]]


def test_to_approx_integer_matrix_unchanged():
    rows = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, -1, 2]]
    A = to_approx(scalar_matrix(rows))
    assert np.array_equal(np.array(A.tolist(), dtype=float), np.array(rows, dtype=float))


def test_to_approx_rejects_prime_field():
    with pytest.raises(FieldError):
        to_approx(scalar_matrix([[1]], FP))


def test_matrix_product_matches_sympy():
    rng = random.Random(4)
    A = scalar_matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)] for _ in range(4)])
    B = scalar_matrix([[rng.randint(-9, 9) for _ in range(2)] for _ in range(3)])
    assert to_sympy(A @ B) == to_sympy(A) * to_sympy(B)
