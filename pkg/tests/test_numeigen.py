import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fixtures import FP, Q, intro_system, random_diagonalizable, running, scalar_matrix, to_sympy
from biproj.admissible import is_admissible
from biproj.elimfglm import matrix_fglm
from biproj.kernelalg import DenseMatrix
from biproj.multmap import build_mult_maps
from biproj.numeigen import (PrimeFieldEigenvalues, aberth, charpoly, charpoly_check, eigenvalues,
                             recover_points, squarefree_decomposition)


def _maps(sys, deg):
    return build_mult_maps(sys, is_admissible(sys, deg, h=sys.ring.x(0)))


def test_identity_eigenvalues():
    (ev,) = eigenvalues(DenseMatrix.identity(3, Q))
    assert ev.value == 1 and ev.multiplicity == 3 and ev.exact == 1


def test_empty_matrix():
    assert eigenvalues(DenseMatrix.zeros(0, 0, Q)) == []


def test_complex_pair():
    evs = eigenvalues(scalar_matrix([[0, -1], [1, 0]]))
    assert sorted((round(e.value.imag, 12), e.multiplicity) for e in evs) == [(-1.0, 1), (1.0, 1)]
    assert all(e.exact is None for e in evs)


def test_irrational_eigenvalues():
    evs = eigenvalues(scalar_matrix([[0, 2], [1, 0]]))
    assert sorted(e.value.real for e in evs) == pytest.approx([-2**0.5, 2**0.5], abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_charpoly_matches_sympy(rows):
    cp = charpoly(scalar_matrix(rows))
    expected = list(reversed(sympy.Matrix(rows).charpoly().all_coeffs()))
    assert [sympy.Rational(c.numerator, c.denominator) for c in cp] == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_multiplicities_sum_to_dimension(rows):
    evs = eigenvalues(scalar_matrix(rows))
    assert sum(e.multiplicity for e in evs) == len(rows)


def test_squarefree_decomposition():
    # (x - 1)^2 (x + 2)
    parts = squarefree_decomposition([Fraction(2), Fraction(-3), Fraction(0), Fraction(1)])
    assert sorted((len(p) - 1, m) for p, m in parts) == [(1, 1), (1, 2)]


def test_aberth_against_numpy():
    coeffs = [1.0, -2.0, 0.5, 3.0, -1.0]
    ours = np.sort_complex(np.array(aberth(coeffs)))
    ref = np.sort_complex(np.roots(list(reversed(coeffs))))
    assert np.allclose(ours, ref, atol=1e-10)


def test_prime_field_rejected():
    with pytest.raises(PrimeFieldEigenvalues):
        eigenvalues(DenseMatrix.identity(2, FP))
    with pytest.raises(PrimeFieldEigenvalues):
        recover_points(_maps(running(FP), (2, 2)))


def test_intro_diagonal_points():
    sys = intro_system([[2, 0], [0, 3]])
    pts = recover_points(_maps(sys, (1, 1)))
    got = sorted(p.coords[1].real for p in pts.points)
    assert got == pytest.approx([2.0, 3.0], abs=1e-12)
    assert pts.multiplicity_sum == 2


def test_running_points():
    maps = _maps(running(), (2, 2))
    pts = recover_points(maps, gb=matrix_fglm(maps))
    coords = [tuple(round(c.real, 9) for c in p.coords) for p in pts.points]
    assert coords == [(1.0, 0.0, 2.0), (1.0, 1.0, 1.0)]
    assert all(p.residual < 1e-9 for p in pts.points)
    assert pts.multiplicity_sum == maps.dim == 4


def test_running_single_point_with_multiplicity():
    maps = _maps(running(), (2, 4))
    (p,) = recover_points(maps).points
    assert p.multiplicity == 5
    assert [c.real for c in p.coords] == pytest.approx([1, 1, 1], abs=1e-10)


@pytest.mark.parametrize("seed", [0, 1, 7, 123])
def test_points_do_not_depend_on_seed(seed):
    maps = _maps(running(), (2, 2))
    ref = recover_points(maps, seed=0)
    other = recover_points(maps, seed=seed)
    for p, q in zip(ref.points, other.points):
        assert np.allclose(p.coords, q.coords, atol=1e-10) and p.multiplicity == q.multiplicity


def test_intro_random_matrices_recover_eigenvalues():
    rng = random.Random(9)
    for _ in range(3):
        A, eigs = random_diagonalizable(rng, 4)
        pts = recover_points(_maps(intro_system(A), (1, 1)))
        assert sorted(p.coords[1].real for p in pts.points) == pytest.approx(sorted(eigs), abs=1e-8)


def test_charpoly_check_and_negative_control():
    maps = _maps(running(), (2, 2))
    pts = recover_points(maps)
    assert charpoly_check(maps, [2, -3], pts)
    assert charpoly_check(maps, [1, 1, 5], pts)
    wrong = [(p.chart, p.multiplicity) for p in pts.points]
    wrong[0] = ([wrong[0][0][0] + 0.25, wrong[0][0][1]], wrong[0][1])
    check = charpoly_check(maps, [2, -3], wrong)
    assert not check and check.deviation > 1e-3


def test_charpoly_check_multiplicity_mismatch():
    maps = _maps(running(), (2, 2))
    pts = [(p.chart, 1) for p in recover_points(maps).points]
    assert not charpoly_check(maps, [1, 0], pts)


def test_defective_matrix_multiplicity():
    M = scalar_matrix([[3, 1], [0, 3]])
    (ev,) = eigenvalues(M)
    assert ev.exact == 3 and ev.multiplicity == 2
    assert to_sympy(M).is_diagonalizable() is False
