"""Shared systems and helpers for the test-suite."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy
from sympy.polys.matrices import DomainMatrix

from biproj.bipoly import BiRing, BiSystem
from biproj.kernelalg import DenseMatrix, FieldSpec

Q = FieldSpec.rationals()
FP = FieldSpec.prime()

RUNNING = [
    "2*x0 - x1 - x2",
    "y0*y2 - y1*y2 - y2^2",
    "x1*y2 - x2*y2",
    "y0^2 - y1^2 - 2*y1*y2 - y2^2",
    "x1*y0 - x1*y1 - x2*y2",
    "x1^2 - x1*x2",
    "x1*y1^2 - x2*y1^2",
]

# reference basis order and matrices at (2,2) with h = x0
REF_BASIS_22 = ["x0^2*y0^2", "x0^2*y0*y1", "x0^2*y0*y2", "x0^2*y1^2"]
REF_MZ1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0]]
REF_MZ2 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, -1, 2]]


def running(field: FieldSpec = Q) -> BiSystem:
    return BiSystem.from_strings(2, 2, RUNNING, field)


def intro_system(A, field: FieldSpec = Q) -> BiSystem:
    """(x0*A - x1*Id) y = 0 for a square matrix A."""
    N = len(A)
    ring = BiRing(1, N - 1, field)
    gens = []
    for i in range(N):
        f = ring.zero()
        for j in range(N):
            if A[i][j]:
                f = f + ring.x(0) * ring.y(j) * field(A[i][j])
        f = f - ring.x(1) * ring.y(i)
        gens.append(f)
    return BiSystem(ring, gens)


def random_diagonalizable(rng: random.Random, size: int = 5, eig_range=(-6, 6)) -> list[list[Fraction]]:
    """P diag(d) P^-1 with distinct integer eigenvalues and a random rational P."""
    eigs = rng.sample(range(eig_range[0], eig_range[1] + 1), size)
    while True:
        P = sympy.Matrix(size, size, lambda i, j: rng.randint(-3, 3))
        if P.det() != 0:
            break
    A = P * sympy.diag(*eigs) * P.inv()
    return [[Fraction(int(sympy.fraction(A[i, j])[0]), int(sympy.fraction(A[i, j])[1])) for j in range(size)]
            for i in range(size)], eigs


def random_11_pair(rng: random.Random, field: FieldSpec = FP) -> BiSystem:
    """Two random (1,1) forms in P^1 x P^1; zero-dimensional for generic coefficients."""
    ring = BiRing(1, 1, field)
    return BiSystem(ring, [ring.random_form((1, 1), rng) for _ in range(2)])


def random_small_system(rng: random.Random, field: FieldSpec = Q) -> BiSystem:
    """A few random forms in P^1 x P^1 or P^2 x P^1 with small bidegrees."""
    n = rng.choice([1, 1, 2])
    ring = BiRing(n, 1, field)
    degs = [(1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 0)]
    count = rng.randint(1, n + 2)
    gens = [ring.random_form(rng.choice(degs), rng, bound=3) for _ in range(count)]
    return BiSystem(ring, [g for g in gens if g])


def to_sympy(M: DenseMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) if isinstance(a, Fraction) else a
                          for a in row] for row in M.rows])


def qq_rank(M: sympy.Matrix) -> int:
    return DomainMatrix.from_Matrix(M).convert_to(sympy.QQ).rank()


def krylov_minpoly(A: sympy.Matrix) -> list:
    """Monic minimal polynomial (ascending coefficients) from the first dependency among I, A, A^2, ..."""
    N = A.shape[0]
    powers = [sympy.eye(N)]
    while True:
        stack = sympy.Matrix.hstack(*[P.reshape(N * N, 1) for P in powers])
        null = DomainMatrix.from_Matrix(stack).convert_to(sympy.QQ).nullspace().to_Matrix()
        if null.rows:
            v = null.row(0)
            return [v[i] / v[-1] for i in range(len(powers))]
        powers.append(powers[-1] * A)


def scalar_matrix(rows, field: FieldSpec = Q) -> DenseMatrix:
    return DenseMatrix([[field(a) for a in row] for row in rows], field)
