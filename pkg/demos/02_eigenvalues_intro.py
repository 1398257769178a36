"""Eigenvalues of a matrix as the projection of a bilinear system.

The system (x0*A - x1*Id) y = 0 has a solution with y != 0 exactly when
[x0:x1] = [1:lambda] for an eigenvalue lambda of A.  Its multiplication map
at bidegree (1,1) is A itself (transposed, in the order the quotient basis
is listed), so the whole pipeline reduces to an eigenvalue problem.
"""

import random

import numpy as np

from biproj.admissible import find_admissible
from biproj.bipoly import BiRing, BiSystem
from biproj.elimfglm import matrix_fglm
from biproj.kernelalg import FieldSpec
from biproj.multmap import build_mult_maps
from biproj.numeigen import recover_points
from biproj.verify import verify_numeric

rng = random.Random(3)
N = 4
A = [[rng.randint(-3, 3) for _ in range(N)] for _ in range(N)]
print("A =")
for row in A:
    print("   ", row)

Q = FieldSpec.rationals()
ring = BiRing(1, N - 1, Q)
gens = []
for i in range(N):
    f = -ring.x(1) * ring.y(i)
    for j in range(N):
        if A[i][j]:
            f = f + ring.x(0) * ring.y(j) * Q(A[i][j])
    gens.append(f)
sys = BiSystem(ring, gens)

cert = find_admissible(sys, prefer=ring.x(0))  # z1 = x1/x0 is then lambda itself
maps = build_mult_maps(sys, cert)
print("\nadmissible at", tuple(cert.degree), "with h =", cert.form)

gb = matrix_fglm(maps)
print("eliminant:", gb.strings()[0])
print("charpoly of A (numpy, highest first):", np.round(np.poly(np.array(A, dtype=float)), 10) + 0.0)

pts = recover_points(maps, gb=gb)
ours = sorted((complex(p.coords[1] / p.coords[0]) for p in pts.points), key=lambda z: (z.real, z.imag))
ref = sorted(np.linalg.eigvals(np.array(A, dtype=float)), key=lambda z: (z.real, z.imag))
print("\nlambda from the projection   numpy eigvals")
for a, b in zip(ours, ref):
    print(f"  {a:.10f}   {complex(b):.10f}")

for p in pts.points:
    print("verify", [complex(c) for c in p.coords], "->",
          verify_numeric(sys, p.coords, tol=1e-8).verdict)
