"""Elimination and solving for bihomogeneous systems in P^n x P^m.

Exact Macaulay-matrix linear algebra over Q or F_p finds admissible
bidegrees, builds multiplication maps on the quotient there, and turns them
into a Gröbner basis of the projection (FGLM) or into points (eigenvalues).
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .kernelalg import DenseMatrix, FieldSpec, inverse, kernel_basis, rank, rref, solve
from .bipoly import BiDegree, BiPoly, BiRing, BiSystem, load_system, parse_poly, specialize_x
from .macaulay import (build_macaulay, hilbert_function, hilbert_function_with, hilbert_table,
                       quotient_basis, colon_piece_equal)
from .admissible import (AdmissibleCertificate, find_admissible, is_admissible, koszul_bound,
                         macaulay_bound, projection_stab_degree)
from .multmap import MultMapSet, build_mult_maps, mult_map, mult_map_from_gb
from .elimfglm import GroebnerBasis, matrix_fglm, randomized_vector_fglm
from .numeigen import PointSet, charpoly, charpoly_check, eigenvalues, recover_points
from .verify import MembershipReport, verify_exact, verify_numeric
from .gb import MonomialOrder, bigin, buchberger, cor55_report, gb_reduce, standard_monomials
