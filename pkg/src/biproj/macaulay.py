"""Degree-(a,b) pieces of a bihomogeneous ideal.

The Macaulay matrix at (a,b) has one row per product u*f_i, u a monomial of
the complementary bidegree, and one column per monomial of R_{a,b} (in the
global decreasing order).  Its RREF gives the Hilbert function, the quotient
basis (non-pivot columns) and normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .bipoly import BiDegree, BiPoly, BiSystem, Monomial
from .errors import DegreeMismatch, DegreeTooLarge
from .kernelalg import DenseMatrix, reduce_vector, sparse_rref


@dataclass
class MacaulayMatrix:
    system: BiSystem
    degree: BiDegree
    columns: list[Monomial]
    rows: list[tuple[int, Monomial]]
    sparse_rows: list[dict] = field(repr=False)

    @cached_property
    def col_index(self) -> dict[Monomial, int]:
        return {mon: j for j, mon in enumerate(self.columns)}

    @cached_property
    def pivot_rows(self) -> dict[int, dict]:
        """RREF as ``{pivot column: sparse row}``; computed once."""
        return sparse_rref(self.sparse_rows, self.system.field)

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    @property
    def pivots(self) -> list[int]:
        return list(self.pivot_rows)

    @property
    def hilbert_value(self) -> int:
        return len(self.columns) - self.rank

    @property
    def coeffs(self) -> DenseMatrix:
        F = self.system.field
        dense = []
        for r in self.sparse_rows:
            row = [F.zero] * len(self.columns)
            for j, c in r.items():
                row[j] = c
            dense.append(row)
        return DenseMatrix(dense, F, len(self.columns))

    def vector(self, p: BiPoly) -> dict:
        idx = self.col_index
        try:
            return {idx[mon]: c for mon, c in p.terms.items()}
        except KeyError:
            raise DegreeMismatch(f"polynomial has bidegree {p.bidegree}, expected {self.degree}") from None

    def contains(self, p: BiPoly) -> bool:
        """Membership of ``p`` in I_{a,b}."""
        return not reduce_vector(self.vector(p), self.pivot_rows, self.system.field)


def build_macaulay(sys: BiSystem, deg) -> MacaulayMatrix:
    """Macaulay matrix of ``sys`` at ``deg``; cached on the system."""
    deg = BiDegree(*deg)
    key = ("macaulay", deg)
    cached = sys._cache.get(key)
    if cached is not None:
        return cached
    sys.field.require_exact("build_macaulay")
    ring = sys.ring
    columns = ring.monomials(deg)
    index = {mon: j for j, mon in enumerate(columns)}
    rows, sparse = [], []
    for i, f in enumerate(sys.generators):
        comp = deg - f.bidegree
        for u in ring.monomials(comp):
            rows.append((i, u))
            sparse.append({index[tuple(a + b for a, b in zip(mon, u))]: c for mon, c in f.terms.items()})
    M = MacaulayMatrix(sys, deg, columns, rows, sparse)
    M.__dict__["col_index"] = index
    sys._cache[key] = M
    return M


def hilbert_function(sys: BiSystem, deg) -> int:
    a, b = deg
    if a < 0 or b < 0:
        return 0
    return build_macaulay(sys, deg).hilbert_value


def hilbert_function_with(sys: BiSystem, extra: BiPoly, deg) -> int:
    """HF of R/(I, extra) at ``deg``."""
    if extra.is_zero():
        raise ValueError("extra generator must be nonzero")
    if not extra.bidegree.leq(deg):
        raise DegreeTooLarge(f"extra generator of bidegree {extra.bidegree} exceeds {tuple(deg)}")
    return hilbert_function(sys.with_generator(extra), deg)


def hilbert_table(sys: BiSystem, amax: int, bmax: int) -> list[list[int]]:
    return [[hilbert_function(sys, (a, b)) for b in range(bmax + 1)] for a in range(amax + 1)]


@dataclass
class QuotientBasis:
    degree: BiDegree
    basis: list[Monomial]
    macaulay: MacaulayMatrix = field(repr=False)

    def __len__(self):
        return len(self.basis)

    @cached_property
    def basis_index(self) -> dict[int, int]:
        idx = self.macaulay.col_index
        return {idx[mon]: k for k, mon in enumerate(self.basis)}


def quotient_basis(sys: BiSystem, deg) -> QuotientBasis:
    """Monomials of the non-pivot columns: a basis of (R/I)_{a,b}."""
    M = build_macaulay(sys, deg)
    piv = M.pivot_rows
    return QuotientBasis(M.degree, [mon for j, mon in enumerate(M.columns) if j not in piv], M)


def normal_form(p: BiPoly, Q: QuotientBasis) -> list:
    """Coordinates of p mod I_{a,b} in the quotient basis ``Q``."""
    M = Q.macaulay
    F = M.system.field
    out = [F.zero] * len(Q.basis)
    if p.is_zero():
        return out
    if p.bidegree != Q.degree:
        raise DegreeMismatch(f"polynomial has bidegree {p.bidegree}, basis lives in {Q.degree}")
    v = reduce_vector(M.vector(p), M.pivot_rows, F)
    pos = Q.basis_index
    for j, c in v.items():
        out[pos[j]] = F(c)
    return out


def colon_piece_equal(sys: BiSystem, g: BiPoly, deg) -> bool:
    """Whether (I : g)_{a,b} = I_{a,b} for g of bidegree (k, 0).

    Uses the exact sequence 0 -> (R/(I:g))_{a,b} -> (R/I)_{a+k,b} ->
    (R/(I,g))_{a+k,b} -> 0, so only three Hilbert function values are needed.
    """
    k, zero = g.bidegree
    if zero != 0:
        raise DegreeMismatch(f"g must have bidegree (k, 0), got {g.bidegree}")
    deg = BiDegree(*deg)
    up = deg + (k, 0)
    hf_colon = hilbert_function(sys, up) - hilbert_function_with(sys, g, up)
    return hf_colon == hilbert_function(sys, deg)
