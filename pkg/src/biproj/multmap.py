"""Multiplication maps on (R/I)_{a,b} at an admissible bidegree.

For g of bidegree (k, 0) the bar map sends [f] in (R/I)_{a,b} to [g f] in
(R/I)_{a+k,b}.  With h admissible the bar map of h^k is invertible and
``M_{g/h^k} = bar(h^k)^{-1} bar(g)`` is an endomorphism of (R/I)_{a,b}.
Matrices act on coordinate columns: column j is the image of basis element j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .admissible import AdmissibleCertificate
from .bipoly import BiDegree, BiPoly, BiSystem, Monomial
from .errors import BasisMismatch, CommutationFailure, DegreeMismatch, SingularBar, SingularMatrix
from .kernelalg import DenseMatrix, FieldSpec, inverse
from .macaulay import QuotientBasis, normal_form, quotient_basis


@dataclass
class BarMap:
    g: BiPoly
    source: QuotientBasis
    target: QuotientBasis
    matrix: DenseMatrix


def bar_map(sys: BiSystem, g: BiPoly, src: QuotientBasis, tgt: QuotientBasis) -> BarMap:
    k, zero = g.bidegree if g else (tgt.degree.a - src.degree.a, 0)
    if zero != 0 or tgt.degree != src.degree + (k, 0):
        raise DegreeMismatch(f"cannot map {tuple(src.degree)} to {tuple(tgt.degree)} by a form of "
                             f"bidegree {(k, zero)}")
    cols = [normal_form(g.shift(u), tgt) for u in src.basis]
    return BarMap(g, src, tgt, DenseMatrix.from_columns(cols, sys.field, len(tgt.basis)))


def _bar_inverse(sys: BiSystem, h: BiPoly, deg: BiDegree, k: int) -> DenseMatrix:
    key = ("bar_inverse", h, deg, k)
    if key not in sys._cache:
        src = quotient_basis(sys, deg)
        tgt = quotient_basis(sys, deg + (k, 0))
        B = bar_map(sys, h**k, src, tgt).matrix
        try:
            sys._cache[key] = inverse(B)
        except (SingularMatrix, ValueError):
            raise SingularBar(f"bar map of ({h})^{k} at {tuple(deg)} is not invertible: "
                              f"{h} is not admissible there") from None
    return sys._cache[key]


def mult_map(sys: BiSystem, cert: AdmissibleCertificate, g: BiPoly) -> DenseMatrix:
    """Matrix of multiplication by g / h^k on the certificate basis."""
    deg = cert.degree
    src = quotient_basis(sys, deg)
    if g.is_zero():
        return DenseMatrix.zeros(len(src), len(src), sys.field)
    k, zero = g.bidegree
    if zero != 0:
        raise DegreeMismatch(f"multiplier must have bidegree (k, 0), got {g.bidegree}")
    tgt = quotient_basis(sys, deg + (k, 0))
    return _bar_inverse(sys, cert.form, deg, k) @ bar_map(sys, g, src, tgt).matrix


def chart_indices(h: BiPoly) -> tuple[int, list[int]]:
    """Index ``j0`` of the first x-variable occurring in ``h`` and the complementary indices."""
    n = h.ring.n
    coeffs = linear_coefficients(h)
    j0 = next(i for i, c in enumerate(coeffs) if c)
    return j0, [i for i in range(n + 1) if i != j0]


def linear_coefficients(h: BiPoly) -> list:
    n = h.ring.n
    F = h.field
    out = [F.zero] * (n + 1)
    for mon, c in h.terms.items():
        out[mon.index(1)] = c
    return out


@dataclass
class MultMapSet:
    """Commuting matrices of z_i = x_i / h for the chart indices ``charts``."""

    degree: BiDegree
    h: BiPoly
    basis: QuotientBasis
    charts: list[int]
    maps: list[DenseMatrix]
    field: FieldSpec = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [f"z{i}" for i in self.charts]

    def lift(self, z) -> list:
        """Projective point with h = 1 from chart values z_i (plain arithmetic)."""
        coeffs = linear_coefficients(self.h)
        j0 = next(i for i, c in enumerate(coeffs) if c)
        x = [0] * (self.h.ring.n + 1)
        rest = 1
        for i, v in zip(self.charts, z):
            x[i] = v
            rest = rest - _plain(coeffs[i]) * v
        x[j0] = rest / _plain(coeffs[j0])
        return x

    def to_json(self) -> dict:
        ring = self.h.ring
        return {"degree": list(self.degree), "h": str(self.h), "charts": self.names,
                "basis": [ring.mon_str(u) for u in self.basis.basis],
                "maps": [[[_json_scalar(a) for a in row] for row in M.rows] for M in self.maps]}


def _plain(c):
    return c


def _json_scalar(a):
    from fractions import Fraction
    if isinstance(a, Fraction):
        return str(a) if a.denominator != 1 else a.numerator
    return a


def build_mult_maps(sys: BiSystem, cert: AdmissibleCertificate) -> MultMapSet:
    basis = quotient_basis(sys, cert.degree)
    _, charts = chart_indices(cert.form)
    maps = [mult_map(sys, cert, sys.ring.x(i)) for i in charts]
    for (i, A), (j, B) in combinations(enumerate(maps), 2):
        if A @ B != B @ A:
            raise CommutationFailure(f"maps z{charts[i]} and z{charts[j]} do not commute")
    return MultMapSet(cert.degree, cert.form, basis, charts, maps, sys.field)


def mult_map_from_gb(gb, cert: AdmissibleCertificate, g: BiPoly) -> DenseMatrix:
    """Same matrix as :func:`mult_map`, with normal forms from a Gröbner basis.

    ``gb`` must be a :class:`biproj.gb.GroebnerBasisBigraded` of the same
    ideal computed in the global order, so that its standard monomials at the
    certificate degree coincide with the quotient basis.
    """
    from .gb import standard_monomials, gb_reduce

    sys = gb.system
    deg = cert.degree
    basis = quotient_basis(sys, deg).basis
    if standard_monomials(gb, deg) != basis:
        raise BasisMismatch(f"Gröbner basis standard monomials at {tuple(deg)} differ from the certificate basis")
    F = sys.field
    k = g.bidegree.a if g else 0
    up = deg + (k, 0)
    target = standard_monomials(gb, up)
    pos = {u: i for i, u in enumerate(target)}

    def bar(q: BiPoly) -> DenseMatrix:
        cols = []
        for u in basis:
            r = gb_reduce(q.shift(u), gb)
            col = [F.zero] * len(target)
            for mon, c in r.terms.items():
                if mon not in pos:
                    raise BasisMismatch(f"remainder monomial {mon} is not standard")
                col[pos[mon]] = c
            cols.append(col)
        return DenseMatrix.from_columns(cols, F, len(target))

    Bh = bar(cert.form ** k)
    try:
        Bh_inv = inverse(Bh)
    except SingularMatrix:
        raise SingularBar(f"{cert.form} is not admissible at {tuple(deg)}") from None
    return Bh_inv @ bar(g)
