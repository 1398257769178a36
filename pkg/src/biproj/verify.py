"""Membership of a point in the projection.

xi lies in pi(V(I)) exactly when the specialized ideal I_xi in k[y] fails to
fill its degree-b piece, b = sum b_i - m.  The test is a rank computation on
the Macaulay matrix of the specialized generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .admissible import projection_stab_degree
from .bipoly import BiSystem, normalize_point, specialize_x, y_ring
from .errors import ZeroPoint
from .kernelalg import FieldSpec
from .macaulay import build_macaulay

IN_PROJECTION = "InProjection"
NOT_IN_PROJECTION = "NotInProjection"


@dataclass
class MembershipReport:
    point: list
    b_used: int
    rank: int
    full_rank: int
    verdict: str
    margin: float
    exact: bool

    @property
    def in_projection(self) -> bool:
        return self.verdict == IN_PROJECTION

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, complex):
                return [v.real, v.imag] if v.imag else v.real
            if self.exact:
                return str(v)
            return float(v)

        return {"point": [enc(v) for v in self.point], "b_used": self.b_used, "rank": self.rank,
                "full_rank": self.full_rank, "verdict": self.verdict, "margin": self.margin,
                "exact": self.exact}


def default_b(sys: BiSystem) -> int:
    return max(sum(d.b for d in sys.degrees) - sys.m, 0)


def _specialized_system(sys: BiSystem, xi, field: FieldSpec) -> BiSystem:
    gens = [specialize_x(f, xi, field) for f in sys.generators]
    return BiSystem(y_ring(sys.ring, field), [g for g in gens if not g.is_zero()])


def verify_exact(sys: BiSystem, xi: Sequence, b: int | None = None) -> MembershipReport:
    """Exact rank test over the field of ``sys``; coordinates must lie in that field."""
    F = sys.field
    F.require_exact("verify_exact")
    if all(F(v) == 0 for v in xi):
        raise ZeroPoint("cannot verify the zero vector")
    xi = normalize_point([F(v) for v in xi], F)
    b = default_b(sys) if b is None else max(b, 0)
    spec = _specialized_system(sys, xi, F)
    M = build_macaulay(spec, (0, b))
    full = comb(b + sys.m, sys.m)
    r = M.rank
    verdict = IN_PROJECTION if r < full else NOT_IN_PROJECTION
    return MembershipReport(xi, b, r, full, verdict, float(full - r), True)


def verify_numeric(sys: BiSystem, xi: Sequence, tol: float = 1e-10, b: int | None = None
                   ) -> MembershipReport:
    """Numerical rank test: singular values below ``tol * sigma_max`` are discarded.

    ``margin`` is the smallest relative singular value sigma_min / sigma_max
    (zero when the matrix has fewer rows than columns).
    """
    if sys.field.kind == "Fp":
        raise ValueError("numeric verification needs a system over Q")
    xi = normalize_point([complex(v) if isinstance(v, complex) else float(v) for v in xi])
    b = default_b(sys) if b is None else max(b, 0)
    full = comb(b + sys.m, sys.m)
    ring = y_ring(sys.ring)
    columns = ring.monomials((0, b))
    index = {mon: j for j, mon in enumerate(columns)}
    rows = []
    for f in sys.generators:
        g = _specialize_float(f, xi)
        fb = f.bidegree.b
        if fb > b:
            continue
        for u in ring.monomials((0, b - fb)):
            row = np.zeros(len(columns), dtype=complex)
            for mon, c in g.items():
                row[index[tuple(x + y for x, y in zip(mon, u))]] += c
            rows.append(row)
    if not rows:
        return MembershipReport(list(xi), b, 0, full, IN_PROJECTION, 0.0, False)
    A = np.array(rows)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[0] == 0:
        r, margin = 0, 0.0
    else:
        rel = sv / sv[0]
        r = int(np.sum(rel >= tol))
        margin = float(rel[-1]) if len(sv) == full else 0.0
    verdict = IN_PROJECTION if r < full else NOT_IN_PROJECTION
    return MembershipReport(list(xi), b, r, full, verdict, margin, False)


def _specialize_float(f, xi) -> dict:
    nx = f.ring.n + 1
    out: dict = {}
    for mon, c in f.terms.items():
        t = complex(c)
        for v, e in zip(xi, mon[:nx]):
            if e:
                t *= v**e
        key = (0,) + mon[nx:]
        out[key] = out.get(key, 0) + t
    return out


def verify_point(sys: BiSystem, xi: Sequence, tol: float = 1e-10, b: int | None = None) -> MembershipReport:
    """Exact test when every coordinate is rational (or the field is F_p), numeric otherwise."""
    if sys.field.kind == "Fp" or all(not isinstance(v, (float, complex)) for v in xi):
        return verify_exact(sys, xi, b)
    return verify_numeric(sys, xi, tol, b)


__all__ = ["MembershipReport", "verify_exact", "verify_numeric", "verify_point", "default_b",
           "projection_stab_degree", "IN_PROJECTION", "NOT_IN_PROJECTION"]
