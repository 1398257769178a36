"""Admissible bidegrees: certification, search and a-priori degree bounds."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from math import comb

from .bipoly import BiDegree, BiPoly, BiSystem
from .errors import DegreeMismatch, NotFoundBelowCap
from .macaulay import hilbert_function, hilbert_function_with

SEEDS_PER_DEGREE = 3


class FieldTooSmall(UserWarning):
    """Random linear forms over a small field are unreliable witnesses."""


class BoundHypothesisWarning(UserWarning):
    """The finiteness hypothesis behind the Macaulay bound was not checked."""


@dataclass(frozen=True)
class AdmissibleCertificate:
    degree: BiDegree
    form: BiPoly
    hf_value: int
    seeds_tried: int

    def to_json(self) -> dict:
        return {"degree": list(self.degree), "form": str(self.form), "hf": self.hf_value,
                "seeds_tried": self.seeds_tried}


def random_linear_form(sys: BiSystem, rng: random.Random) -> BiPoly:
    F = sys.field
    while True:
        h = sys.ring.linear_x([F.random_element(rng) for _ in range(sys.n + 1)])
        if h:
            return h


def is_admissible(sys: BiSystem, deg, h: BiPoly | None = None, seed=0) -> AdmissibleCertificate | None:
    """Certificate that ``deg`` is admissible, or ``None``.

    When ``h`` is omitted, up to three random linear forms drawn from
    ``random.Random(seed)`` are tried; any of them succeeding suffices.
    """
    deg = BiDegree(*deg)
    if sys.field.size < 100:
        warnings.warn(f"field {sys.field} has fewer than 100 elements", FieldTooSmall, stacklevel=2)
    if h is not None and h.bidegree != (1, 0):
        raise DegreeMismatch(f"admissible form must have bidegree (1,0), got {h.bidegree}")
    if deg.a < 0 or deg.b < 0 or not all(d.leq(deg) for d in sys.degrees):
        return None
    hf = hilbert_function(sys, deg)
    if hf != hilbert_function(sys, deg + (1, 0)):
        return None
    if h is not None:
        if hilbert_function_with(sys, h, deg) == 0:
            return AdmissibleCertificate(deg, h, hf, 1)
        return None
    rng = random.Random(seed)
    for tried in range(1, SEEDS_PER_DEGREE + 1):
        form = random_linear_form(sys, rng)
        if hilbert_function_with(sys, form, deg) == 0:
            return AdmissibleCertificate(deg, form, hf, tried)
    return None


def find_admissible(sys: BiSystem, cap=None, seed=0, start=None, h: BiPoly | None = None,
                    prefer: BiPoly | None = None) -> AdmissibleCertificate:
    """First certified bidegree, scanning b outer and a inner from ``start``.

    ``start`` defaults to the componentwise maximum of the generator degrees;
    ``cap`` defaults to :func:`koszul_bound`.  A fixed ``h`` is the only form
    tried; ``prefer`` is tried first at each degree, random forms after it.
    """
    lo = sys.max_degree()
    if start is not None:
        lo = BiDegree(max(lo.a, start[0]), max(lo.b, start[1]))
    cap = BiDegree(*(cap if cap is not None else koszul_bound(sys)))
    cap = BiDegree(max(cap.a, lo.a), max(cap.b, lo.b))
    for b in range(lo.b, cap.b + 1):
        for a in range(lo.a, cap.a + 1):
            cert = None
            if prefer is not None and h is None:
                cert = is_admissible(sys, (a, b), h=prefer)
            if cert is None:
                cert = is_admissible(sys, (a, b), h=h, seed=seed)
            if cert is not None:
                return cert
    raise NotFoundBelowCap(f"no admissible bidegree in [{tuple(lo)}, {tuple(cap)}]")


def _clamp(deg: BiDegree, sys: BiSystem) -> BiDegree:
    top = sys.max_degree()
    return BiDegree(max(deg.a, top.a, 0), max(deg.b, top.b, 0))


def macaulay_bound(sys: BiSystem, warn: bool = True) -> BiDegree:
    """Sum of generator bidegrees minus (n, m).

    Only proven admissible when V(I) is finite, which is not checked here.
    """
    sa = sum(d.a for d in sys.degrees)
    sb = sum(d.b for d in sys.degrees)
    if warn:
        warnings.warn("Macaulay bound assumes V(I) is finite; not verified", BoundHypothesisWarning,
                      stacklevel=2)
    return _clamp(BiDegree(sa - sys.n, sb - sys.m), sys)


def n_y(ell: int, m: int) -> int:
    """Number of degree-``ell`` monomials in y_0..y_m (zero for negative ell)."""
    return comb(ell + m, m) if ell >= 0 else 0


def koszul_bound(sys: BiSystem) -> BiDegree:
    """Admissible bidegree valid whenever the projection is finite."""
    degs = sys.degrees
    if not degs:
        return BiDegree(0, 0)
    b = max(sum(d.b for d in degs) - sys.m, max(d.b for d in degs))
    a = sum(d.a * n_y(b - d.b, sys.m) for d in degs) - sys.n
    return BiDegree(max(a, max(d.a for d in degs)), b)


def projection_stab_degree(sys: BiSystem) -> int:
    degs = sys.degrees
    if not degs:
        return 0
    return max(sum(d.b for d in degs) - sys.m, max(d.b for d in degs), 0)
