"""Numerical recovery of the projected points from multiplication matrices.

The eigenvalues of M_{g/h^k} are the values g/h^k at the points of the
(degree-b) projection, and each appears with the length of the localized
module as exponent in the characteristic polynomial.  We therefore:

1. compute the characteristic polynomial exactly over Q (Faddeev-LeVerrier);
2. split it into square-free factors exactly (Yun), which fixes the
   multiplicities without any numerical clustering;
3. find the roots of each factor from the companion matrix, polished with
   Aberth iterations;
4. read the coordinates of each point from the invariant subspace of a random
   combination of the maps.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import ClusterAmbiguity, FieldError
from .kernelalg import DenseMatrix, FieldSpec, kernel_basis

DEFAULT_TOL = 1e-8


class PrimeFieldEigenvalues(FieldError):
    """Eigenvalues over a prime field have no numerical meaning."""


def _require_rational(M: DenseMatrix):
    if M.field.kind == "Fp":
        raise PrimeFieldEigenvalues("eigenvalue recovery needs a matrix over Q, got " + str(M.field))


# ---------------------------------------------------------------------------
# univariate polynomials over Q, coefficient lists in ascending degree

def charpoly(M: DenseMatrix) -> list[Fraction]:
    """Characteristic polynomial det(lambda I - M), ascending coefficients, monic."""
    _require_rational(M)
    n = M.nrows
    A = M if M.field.kind == "Q" else None
    if A is None:
        raise FieldError("exact characteristic polynomial needs rational entries")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    I = DenseMatrix.identity(n, M.field)
    Mk = DenseMatrix.zeros(n, n, M.field)
    for k in range(1, n + 1):
        Mk = A @ Mk + I.scale(coeffs[n - k + 1])
        AM = A @ Mk
        coeffs[n - k] = -sum(AM.rows[i][i] for i in range(n)) / k
    return coeffs


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _monic(p: list) -> list:
    p = _trim(p)
    return [c / p[-1] for c in p] if p else p


def _divmod(p: list, q: list) -> tuple[list, list]:
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    r = list(p)
    while len(r) >= len(q) and r:
        c = r[-1] / q[-1]
        s = len(r) - len(q)
        quot[s] = c
        for i, b in enumerate(q):
            r[s + i] -= c * b
        r = _trim(r)
    return quot, r


def _gcd(p: list, q: list) -> list:
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _divmod(p, q)[1]
    return _monic(p)


def _deriv(p: list) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def squarefree_decomposition(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm: [(a_i, i)] with p = prod a_i^i, a_i square-free and coprime."""
    p = _monic(p)
    out = []
    if len(p) <= 1:
        return out
    a = _gcd(p, _deriv(p))
    b = _divmod(p, a)[0]
    c = _divmod(_deriv(p), a)[0]
    d = [x - y for x, y in _pad(c, _deriv(b))]
    i = 1
    while len(_trim(b)) > 1:
        a = _gcd(b, d)
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        if len(a) > 1:
            out.append((a, i))
        d = [x - y for x, y in _pad(c, _deriv(b))]
        i += 1
    return out


def _pad(p, q):
    k = max(len(p), len(q))
    return zip(list(p) + [0] * (k - len(p)), list(q) + [0] * (k - len(q)))


def _peval(p: Sequence, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def aberth(p: Sequence, init: Sequence[complex] | None = None, maxiter: int = 200,
           tol: float = 1e-15) -> np.ndarray:
    """Simultaneous refinement of all roots of ``p`` (ascending float/complex coefficients)."""
    coeffs = np.asarray([complex(c) for c in p])
    deg = len(coeffs) - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    desc = coeffs[::-1]
    dcoef = np.polyder(desc)
    z = np.asarray(init if init is not None else np.roots(desc), dtype=complex)
    for _ in range(maxiter):
        pv = np.polyval(desc, z)
        dv = np.polyval(dcoef, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dv != 0, pv / dv, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1, np.abs(z))):
            break
    return z


def _rational_roots(p: list, approx: np.ndarray, max_den: int = 10**6) -> dict[int, Fraction]:
    """Roots among ``approx`` that are exactly rational, by index."""
    out = {}
    for k, r in enumerate(approx):
        if abs(r.imag) > 1e-6 * max(1, abs(r)):
            continue
        q = Fraction(r.real).limit_denominator(max_den)
        if _peval(p, q) == 0:
            out[k] = q
    return out


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    multiplicity: int
    exact: Fraction | None = None

    def __iter__(self):  # unpack as (value, multiplicity)
        return iter((self.value, self.multiplicity))


def eigenvalues(M: DenseMatrix, tol: float = DEFAULT_TOL) -> list[Eigenvalue]:
    """Eigenvalues with algebraic multiplicities; rational eigenvalues are exact."""
    _require_rational(M)
    if M.nrows == 0:
        return []
    cp = charpoly(M)
    found: list[Eigenvalue] = []
    for factor, mult in squarefree_decomposition(cp):
        approx = aberth([float(c) for c in factor])
        exact = _rational_roots(factor, approx)
        for k, r in enumerate(approx):
            q = exact.get(k)
            found.append(Eigenvalue(complex(q) if q is not None else complex(r), mult, q))
    return _cluster(found, tol)


def _cluster(vals: list[Eigenvalue], tol: float) -> list[Eigenvalue]:
    """Single-linkage merge at relative tolerance ``tol``."""
    groups: list[list[Eigenvalue]] = []
    for v in sorted(vals, key=lambda e: (e.value.real, e.value.imag)):
        for g in groups:
            if any(abs(v.value - w.value) <= tol * max(1, abs(w.value)) for w in g):
                g.append(v)
                break
        else:
            groups.append([v])
    out = []
    for g in groups:
        mult = sum(e.multiplicity for e in g)
        exact = g[0].exact if len(g) == 1 else None
        value = sum(e.value * e.multiplicity for e in g) / mult
        out.append(Eigenvalue(value, mult, exact))
    return out


# ---------------------------------------------------------------------------
# point recovery

@dataclass
class RecoveredPoint:
    coords: list[complex]
    chart: list[complex]
    multiplicity: int
    residual: float
    conjugate_of: int | None = None

    @property
    def is_real(self) -> bool:
        return all(abs(c.imag) <= 1e-12 * max(1, abs(c)) for c in self.coords)

    def to_json(self) -> dict:
        return {"coords": [_num_json(c) for c in self.coords], "multiplicity": self.multiplicity,
                "residual": self.residual, "conjugate_of": self.conjugate_of}


def _num_json(c: complex):
    c = complex(c)
    if abs(c.imag) <= 1e-12 * max(1, abs(c)):
        return float(c.real)
    return [float(c.real), float(c.imag)]


@dataclass
class PointSet:
    points: list[RecoveredPoint]
    degree_used: tuple
    total_dim: int
    tol: float = DEFAULT_TOL
    seed_used: int = 0

    @property
    def multiplicity_sum(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def to_json(self) -> dict:
        return {"degree_used": list(self.degree_used), "total_dim": self.total_dim,
                "points": [p.to_json() for p in self.points]}


def _combination(maps: Sequence[DenseMatrix], coeffs: Sequence, field: FieldSpec) -> DenseMatrix:
    D = maps[0].nrows
    total = DenseMatrix.zeros(D, D, field)
    for c, M in zip(coeffs, maps):
        total = total + M.scale(c)
    return total


def _invariant_subspace(Mc: DenseMatrix, ev: Eigenvalue, others: list[Eigenvalue]) -> np.ndarray:
    """Orthonormal basis (D x mu) of the generalized eigenspace of ``ev``."""
    F = Mc.field
    D = Mc.nrows
    if ev.exact is not None:
        shifted = Mc - DenseMatrix.identity(D, F).scale(ev.exact)
        P = DenseMatrix.identity(D, F)
        for _ in range(ev.multiplicity):
            P = P @ shifted
        K = kernel_basis(P)
        basis = np.array([[float(a) for a in v] for v in K], dtype=complex).T
        q, _ = np.linalg.qr(basis)
        return q
    A = Mc.to_numpy()
    gap = min((abs(ev.value - o.value) for o in others), default=1.0)
    radius = gap / 2
    T, Z, sdim = scipy.linalg.schur(A.astype(complex), output="complex",
                                    sort=lambda x: abs(x - ev.value) < radius)
    if sdim != ev.multiplicity:
        raise ClusterAmbiguity(f"invariant subspace of dimension {sdim}, expected {ev.multiplicity}")
    return Z[:, :sdim]


def recover_points(maps, seed: int = 0, tol: float = DEFAULT_TOL, gb=None, retries: int = 3) -> PointSet:
    """Points of the degree-b projection with multiplicities.

    ``maps`` is a :class:`~biproj.multmap.MultMapSet` over Q.  When ``gb`` (the
    FGLM output for the same maps) is given, residuals are the largest
    |g(z)| over its elements; otherwise the spread of the eigenvalues of the
    compressed maps.
    """
    mats = maps.maps
    field = maps.field
    if field is None or field.kind != "Q":
        raise PrimeFieldEigenvalues("point recovery needs maps over Q")
    D = maps.dim
    if D == 0:
        return PointSet([], tuple(maps.degree), 0, tol, seed)
    if not mats:
        # P^0: a single point, every basis element sits on it
        return PointSet([RecoveredPoint([1.0], [], D, 0.0)], tuple(maps.degree), D, tol, seed)
    last_error = None
    for attempt in range(retries):
        rng = random.Random(seed + attempt)
        coeffs = [Fraction(rng.randint(1, 997), rng.randint(1, 97)) for _ in mats]
        Mc = _combination(mats, coeffs, field)
        evs = eigenvalues(Mc, tol)
        scale = max([1.0] + [abs(e.value) for e in evs])
        close = any(abs(e.value - o.value) < 10 * tol * scale
                    for i, e in enumerate(evs) for o in evs[i + 1:])
        if close:
            last_error = ClusterAmbiguity(f"eigenvalue clusters closer than {10 * tol} (seed {seed + attempt})")
            continue
        try:
            points = _points_from_clusters(maps, Mc, evs, gb)
        except ClusterAmbiguity as exc:
            last_error = exc
            continue
        return PointSet(points, tuple(maps.degree), D, tol, seed + attempt)
    raise last_error


def _points_from_clusters(maps, Mc, evs, gb) -> list[RecoveredPoint]:
    mats = [M.to_numpy() for M in maps.maps]
    points = []
    for i, ev in enumerate(evs):
        Q = _invariant_subspace(Mc, ev, evs[:i] + evs[i + 1:])
        mu = ev.multiplicity
        chart, spread = [], 0.0
        for A in mats:
            T = Q.conj().T @ A @ Q
            z = np.trace(T) / mu
            chart.append(complex(z))
            spread = max(spread, float(np.max(np.abs(np.linalg.eigvals(T) - z))))
        if spread > 1e-3 * max(1.0, max(abs(c) for c in chart)):
            raise ClusterAmbiguity("two points share an eigenvalue of the random combination")
        if gb is not None:
            residual = max((abs(gb.evaluate(g, chart)) for g in gb.elements), default=0.0)
        else:
            residual = spread
        x = maps.lift(chart)
        k = next(j for j, v in enumerate(x) if abs(v) > 1e-12)
        coords = [complex(v / x[k]) for v in x]
        points.append(RecoveredPoint(coords, chart, mu, float(residual)))
    for i, p in enumerate(points):
        if p.is_real:
            continue
        for j, q in enumerate(points):
            if j != i and all(abs(a - b.conjugate()) <= 1e-6 * max(1, abs(a)) for a, b in zip(p.coords, q.coords)):
                p.conjugate_of = j
    points.sort(key=lambda p: [(round(c.real, 9), round(c.imag, 9)) for c in p.coords])
    return points


@dataclass(frozen=True)
class CharpolyCheck:
    ok: bool
    deviation: float
    expected: list = field(default_factory=list)
    actual: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def charpoly_check(maps, g_combo: Sequence, points, tol: float = 1e-6) -> CharpolyCheck:
    """Compare CharPol of M_g with prod (lambda - g(xi))^mu over the points.

    ``g_combo`` holds the coefficients of g in the chart variables, optionally
    followed by a constant term.  ``points`` is a PointSet or a list of
    (chart coordinates, multiplicity).
    """
    mats = maps.maps if hasattr(maps, "maps") else list(maps)
    F = mats[0].field
    D = mats[0].nrows
    coeffs = [F(c) for c in g_combo]
    Mg = _combination(mats, coeffs[: len(mats)], F)
    if len(coeffs) > len(mats):
        Mg = Mg + DenseMatrix.identity(D, F).scale(coeffs[len(mats)])
    actual = np.array([float(c) for c in reversed(charpoly(Mg))])
    pts = points.points if hasattr(points, "points") else points
    roots = []
    for pt in pts:
        chart, mu = (pt.chart, pt.multiplicity) if hasattr(pt, "chart") else pt
        val = sum(complex(c) * complex(z) for c, z in zip(coeffs, chart))
        if len(coeffs) > len(mats):
            val += complex(coeffs[len(mats)])
        roots.extend([val] * mu)
    expected = np.poly(roots) if roots else np.array([1.0])
    if len(expected) != len(actual):
        return CharpolyCheck(False, math.inf, list(expected), list(actual))
    scale = np.maximum(1.0, np.abs(actual))
    dev = float(np.max(np.abs(expected - actual) / scale))
    return CharpolyCheck(dev <= tol, dev, list(expected), list(actual))
