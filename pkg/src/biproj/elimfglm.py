"""FGLM on commuting multiplication matrices.

Monomials z^alpha in the chart variables are enumerated along the usual FGLM
staircase.  A candidate is either linearly independent of the standard
monomials found so far (it becomes standard) or gives a new basis element
z^alpha - sum c_gamma z^gamma.  The matrix variant tests dependence on the
full vectorized matrices M^alpha; the randomized variant uses M^alpha v for
a random vector v and is checked afterwards.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .kernelalg import DenseMatrix, FieldSpec

Exp = tuple[int, ...]


def lex_key(e: Exp) -> tuple:
    return tuple(e)


def drl_key(e: Exp) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


ORDERS = {"lex": lex_key, "drl": drl_key}


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis in the chart variables ``variables``.

    ``elements`` are dicts exponent -> coefficient with the leading
    coefficient equal to one.
    """

    variables: list[str]
    order: str
    elements: list[dict]
    standard_monomials: list[Exp]
    field: FieldSpec = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.standard_monomials)

    def leading(self, g: dict) -> Exp:
        return max(g, key=ORDERS[self.order])

    def element_str(self, g: dict) -> str:
        return upoly_str(g, self.variables, ORDERS[self.order], self.field)

    def strings(self) -> list[str]:
        return [self.element_str(g) for g in self.elements]

    def monomial_str(self, e: Exp) -> str:
        return upoly_str({e: 1}, self.variables, ORDERS[self.order])

    def evaluate(self, g: dict, z: Sequence) -> complex:
        total = 0
        for e, c in g.items():
            t = complex(c)
            for v, k in zip(z, e):
                t *= v**k
            total += t
        return total

    def to_json(self) -> dict:
        return {"variables": self.variables, "order": self.order, "basis": self.strings(),
                "standard_monomials": [self.monomial_str(e) for e in self.standard_monomials],
                "dim": self.dim}


def upoly_str(g: dict, names: Sequence[str], key, field: FieldSpec | None = None) -> str:
    if not g:
        return "0"
    out = []
    for e, c in sorted(g.items(), key=lambda t: key(t[0]), reverse=True):
        parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
        neg = not (field and field.p) and c < 0
        mag = -c if neg else c
        cs = str(mag)
        body = "*".join(parts) if parts and cs == "1" else "*".join([cs] + parts) if parts else cs
        out.append(("- " if neg else "+ ") + body)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


def _mul(e: Exp, i: int) -> Exp:
    return e[:i] + (e[i] + 1,) + e[i + 1:]


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Eliminator:
    """Incremental echelon form of vectors with a record of how each row was formed."""

    def __init__(self, field: FieldSpec, nbasis_hint: int = 0):
        self.F = field
        self.rows: list[tuple[int, dict, dict]] = []  # (pivot, sparse vector, combination)

    def reduce(self, v: dict, tag: int) -> tuple[dict, dict]:
        F = self.F
        p = F.p
        v = {k: a for k, a in v.items() if a}
        comb = {tag: F.one}
        for piv, row, rc in self.rows:
            c = v.get(piv)
            if not c:
                continue
            for k, b in row.items():
                x = v.get(k, 0) - c * b
                if p:
                    x %= p
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
            for k, b in rc.items():
                x = comb.get(k, 0) - c * b
                if p:
                    x %= p
                if x:
                    comb[k] = x
                else:
                    comb.pop(k, None)
        return v, comb

    def insert(self, v: dict, comb: dict):
        F = self.F
        piv = min(v)
        inv = F.inv(v[piv])
        self.rows.append((piv, {k: F.mul(a, inv) for k, a in v.items()},
                          {k: F.mul(a, inv) for k, a in comb.items()}))


def _fglm_core(maps: Sequence[DenseMatrix], field: FieldSpec, order: str, vector_of, start) -> tuple:
    """Shared staircase walk; ``vector_of(obj)`` turns a matrix or vector into a sparse vector."""
    key = ORDERS[order]
    n = len(maps)
    one: Exp = (0,) * n
    elim = _Eliminator(field)
    standard: list[Exp] = []
    objects: dict[Exp, object] = {}
    elements: list[dict] = []
    leads: list[Exp] = []
    F = field

    candidates = {one: start}
    while candidates:
        alpha = min(candidates, key=key)
        obj = candidates.pop(alpha)
        if any(_divides(l, alpha) for l in leads):
            continue
        v, comb = elim.reduce(vector_of(obj), len(standard))
        if not v:
            g = {alpha: F.one}
            for idx, c in comb.items():
                if idx != len(standard):
                    g[standard[idx]] = c
            elements.append(g)
            leads.append(alpha)
            candidates = {e: o for e, o in candidates.items() if not _divides(alpha, e)}
            continue
        elim.insert(v, comb)
        standard.append(alpha)
        objects[alpha] = obj
        for i in range(n):
            beta = _mul(alpha, i)
            if beta not in candidates and beta not in objects and not any(_divides(l, beta) for l in leads):
                candidates[beta] = _apply(maps[i], obj)
    elements.sort(key=lambda g: key(max(g, key=key)))
    return elements, sorted(standard, key=key)


def _apply(M: DenseMatrix, obj):
    if isinstance(obj, DenseMatrix):
        return M @ obj
    return M.apply(obj)


def _mat_vector(M: DenseMatrix) -> dict:
    return {k: a for k, a in enumerate(M.vectorize()) if a}


def _vec_vector(v) -> dict:
    return {k: a for k, a in enumerate(v) if a}


def matrix_fglm(maps, order: str = "lex", names: Sequence[str] | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the relations among commuting matrices.

    ``maps`` is a :class:`~biproj.multmap.MultMapSet` or a list of matrices.
    With ``order="lex"`` the first variable is the largest.
    """
    mats, field, names, D = _unpack(maps, names)
    field.require_exact("matrix_fglm")
    elements, standard = _fglm_core(mats, field, order, _mat_vector, DenseMatrix.identity(D, field))
    return GroebnerBasis(list(names), order, elements, standard, field)


def randomized_vector_fglm(maps, order: str = "lex", seed=0, names: Sequence[str] | None = None,
                           vector=None) -> GroebnerBasis:
    """FGLM on M^alpha v for a random v, verified on the matrices.

    Falls back to :func:`matrix_fglm` when some output element does not
    vanish on the matrices (unlucky or degenerate ``v``).
    """
    mats, field, names, D = _unpack(maps, names)
    field.require_exact("randomized_vector_fglm")
    if vector is None:
        rng = random.Random(seed)
        vector = [field.random_element(rng) for _ in range(D)]
    vector = [field(a) for a in vector]
    if D == 0 or all(a == 0 for a in vector):
        return matrix_fglm(mats, order, names)
    elements, standard = _fglm_core(mats, field, order, _vec_vector, vector)
    gb = GroebnerBasis(list(names), order, elements, standard, field)
    if not all(evaluate_on_matrices(g, mats, field).is_zero() for g in elements):
        return matrix_fglm(mats, order, names)
    return gb


def _unpack(maps, names):
    if hasattr(maps, "maps"):
        mats = maps.maps
        field = maps.field
        D = maps.dim
        names = names or maps.names
    else:
        mats = list(maps)
        if not mats:
            raise ValueError("need at least one matrix, or a MultMapSet")
        field = mats[0].field
        D = mats[0].nrows
        names = names or [f"z{i + 1}" for i in range(len(mats))]
    return mats, field, names, D


def evaluate_on_matrices(g: dict, mats: Sequence[DenseMatrix], field: FieldSpec) -> DenseMatrix:
    """g(M_1, ..., M_n) as a matrix."""
    D = mats[0].nrows if mats else 0
    total = DenseMatrix.zeros(D, D, field)
    cache: dict[Exp, DenseMatrix] = {}

    def power(e: Exp) -> DenseMatrix:
        if e not in cache:
            if sum(e) == 0:
                cache[e] = DenseMatrix.identity(D, field)
            else:
                i = next(k for k, x in enumerate(e) if x)
                cache[e] = mats[i] @ power(e[:i] + (e[i] - 1,) + e[i + 1:])
        return cache[e]

    for e, c in g.items():
        total = total + power(e).scale(c)
    return total
