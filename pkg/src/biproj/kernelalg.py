"""Coefficient fields and exact dense linear algebra.

Field elements are plain Python values: :class:`fractions.Fraction` over Q,
``int`` in ``[0, p)`` over a prime field and ``float`` for the approximate
field.  A :class:`FieldSpec` knows how to combine them.

Elimination works on sparse rows (``dict`` column -> nonzero value) because
Macaulay matrices are very sparse; :class:`DenseMatrix` is the user-facing
container.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError, InexactFieldError, SingularMatrix

DEFAULT_PRIME = 65521


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: ``"Q"``, ``"Fp"`` (with modulus ``p``) or ``"R"`` (doubles)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "Fp", "R"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not (2 <= self.p < 2**31) or not is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not a prime below 2^31")
        elif self.p is not None:
            raise FieldError("only prime fields carry a modulus")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls("Fp", p)

    @classmethod
    def approx(cls) -> FieldSpec:
        return cls("R")

    @classmethod
    def from_json(cls, spec) -> FieldSpec:
        """Parse the system-file encoding: ``"Q"`` or ``{"Fp": p}``."""
        if spec in ("Q", "QQ"):
            return cls.rationals()
        if isinstance(spec, dict) and set(spec) == {"Fp"}:
            return cls.prime(int(spec["Fp"]))
        if isinstance(spec, str) and spec.startswith("Fp"):
            tail = spec[2:].strip(":= ")
            return cls.prime(int(tail) if tail else DEFAULT_PRIME)
        raise FieldError(f"cannot parse field {spec!r}")

    def to_json(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "Fp":
            return {"Fp": self.p}
        return "R"

    def __str__(self):
        return {"Q": "QQ", "R": "RR"}.get(self.kind, f"GF({self.p})")

    @property
    def is_exact(self) -> bool:
        return self.kind != "R"

    @property
    def size(self) -> float:
        return self.p if self.kind == "Fp" else math.inf

    @property
    def zero(self):
        return {"Q": Fraction(0), "Fp": 0, "R": 0.0}[self.kind]

    @property
    def one(self):
        return {"Q": Fraction(1), "Fp": 1, "R": 1.0}[self.kind]

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction, str, float) into this field."""
        if self.kind == "Q":
            if isinstance(value, float):
                return Fraction(value)
            return Fraction(value)
        if self.kind == "R":
            if isinstance(value, str):
                return float(Fraction(value))
            return float(value)
        if isinstance(value, (str, Fraction)):
            q = Fraction(value)
            if q.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in {self}")
            return q.numerator * pow(q.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise FieldError("cannot coerce a float into a prime field")
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if self.p:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of 0 in a prime field")
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        return pow(a, e, self.p) if self.p else a**e

    def random_element(self, rng: random.Random, bound: int = 99):
        """Uniform over F_p; a uniform integer in [-bound, bound] over Q/R."""
        if self.p:
            return rng.randrange(self.p)
        return self(rng.randint(-bound, bound))

    def random_nonzero(self, rng: random.Random, bound: int = 99):
        while True:
            c = self.random_element(rng, bound)
            if c != 0:
                return c

    def to_complex(self, a) -> complex:
        if self.kind == "Fp":
            raise FieldError("prime-field elements have no complex image")
        return complex(a)

    def require_exact(self, what: str = "operation"):
        if not self.is_exact:
            raise InexactFieldError(f"{what} requires an exact field, got {self}")


class DenseMatrix:
    """Row-major matrix of field elements."""

    __slots__ = ("rows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence], field: FieldSpec, ncols: int | None = None):
        self.rows = [[field(v) if not _is_native(v, field) else v for v in r] for r in rows]
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged rows")
        self.ncols = ncols
        self.field = field

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> DenseMatrix:
        return cls([[field.zero] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> DenseMatrix:
        M = cls.zeros(n, n, field)
        for i in range(n):
            M.rows[i][i] = field.one
        return M

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field: FieldSpec, nrows: int) -> DenseMatrix:
        return cls([[c[i] for c in cols] for i in range(nrows)], field, len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"DenseMatrix({self.tolist()!r}, field={self.field})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix([list(c) for c in zip(*self.rows)] if self.rows else
                           [[] for _ in range(self.ncols)], self.field, self.nrows)

    def _check(self, other):
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        self._check(other)
        F = self.field
        return DenseMatrix([[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           F, self.ncols)

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        self._check(other)
        F = self.field
        return DenseMatrix([[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           F, self.ncols)

    def scale(self, c) -> DenseMatrix:
        F = self.field
        c = F(c)
        return DenseMatrix([[F.mul(c, a) for a in r] for r in self.rows], F, self.ncols)

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = sum(a * c[k] for k, a in nz)
                row.append(s % F.p if F.p else (s if nz else F.zero))
            out.append(row)
        return DenseMatrix(out, F, other.ncols)

    def apply(self, v: Sequence) -> list:
        F = self.field
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, v))
            out.append(s % F.p if F.p else s)
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def vectorize(self) -> list:
        return [a for r in self.rows for a in r]

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(a) if isinstance(a, complex) else float(a) for a in r] for r in self.rows],
                        dtype=float).reshape(self.nrows, self.ncols)


def _is_native(v, field: FieldSpec) -> bool:
    if field.kind == "Q":
        return type(v) is Fraction
    if field.kind == "Fp":
        return type(v) is int and 0 <= v < field.p
    return type(v) is float


# ---------------------------------------------------------------------------
# sparse elimination core

def sparse_rref(rows: Iterable[dict], field: FieldSpec) -> dict[int, dict]:
    """Reduced row echelon form of sparse rows.

    Returns ``{pivot column: row}`` where each row is monic at its pivot and
    has zeros in every other pivot column.  The RREF is unique, so the result
    does not depend on the order in which rows are fed in.
    """
    field.require_exact("rref")
    p = field.p
    piv: dict[int, dict] = {}
    for row in rows:
        v = {c: a for c, a in row.items() if a}
        if not v:
            continue
        for c in [c for c in v if c in piv]:
            coef = v.get(c)
            if not coef:
                continue
            for k, b in piv[c].items():
                x = v.get(k, 0) - coef * b
                if p:
                    x %= p
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
        if not v:
            continue
        c0 = min(v)
        lead = v[c0]
        if lead != 1:
            if p:
                inv = pow(lead, -1, p)
                v = {k: a * inv % p for k, a in v.items()}
            else:
                v = {k: a / lead for k, a in v.items()}
        for c, r in piv.items():
            coef = r.get(c0)
            if not coef:
                continue
            for k, b in v.items():
                x = r.get(k, 0) - coef * b
                if p:
                    x %= p
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
        piv[c0] = v
    return dict(sorted(piv.items()))


def reduce_vector(v: dict, piv: dict[int, dict], field: FieldSpec) -> dict:
    """Reduce a sparse vector modulo the row space encoded by ``sparse_rref`` output."""
    p = field.p
    v = {c: a for c, a in v.items() if a}
    for c in [c for c in v if c in piv]:
        coef = v.get(c)
        if not coef:
            continue
        for k, b in piv[c].items():
            x = v.get(k, 0) - coef * b
            if p:
                x %= p
            if x:
                v[k] = x
            else:
                v.pop(k, None)
    return v


def _sparse_rows(M: DenseMatrix) -> list[dict]:
    return [{j: a for j, a in enumerate(r) if a} for r in M.rows]


# ---------------------------------------------------------------------------
# dense front end

def rref(M: DenseMatrix) -> tuple[DenseMatrix, list[int], int]:
    """Return ``(R, pivots, rank)`` with ``R`` the reduced row echelon form of ``M``.

    ``R`` has the shape of ``M``; zero rows come last.
    """
    M.field.require_exact("rref")
    piv = sparse_rref(_sparse_rows(M), M.field)
    F = M.field
    out = []
    for row in piv.values():
        dense = [F.zero] * M.ncols
        for k, a in row.items():
            dense[k] = a
        out.append(dense)
    out.extend([F.zero] * M.ncols for _ in range(M.nrows - len(out)))
    return DenseMatrix(out, F, M.ncols), list(piv), len(piv)


def rank(M: DenseMatrix) -> int:
    M.field.require_exact("rank")
    return len(sparse_rref(_sparse_rows(M), M.field))


def kernel_basis(M: DenseMatrix) -> list[list]:
    """Basis of the right null space, one vector per free column."""
    F = M.field
    F.require_exact("kernel_basis")
    piv = sparse_rref(_sparse_rows(M), F)
    free = [j for j in range(M.ncols) if j not in piv]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for c, row in piv.items():
            a = row.get(f)
            if a:
                v[c] = F.neg(a)
        basis.append(v)
    return basis


def inverse(M: DenseMatrix) -> DenseMatrix:
    F = M.field
    F.require_exact("inverse")
    n = M.nrows
    if M.ncols != n:
        raise ValueError(f"inverse of a non-square {M.shape} matrix")
    aug = []
    for i, r in enumerate(M.rows):
        row = {j: a for j, a in enumerate(r) if a}
        row[n + i] = F.one
        aug.append(row)
    piv = sparse_rref(aug, F)
    if len([c for c in piv if c < n]) < n:
        raise SingularMatrix(f"matrix of size {n} has rank {len([c for c in piv if c < n])}")
    out = []
    for i in range(n):
        row = piv[i]
        out.append([row.get(n + j, F.zero) for j in range(n)])
    return DenseMatrix(out, F, n)


def solve(M: DenseMatrix, b: Sequence) -> list:
    """One solution ``x`` of ``M x = b``; raises :class:`SingularMatrix` when inconsistent."""
    F = M.field
    F.require_exact("solve")
    n = M.ncols
    aug = []
    for r, bi in zip(M.rows, b):
        row = {j: a for j, a in enumerate(r) if a}
        if bi:
            row[n] = F(bi)
        aug.append(row)
    piv = sparse_rref(aug, F)
    if n in piv:
        raise SingularMatrix("inconsistent linear system")
    x = [F.zero] * n
    for c, row in piv.items():
        x[c] = row.get(n, F.zero)
    return x


def to_approx(M: DenseMatrix) -> DenseMatrix:
    """Nearest-double image of a rational matrix."""
    if M.field.kind == "Fp":
        raise FieldError("prime-field matrices have no floating-point image")
    R = FieldSpec.approx()
    return DenseMatrix([[float(a) for a in r] for r in M.rows], R, M.ncols)


def det(M: DenseMatrix):
    """Exact determinant by fraction/modular Gaussian elimination."""
    F = M.field
    F.require_exact("det")
    n = M.nrows
    A = [list(r) for r in M.rows]
    d = F.one
    for j in range(n):
        i = next((i for i in range(j, n) if A[i][j]), None)
        if i is None:
            return F.zero
        if i != j:
            A[i], A[j] = A[j], A[i]
            d = F.neg(d)
        d = F.mul(d, A[j][j])
        inv = F.inv(A[j][j])
        for k in range(j + 1, n):
            if A[k][j]:
                c = F.mul(A[k][j], inv)
                A[k] = [F.sub(a, F.mul(c, b)) for a, b in zip(A[k], A[j])]
    return d


def random_matrix(nrows: int, ncols: int, field: FieldSpec, rng: random.Random, bound: int = 9) -> DenseMatrix:
    return DenseMatrix([[field.random_element(rng, bound) for _ in range(ncols)] for _ in range(nrows)],
                       field, ncols)
