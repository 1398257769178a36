"""The bigraded ring k[x_0..x_n, y_0..y_m] with deg x_i = (1,0), deg y_j = (0,1).

Monomials are exponent tuples of length ``n + m + 2``: the x-exponents come
first, then the y-exponents.  Polynomials are sparse dicts monomial -> nonzero
coefficient.

All bases, Macaulay columns and Gröbner computations share one monomial
order: degree reverse lexicographic with ``y_m > ... > y_0 > x_n > ... > x_0``.
Lists of monomials are kept *decreasing* in that order, so row reduction
puts pivots on leading monomials and leaves the smallest monomials as the
quotient basis.
"""

from __future__ import annotations

import ast
import json
import random
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    NotBihomogeneous, PolySyntaxError, SingularMatrix, ZeroPoint, FieldError,
)
from .kernelalg import DenseMatrix, FieldSpec, det

Monomial = tuple[int, ...]


class BiDegree(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # componentwise, not tuple concatenation
        return BiDegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return BiDegree(self.a - other[0], self.b - other[1])

    def leq(self, other) -> bool:
        """Componentwise partial order."""
        return self.a <= other[0] and self.b <= other[1]


def drl_key(mon: Monomial, n: int) -> tuple:
    """Sort key for degrevlex with ``y_m > ... > y_0 > x_n > ... > x_0``.

    Larger key means larger monomial.  Variables listed from smallest to
    largest are x_0..x_n, y_0..y_m, which is exactly the tuple layout.
    """
    return (sum(mon),) + tuple(-e for e in mon)


def _compositions(total: int, parts: int):
    """All exponent vectors of length ``parts`` summing to ``total``."""
    for combo in combinations_with_replacement(range(parts), total):
        e = [0] * parts
        for i in combo:
            e[i] += 1
        yield tuple(e)


@dataclass(frozen=True)
class BiRing:
    """Ambient ring of P^n x P^m over ``field``."""

    n: int
    m: int
    field: FieldSpec = FieldSpec.rationals()

    @property
    def nvars(self) -> int:
        return self.n + self.m + 2

    @cached_property
    def names(self) -> list[str]:
        return [f"x{i}" for i in range(self.n + 1)] + [f"y{j}" for j in range(self.m + 1)]

    def bidegree_of(self, mon: Monomial) -> BiDegree:
        return BiDegree(sum(mon[: self.n + 1]), sum(mon[self.n + 1:]))

    def key(self, mon: Monomial) -> tuple:
        return drl_key(mon, self.n)

    def monomials(self, deg) -> list[Monomial]:
        """All monomials of bidegree ``deg``, decreasing in the global order."""
        a, b = deg
        if a < 0 or b < 0:
            return []
        mons = [xe + ye for xe in _compositions(a, self.n + 1) for ye in _compositions(b, self.m + 1)]
        mons.sort(key=self.key, reverse=True)
        return mons

    def count(self, deg) -> int:
        a, b = deg
        if a < 0 or b < 0:
            return 0
        return comb(a + self.n, self.n) * comb(b + self.m, self.m)

    def zero(self) -> BiPoly:
        return BiPoly(self, {})

    def one(self) -> BiPoly:
        return BiPoly(self, {(0,) * self.nvars: self.field.one})

    def monomial(self, mon: Monomial, coeff=1) -> BiPoly:
        return BiPoly(self, {tuple(mon): self.field(coeff)})

    def var(self, name: str) -> BiPoly:
        e = [0] * self.nvars
        e[self.names.index(name)] = 1
        return BiPoly(self, {tuple(e): self.field.one})

    def x(self, i: int) -> BiPoly:
        return self.var(f"x{i}")

    def y(self, j: int) -> BiPoly:
        return self.var(f"y{j}")

    def linear_x(self, coeffs: Sequence) -> BiPoly:
        """The (1,0)-form sum c_i x_i."""
        F = self.field
        terms = {}
        for i, c in enumerate(coeffs):
            c = F(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return BiPoly(self, terms)

    def random_form(self, deg, rng: random.Random, bound: int = 99) -> BiPoly:
        F = self.field
        return BiPoly(self, {mon: F.random_element(rng, bound) for mon in self.monomials(deg)})

    def parse(self, text: str) -> BiPoly:
        return parse_poly(text, self)

    def with_field(self, field: FieldSpec) -> BiRing:
        return BiRing(self.n, self.m, field)

    def mon_str(self, mon: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, mon):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class BiPoly:
    """Sparse polynomial in a :class:`BiRing`; zero coefficients are never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BiRing, terms: dict):
        self.ring = ring
        self.terms = {tuple(k): v for k, v in terms.items() if v}

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set[BiDegree]:
        return {self.ring.bidegree_of(mon) for mon in self.terms}

    @property
    def bidegree(self) -> BiDegree:
        degs = self.degrees()
        if len(degs) != 1:
            if not degs:
                raise ValueError("the zero polynomial has no bidegree")
            raise NotBihomogeneous(degs)
        return next(iter(degs))

    def is_bihomogeneous(self) -> bool:
        return len(self.degrees()) == 1

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=self.ring.key)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            if other.ring != self.ring:
                raise FieldError("polynomials live in different rings")
            return other
        c = self.field(other)
        return BiPoly(self.ring, {(0,) * self.ring.nvars: c})

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = F.add(out.get(k, F.zero), v)
        return BiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return BiPoly(self.ring, {k: F.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = self.field(other)
            F = self.field
            return BiPoly(self.ring, {k: F.mul(c, v) for k, v in self.terms.items()})
        other = self._coerce(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, mon: Monomial) -> BiPoly:
        """Multiply by a monomial."""
        return BiPoly(self.ring, {tuple(a + b for a, b in zip(k, mon)): v for k, v in self.terms.items()})

    def evaluate(self, point: Sequence):
        """Evaluate at a full point (values for x_0..x_n, y_0..y_m) with plain arithmetic."""
        total = 0
        for mon, c in self.terms.items():
            t = c if self.field.kind != "Fp" else int(c)
            for v, e in zip(point, mon):
                if e:
                    t = t * v**e
            total = total + t
        if self.field.p:
            return total % self.field.p
        return total

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"BiPoly({poly_str(self)!r}, n={self.ring.n}, m={self.ring.m}, field={self.field})"


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, float):
        return repr(c)
    if isinstance(c, complex):
        return f"({c.real!r}{c.imag:+}j)"
    return str(c)


def poly_str(f: BiPoly, names: Sequence[str] | None = None) -> str:
    """Human readable expression, terms in decreasing monomial order."""
    if not f.terms:
        return "0"
    ring = f.ring
    names = names or ring.names
    out = []
    for mon, c in f.sorted_terms():
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mon) if e]
        neg = isinstance(c, (Fraction, float, int)) and not f.field.p and c < 0
        mag = -c if neg else c
        cs = _coeff_str(mag)
        if parts:
            body = "*".join(parts) if cs == "1" else "*".join([cs] + parts)
        else:
            body = cs
        out.append(("- " if neg else "+ ") + body)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


def multiply(f: BiPoly, g: BiPoly) -> BiPoly:
    F = f.field
    p = F.p
    out: dict = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            k = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(k, 0) + c1 * c2
            out[k] = v % p if p else v
    return BiPoly(f.ring, out)


def monomials_of(deg, n: int, m: int) -> list[Monomial]:
    return BiRing(n, m).monomials(deg)


# ---------------------------------------------------------------------------
# parsing

_NAME = re.compile(r"^([xy])(\d+)$")


def parse_poly(text: str, ring: BiRing, require_bihomogeneous: bool = True) -> BiPoly:
    """Parse an expression in x0..xn, y0..ym with + - * / ^ and parentheses.

    Division is only allowed by nonzero constants.
    """
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolySyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    f = _eval_node(tree.body, ring, text)
    if require_bihomogeneous and f.terms and not f.is_bihomogeneous():
        raise NotBihomogeneous(f.degrees())
    return f


def _eval_node(node, ring: BiRing, text: str) -> BiPoly:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        val = node.value
        if isinstance(val, float):
            val = Fraction(repr(val))
        return BiPoly(ring, {(0,) * ring.nvars: ring.field(val)})
    if isinstance(node, ast.Name):
        mt = _NAME.match(node.id)
        if not mt:
            raise PolySyntaxError(f"unknown variable {node.id!r} in {text!r}")
        idx = int(mt.group(2))
        bound = ring.n if mt.group(1) == "x" else ring.m
        if idx > bound:
            raise PolySyntaxError(f"variable {node.id} out of range (max index {bound}) in {text!r}")
        return ring.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval_node(node.operand, ring, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, ring, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                    and node.right.value >= 0):
                raise PolySyntaxError(f"exponents must be nonnegative integers in {text!r}")
            return left ** node.right.value
        right = _eval_node(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            const = (0,) * ring.nvars
            if set(right.terms) != {const}:
                raise PolySyntaxError(f"division by a non-constant in {text!r}")
            return left * ring.field.inv(right.terms[const])
    raise PolySyntaxError(f"unsupported syntax {ast.dump(node)[:40]} in {text!r}")


# ---------------------------------------------------------------------------
# systems

@dataclass
class BiSystem:
    """A list of bihomogeneous generators of an ideal in ``ring``."""

    ring: BiRing
    generators: list[BiPoly]
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for i, f in enumerate(self.generators):
            if f.is_zero():
                raise ValueError(f"generator {i} is zero")
            if f.ring != self.ring:
                raise FieldError(f"generator {i} lives in a different ring")
            f.bidegree  # raises NotBihomogeneous

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def degrees(self) -> list[BiDegree]:
        return [f.bidegree for f in self.generators]

    def max_degree(self) -> BiDegree:
        degs = self.degrees
        if not degs:
            return BiDegree(0, 0)
        return BiDegree(max(d.a for d in degs), max(d.b for d in degs))

    def with_generator(self, g: BiPoly) -> BiSystem:
        return BiSystem(self.ring, self.generators + [g])

    def with_field(self, field: FieldSpec) -> BiSystem:
        ring = self.ring.with_field(field)
        return BiSystem(ring, [BiPoly(ring, {k: _convert(v, self.field, field) for k, v in f.terms.items()})
                               for f in self.generators])

    @classmethod
    def from_strings(cls, n: int, m: int, gens: Iterable[str], field: FieldSpec | None = None) -> BiSystem:
        ring = BiRing(n, m, field or FieldSpec.rationals())
        return cls(ring, [parse_poly(s, ring) for s in gens])

    @classmethod
    def from_json(cls, data: dict, field: FieldSpec | None = None) -> BiSystem:
        try:
            n, m, gens = int(data["n"]), int(data["m"]), list(data["generators"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PolySyntaxError(f"malformed system description: {exc}") from None
        if field is None:
            field = FieldSpec.from_json(data.get("field", "Q"))
        return cls.from_strings(n, m, gens, field)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "field": self.field.to_json(),
                "generators": [str(f) for f in self.generators]}


def load_system(path, field: FieldSpec | None = None) -> BiSystem:
    with open(Path(path), encoding="utf-8") as fh:
        return BiSystem.from_json(json.load(fh), field)


def _convert(v, src: FieldSpec, dst: FieldSpec):
    if src == dst:
        return v
    if src.kind == "Fp" and dst.kind != "Fp":
        raise FieldError("cannot lift prime-field coefficients")
    return dst(v)


# ---------------------------------------------------------------------------
# specialization and coordinate changes

def normalize_point(xi: Sequence, field: FieldSpec | None = None) -> list:
    """Scale so that the first nonzero coordinate is 1."""
    k = next((i for i, v in enumerate(xi) if v != 0), None)
    if k is None:
        raise ZeroPoint("the zero vector is not a projective point")
    if field is not None and field.is_exact:
        c = field.inv(field(xi[k]))
        return [field.mul(field(v), c) for v in xi]
    c = xi[k]
    return [v / c for v in xi]


def y_ring(ring: BiRing, field: FieldSpec | None = None) -> BiRing:
    """The ring of the specialized system: a single dummy x-variable and the y-variables."""
    return BiRing(0, ring.m, field or ring.field)


def specialize_x(f: BiPoly, xi: Sequence, field: FieldSpec | None = None) -> BiPoly:
    """Substitute the x-variables by the coordinates of ``xi``.

    The result lives in :func:`y_ring` with bidegree (0, deg_y f), or is zero.
    ``field`` defaults to the field of ``f``; pass ``FieldSpec.approx()`` to
    specialize at a floating-point point.
    """
    ring = f.ring
    if len(xi) != ring.n + 1:
        raise ValueError(f"point has {len(xi)} coordinates, expected {ring.n + 1}")
    field = field or f.field
    if all(v == 0 for v in xi):
        raise ZeroPoint("cannot specialize at the zero vector")
    if f.field.kind == "Fp" and field.kind != "Fp":
        raise FieldError("cannot specialize prime-field coefficients at a non-modular point")
    vals = [field(v) for v in xi] if field.is_exact else list(xi)
    target = y_ring(ring, field)
    out: dict = {}
    nx = ring.n + 1
    for mon, c in f.terms.items():
        t = field(c) if field.is_exact else float(c)
        for v, e in zip(vals, mon[:nx]):
            if e:
                t = field.mul(t, field.pow(v, e)) if field.is_exact else t * v**e
        key = (0,) + mon[nx:]
        out[key] = field.add(out.get(key, field.zero), t) if field.is_exact else out.get(key, 0.0) + t
    return BiPoly(target, out)


def substitute_linear(f: BiPoly, x_matrix=None, y_matrix=None) -> BiPoly:
    """Apply x_i -> sum_j X[i][j] x_j and y_i -> sum_j Y[i][j] y_j."""
    ring = f.ring
    nx = ring.n + 1
    images = []
    for i in range(nx):
        row = x_matrix.rows[i] if x_matrix is not None else [int(i == j) for j in range(nx)]
        images.append(ring.linear_x(row))
    for j in range(ring.m + 1):
        if y_matrix is not None:
            e = {}
            for k, c in enumerate(y_matrix.rows[j]):
                if c:
                    mon = [0] * ring.nvars
                    mon[nx + k] = 1
                    e[tuple(mon)] = c
            images.append(BiPoly(ring, e))
        else:
            images.append(ring.y(j))
    powers: dict = {}

    def power(i, e):
        if (i, e) not in powers:
            powers[(i, e)] = images[i] ** e
        return powers[(i, e)]

    out = ring.zero()
    for mon, c in f.terms.items():
        t = ring.one() * c
        for i, e in enumerate(mon):
            if e:
                t = t * power(i, e)
        out = out + t
    return out


def random_invertible(size: int, field: FieldSpec, rng: random.Random, tries: int = 64,
                      bound: int = 9) -> DenseMatrix:
    for _ in range(tries):
        A = DenseMatrix([[field.random_element(rng, bound) for _ in range(size)] for _ in range(size)],
                        field, size)
        if det(A) != 0:
            return A
    raise SingularMatrix(f"no invertible {size}x{size} matrix found in {tries} tries")


def change_coords_x(sys: BiSystem, seed=0) -> tuple[BiSystem, DenseMatrix]:
    """Random invertible linear change of the x-variables.

    ``seed="identity"`` returns the system unchanged together with the identity.
    """
    F = sys.field
    F.require_exact("change_coords_x")
    if seed == "identity":
        return sys, DenseMatrix.identity(sys.n + 1, F)
    A = random_invertible(sys.n + 1, F, random.Random(seed))
    return BiSystem(sys.ring, [substitute_linear(f, x_matrix=A) for f in sys.generators]), A


def change_coords(sys: BiSystem, seed=0) -> tuple[BiSystem, DenseMatrix, DenseMatrix]:
    """Independent random changes of the x- and the y-variables."""
    F = sys.field
    F.require_exact("change_coords")
    rng = random.Random(seed)
    A = random_invertible(sys.n + 1, F, rng)
    B = random_invertible(sys.m + 1, F, rng)
    return (BiSystem(sys.ring, [substitute_linear(f, A, B) for f in sys.generators]), A, B)
