"""Buchberger's algorithm in the bigraded ring and the bigeneric initial ideal.

Polynomials are handled as plain dicts monomial -> coefficient during the
computation; results are wrapped back into :class:`BiPoly`.  The default order
is degrevlex with every y-variable above every x-variable, the order used for
Macaulay columns elsewhere in the package.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .bipoly import BiDegree, BiPoly, BiRing, BiSystem, Monomial, change_coords, drl_key
from .kernelalg import FieldSpec


class SeedInstability(UserWarning):
    """Different random coordinate changes produced different initial ideals."""


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``drl_eq51``, ``lex`` or ``user``.

    ``perm`` lists variable indices (x0..xn then y0..ym) from largest to
    smallest; ``user`` orders are degrevlex with respect to it.  The default
    permutation puts y_m first and x_0 last.
    """

    kind: str = "drl_eq51"
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("drl_eq51", "lex", "user"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "user" and self.perm is None:
            raise ValueError("a user order needs a permutation")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        if text in ("drl", "drl_eq51", "degrevlex"):
            return cls("drl_eq51")
        if text == "lex":
            return cls("lex")
        return cls("user", tuple(int(t) for t in text.split(",")))

    def key_function(self, nvars: int) -> Callable[[Monomial], tuple]:
        perm = self.perm if self.perm is not None else tuple(range(nvars - 1, -1, -1))
        if sorted(perm) != list(range(nvars)):
            raise ValueError(f"{perm} is not a permutation of {nvars} variables")
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in perm)
        rev = perm[::-1]
        if self.kind == "drl_eq51" and self.perm is None:
            return lambda e: (sum(e),) + tuple(-x for x in e)
        return lambda e: (sum(e),) + tuple(-e[i] for i in rev)

    def __str__(self) -> str:
        return self.kind if self.perm is None else f"{self.kind}{list(self.perm)}"


DRL = MonomialOrder()


@dataclass
class GroebnerBasisBigraded:
    system: BiSystem
    order: MonomialOrder
    elements: list[BiPoly]
    key: Callable = field(repr=False, default=None)

    @property
    def ring(self) -> BiRing:
        return self.system.ring

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [max(g.terms, key=self.key) for g in self.elements]

    def leading_bidegrees(self) -> list[BiDegree]:
        return [self.ring.bidegree_of(u) for u in self.leading_monomials]

    def strings(self) -> list[str]:
        return [_sorted_str(g, self.key) for g in self.elements]

    def to_json(self) -> dict:
        return {"order": str(self.order), "basis": self.strings(),
                "leading": [self.ring.mon_str(u) for u in self.leading_monomials]}


def _sorted_str(g: BiPoly, key) -> str:
    from .bipoly import poly_str
    return poly_str(g) if key is None else _terms_str(g, key)


def _terms_str(g: BiPoly, key) -> str:
    ring = g.ring
    F = g.field
    out = []
    for mon, c in sorted(g.terms.items(), key=lambda t: key(t[0]), reverse=True):
        neg = F.kind != "Fp" and c < 0
        mag = -c if neg else c
        ms = ring.mon_str(mon)
        body = ms if mag == 1 and ms != "1" else (str(mag) if ms == "1" else f"{mag}*{ms}")
        out.append(("- " if neg else "+ ") + body)
    s = " ".join(out) or "0"
    return s[2:] if s.startswith("+ ") else "-" + s[1:] if s.startswith("- ") else s


# -- dict-level arithmetic -------------------------------------------------


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quot(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


class _Engine:
    def __init__(self, F: FieldSpec, key):
        self.F = F
        self.key = key

    def lead(self, f: dict) -> Monomial:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        F = self.F
        inv = F.inv(f[self.lead(f)])
        return {u: F.mul(c, inv) for u, c in f.items()}

    def axpy(self, f: dict, c, shift: Monomial, g: dict) -> None:
        """f -= c * x^shift * g, in place."""
        F = self.F
        for u, d in g.items():
            w = tuple(x + y for x, y in zip(u, shift))
            v = F.sub(f.get(w, F.zero), F.mul(c, d))
            if v:
                f[w] = v
            else:
                f.pop(w, None)

    def reduce(self, f: dict, basis: Sequence[dict], leads: Sequence[Monomial]) -> dict:
        """Full reduction of ``f``; returns the remainder."""
        f = dict(f)
        rem: dict = {}
        F = self.F
        while f:
            u = self.lead(f)
            c = f[u]
            for g, lg in zip(basis, leads):
                if _divides(lg, u):
                    self.axpy(f, F.div(c, g[lg]), _quot(u, lg), g)
                    break
            else:
                rem[u] = c
                del f[u]
        return rem

    def spoly(self, f: dict, g: dict) -> dict:
        F = self.F
        lf, lg = self.lead(f), self.lead(g)
        L = _lcm(lf, lg)
        out: dict = {}
        self.axpy(out, F.neg(F.inv(f[lf])), _quot(L, lf), f)
        self.axpy(out, F.inv(g[lg]), _quot(L, lg), g)
        return out


def _update(pairs: list, basis_leads: list, alive: list[bool], k: int, lk: Monomial) -> list:
    """Gebauer-Moeller update for a new element index ``k`` with leading monomial ``lk``."""

    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    new = [(i, _lcm(basis_leads[i], lk)) for i in range(k) if alive[i]]
    # criterion M: drop new pairs whose lcm is a proper multiple of another new lcm
    kept = []
    for idx, (i, L) in enumerate(new):
        if any(_divides(L2, L) and L2 != L for _, L2 in new):
            continue
        kept.append((i, L))
    # criterion F: among equal lcms keep one, preferring a coprime pair
    by_lcm: dict = {}
    for i, L in kept:
        prev = by_lcm.get(L)
        if prev is None or (coprime(basis_leads[i], lk) and not coprime(basis_leads[prev], lk)):
            by_lcm[L] = i
    # product criterion: coprime leading monomials need no S-polynomial
    fresh = [(i, k, L) for L, i in by_lcm.items() if not coprime(basis_leads[i], lk)]
    # criterion B on old pairs
    old = []
    for i, j, L in pairs:
        if _divides(lk, L) and _lcm(basis_leads[i], lk) != L and _lcm(basis_leads[j], lk) != L:
            continue
        old.append((i, j, L))
    # drop basis elements whose leading monomial is a multiple of lk
    for i in range(k):
        if alive[i] and _divides(lk, basis_leads[i]):
            alive[i] = False
    return old + fresh


def buchberger(sys: BiSystem, order: MonomialOrder = DRL) -> GroebnerBasisBigraded:
    """Reduced, monic Gröbner basis of the ideal generated by ``sys``."""
    F = sys.field
    F.require_exact("buchberger")
    key = order.key_function(sys.n + sys.m + 2)
    E = _Engine(F, key)

    def pair_key(p):
        i, j, L = p
        return (sum(L), key(L), i, j)

    basis: list[dict] = []
    leads: list[Monomial] = []
    alive: list[bool] = []
    pairs: list = []

    def add(f: dict):
        nonlocal pairs
        f = E.monic(f)
        lf = E.lead(f)
        basis.append(f)
        leads.append(lf)
        alive.append(True)
        pairs = _update(pairs, leads, alive, len(basis) - 1, lf)

    gens = sorted((dict(g.terms) for g in sys.generators if g.terms), key=lambda f: key(E.lead(f)))
    for f in gens:
        active = [i for i in range(len(basis)) if alive[i]]
        r = E.reduce(f, [basis[i] for i in active], [leads[i] for i in active])
        if r:
            add(r)
    while pairs:
        pairs.sort(key=pair_key)
        i, j, _ = pairs.pop(0)
        s = E.spoly(basis[i], basis[j])
        active = [t for t in range(len(basis)) if alive[t]]
        r = E.reduce(s, [basis[t] for t in active], [leads[t] for t in active])
        if r:
            add(r)

    reduced = _interreduce(E, [basis[i] for i in range(len(basis)) if alive[i]])
    ring = sys.ring
    elements = [BiPoly(ring, f) for f in reduced]
    return GroebnerBasisBigraded(sys, order, elements, key)


def _interreduce(E: _Engine, polys: list[dict]) -> list[dict]:
    polys = [E.monic(f) for f in polys if f]
    leads = [E.lead(f) for f in polys]
    keep = [k for k, lk in enumerate(leads)
            if not any(_divides(leads[j], lk) and (leads[j] != lk or j < k) for j in range(len(polys)) if j != k)]
    polys = [polys[k] for k in keep]
    leads = [leads[k] for k in keep]
    out = []
    for k, f in enumerate(polys):
        others = [polys[j] for j in range(len(polys)) if j != k]
        olead = [leads[j] for j in range(len(polys)) if j != k]
        tail = {u: c for u, c in f.items() if u != leads[k]}
        r = E.reduce(tail, others, olead)
        r[leads[k]] = E.F.one
        out.append(r)
    out.sort(key=lambda f: E.key(E.lead(f)))
    return out


def gb_reduce(p: BiPoly, gb: GroebnerBasisBigraded) -> BiPoly:
    """Normal form of ``p`` with respect to ``gb``."""
    E = _Engine(gb.system.field, gb.key)
    basis = [dict(g.terms) for g in gb.elements]
    return BiPoly(gb.ring, E.reduce(dict(p.terms), basis, gb.leading_monomials))


def standard_monomials(gb: GroebnerBasisBigraded, deg) -> list[Monomial]:
    """Monomials of bidegree ``deg`` outside the leading-term ideal, in column order."""
    leads = gb.leading_monomials
    return [u for u in gb.ring.monomials(BiDegree(*deg)) if not any(_divides(l, u) for l in leads)]


def staircase_hf(gb: GroebnerBasisBigraded, deg) -> int:
    """Hilbert function read off the leading-term ideal."""
    return len(standard_monomials(gb, deg))


def spairs_reduce_to_zero(gb: GroebnerBasisBigraded) -> bool:
    """Post-hoc Buchberger criterion over all pairs."""
    E = _Engine(gb.system.field, gb.key)
    basis = [dict(g.terms) for g in gb.elements]
    leads = gb.leading_monomials
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if E.reduce(E.spoly(basis[i], basis[j]), basis, leads):
                return False
    return True


def minimal_monomial_generators(monos: Iterable[Monomial]) -> list[Monomial]:
    monos = sorted(set(monos), key=sum)
    out: list[Monomial] = []
    for u in monos:
        if not any(_divides(v, u) for v in out):
            out.append(u)
    return out


# -- bigeneric initial ideal ----------------------------------------------


@dataclass
class BiginResult:
    ring: BiRing
    generators: list[Monomial]
    stable: bool
    seeds: list
    per_seed: list[list[Monomial]]

    @property
    def bidegrees(self) -> list[BiDegree]:
        return sorted(self.ring.bidegree_of(u) for u in self.generators)

    def bidegree_set(self) -> set[tuple[int, int]]:
        return {tuple(d) for d in self.bidegrees}

    def to_json(self) -> dict:
        gens = sorted(self.generators, key=lambda u: (tuple(self.ring.bidegree_of(u)), drl_key(u, self.ring.n)))
        return {"generators": [{"monomial": self.ring.mon_str(u), "bidegree": list(self.ring.bidegree_of(u))}
                               for u in gens],
                "stable": self.stable, "seeds": [str(s) for s in self.seeds]}


def _initial_ideal(sys: BiSystem, order: MonomialOrder) -> list[Monomial]:
    gb = buchberger(sys, order)
    return sorted(minimal_monomial_generators(gb.leading_monomials), key=gb.key)


def bigin(sys: BiSystem, seed=0, seeds: int = 3, order: MonomialOrder = DRL) -> BiginResult:
    """Initial ideal in random coordinates, by majority vote over ``seeds`` changes.

    ``seed="identity"`` skips the coordinate change (a single non-generic run).
    A disagreement between seeds emits :class:`SeedInstability`.
    """
    sys.field.require_exact("bigin")
    if seed == "identity":
        gens = _initial_ideal(sys, order)
        return BiginResult(sys.ring, gens, True, ["identity"], [gens])
    seed_list = [seed + k if isinstance(seed, int) else f"{seed}/{k}" for k in range(seeds)]
    runs = [_initial_ideal(change_coords(sys, s)[0], order) for s in seed_list]
    votes = Counter(tuple(r) for r in runs)
    winner, count = votes.most_common(1)[0]
    stable = count == len(runs)
    if not stable:
        warnings.warn(f"bigin differs across seeds {seed_list}: {len(votes)} distinct results",
                      SeedInstability, stacklevel=2)
    return BiginResult(sys.ring, list(winner), stable, seed_list, runs)


# -- consistency with the admissible region --------------------------------


@dataclass
class Cor55Report:
    checked: list[tuple[int, int]]
    violations: list[tuple[int, int]]
    skipped: list[tuple[int, int]]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "checked": [list(d) for d in self.checked],
                "violations": [list(d) for d in self.violations],
                "skipped": [list(d) for d in self.skipped]}


def cor55_report(probes: dict, bigin_degrees: Iterable) -> Cor55Report:
    """Check that no bigin generator sits just right of an admissible column.

    ``probes`` maps bidegrees (a, b) to admissibility.  A probe (a, b) counts
    as stably admissible when every probed (a, b') with b' >= b is admissible;
    for those, a generator of bidegree (a+1, b) is a violation.  Probes that
    are admissible but not stably so (some larger b' fails or was never
    probed at that a) are listed as skipped.
    """
    probes = {tuple(k): bool(v) for k, v in probes.items()}
    degs = {tuple(d) for d in bigin_degrees}
    checked, violations, skipped = [], [], []
    for (a, b), ok in sorted(probes.items()):
        if not ok:
            continue
        column = [v for (a2, b2), v in probes.items() if a2 == a and b2 >= b]
        if not all(column):
            skipped.append((a, b))
            continue
        checked.append((a, b))
        if (a + 1, b) in degs:
            violations.append((a + 1, b))
    return Cor55Report(checked, violations, skipped)


def admissible_probes(sys: BiSystem, amax: int, bmax: int, seed=0) -> dict:
    """Admissibility of every (a, b) in the box [0, amax] x [0, bmax]."""
    from .admissible import is_admissible

    return {(a, b): is_admissible(sys, (a, b), seed=seed) is not None
            for a in range(amax + 1) for b in range(bmax + 1)}


__all__ = ["MonomialOrder", "DRL", "GroebnerBasisBigraded", "buchberger", "gb_reduce",
           "standard_monomials", "staircase_hf", "spairs_reduce_to_zero", "minimal_monomial_generators",
           "BiginResult", "bigin", "SeedInstability", "Cor55Report", "cor55_report", "admissible_probes"]
