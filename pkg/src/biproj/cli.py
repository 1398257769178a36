"""Command-line front end: ``biproj <command> <system.json> [options]``.

Every command prints one JSON document (``--out json``, the default) or a
short plain-text summary.  Exit codes: 0 success, 2 domain failure (no
admissible degree, singular maps, ...), 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction

from . import __version__
from .admissible import (BoundHypothesisWarning, find_admissible, is_admissible, koszul_bound,
                         macaulay_bound, projection_stab_degree)
from .bipoly import BiDegree, BiSystem, load_system, parse_poly
from .elimfglm import matrix_fglm, randomized_vector_fglm
from .errors import (BiprojError, DegreeMismatch, NotBihomogeneous, PolySyntaxError, ZeroPoint)
from .gb import MonomialOrder, admissible_probes, bigin, buchberger, cor55_report
from .kernelalg import FieldSpec
from .macaulay import hilbert_function, hilbert_table, quotient_basis
from .multmap import build_mult_maps, mult_map
from .numeigen import DEFAULT_TOL, eigenvalues, recover_points
from .verify import default_b, verify_exact, verify_numeric

SCHEMA = 1
INPUT_ERRORS = (PolySyntaxError, NotBihomogeneous, ZeroPoint, DegreeMismatch, OSError,
                json.JSONDecodeError)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(_sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _field(text: str | None) -> FieldSpec | None:
    if text is None:
        return None
    t = text.strip()
    if t.upper() == "Q":
        return FieldSpec.rationals()
    try:
        p = int(t[2:] if t.lower().startswith("fp") else t)
    except ValueError:
        raise InputError(f"--field must be Q or a prime, got {text!r}") from None
    try:
        return FieldSpec.prime(p)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _degree(pair) -> BiDegree | None:
    return None if pair is None else BiDegree(*pair)


def _scalar(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, complex):
        return v.real if v.imag == 0 else [v.real, v.imag]
    return v


def _load(args) -> BiSystem:
    return load_system(args.system, _field(args.field))


def _form(sys: BiSystem, text: str | None):
    return None if text is None else parse_poly(text, sys.ring)


def _certify(sys: BiSystem, args, prefer_x0: bool = True):
    """Certificate at ``--degree`` or the first one found from the stabilization degree."""
    h = _form(sys, args.h)
    prefer = sys.ring.x(0) if prefer_x0 and h is None else None
    deg = _degree(args.degree)
    if deg is not None:
        cert = None
        if h is None and prefer is not None:
            cert = is_admissible(sys, deg, h=prefer)
        if cert is None:
            cert = is_admissible(sys, deg, h=h, seed=args.seed)
        if cert is None:
            raise _DomainFailure(f"bidegree {tuple(deg)} is not admissible (3 random forms tried)")
        return cert
    start = (0, projection_stab_degree(sys))
    return find_admissible(sys, seed=args.seed, start=start, h=h, prefer=prefer)


class _DomainFailure(BiprojError):
    pass


# -- commands -----------------------------------------------------------


def cmd_hilbert(args) -> dict:
    sys = _load(args)
    box = args.table or ((args.amax, args.bmax) if args.amax is not None or args.bmax is not None else None)
    if box:
        amax, bmax = box
        if amax is None or bmax is None:
            raise InputError("--amax and --bmax go together")
        table = hilbert_table(sys, amax, bmax)
        return {"table": table, "csv": "\n".join(",".join(map(str, row)) for row in table)}
    deg = _degree(args.degree) or sys.max_degree()
    return {"degree": list(deg), "hf": hilbert_function(sys, deg)}


def cmd_admissible(args) -> dict:
    sys = _load(args)
    h = _form(sys, args.h)
    deg = _degree(args.degree)
    if deg is not None:
        cert = is_admissible(sys, deg, h=h, seed=args.seed)
        if cert is None:
            return {"degree": list(deg), "admissible": False, "form": None, "hf": hilbert_function(sys, deg),
                    "seeds_tried": 1 if h is not None else 3}
        return {**cert.to_json(), "admissible": True}
    cert = find_admissible(sys, cap=_degree(args.cap), seed=args.seed, h=h)
    return {**cert.to_json(), "admissible": True}


def cmd_bounds(args) -> dict:
    sys = _load(args)
    import warnings
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BoundHypothesisWarning)
        mac = macaulay_bound(sys)
    notes = [str(w.message) for w in caught if issubclass(w.category, BoundHypothesisWarning)]
    return {"macaulay": list(mac), "koszul": list(koszul_bound(sys)),
            "stab_b": projection_stab_degree(sys), "warnings": notes}


def cmd_multmaps(args) -> dict:
    sys = _load(args)
    cert = _certify(sys, args)
    maps = build_mult_maps(sys, cert)
    return {"certificate": cert.to_json(), **maps.to_json()}


def _snap(z: complex, tol: float):
    """Rational with small denominator within ``tol`` of a real value, else None."""
    if abs(z.imag) > tol:
        return None
    q = Fraction(z.real).limit_denominator(10**4)
    return q if abs(float(q) - z.real) <= tol * max(1.0, abs(z.real)) else None


def _verify_recovered(sys: BiSystem, coords, tol: float):
    snapped = [_snap(complex(c), 1e-9) for c in coords]
    if sys.field.kind == "Q" and all(q is not None for q in snapped):
        return verify_exact(sys, snapped)
    return verify_numeric(sys, coords, tol=max(tol, 1e-10))


def cmd_solve(args) -> dict:
    sys = _load(args)
    report: dict = {"bounds": {"koszul": list(koszul_bound(sys)), "stab_b": projection_stab_degree(sys)}}
    cert = _certify(sys, args)
    report["degree_used"] = list(cert.degree)
    report["certificate"] = cert.to_json()
    maps = build_mult_maps(sys, cert)
    if args.randomized:
        gb = randomized_vector_fglm(maps, order=args.order, seed=args.seed)
    else:
        gb = matrix_fglm(maps, order=args.order)
    report.update(gb.to_json())
    report["maps"] = maps.to_json()
    if sys.field.kind != "Q":
        report["points"] = None
        report["note"] = "point recovery needs a system over Q"
        return report
    pts = recover_points(maps, seed=args.seed, tol=args.tol, gb=gb)
    b = default_b(sys)
    out = []
    for p in pts.points:
        entry = p.to_json()
        mr = _verify_recovered(sys, p.coords, args.tol)
        entry["verification"] = mr.to_json()
        entry["extraneous"] = not mr.in_projection
        out.append(entry)
    report["points"] = out
    report["verify_b"] = b
    report["multiplicity_sum"] = pts.multiplicity_sum
    return report


def cmd_eigen(args) -> dict:
    sys = _load(args)
    cert = _certify(sys, args)
    maps = build_mult_maps(sys, cert)
    out = {"certificate": cert.to_json()}
    if args.g is not None:
        g = parse_poly(args.g, sys.ring)
        M = mult_map(sys, cert, g)
        evs = eigenvalues(M, args.tol)
        out["g"] = str(g)
        out["eigenvalues"] = [{"value": _scalar(e.exact) if e.exact is not None else _scalar(e.value),
                               "multiplicity": e.multiplicity} for e in evs]
    pts = recover_points(maps, seed=args.seed, tol=args.tol)
    out.update(pts.to_json())
    out["multiplicity_sum"] = pts.multiplicity_sum
    return out


def cmd_verify(args) -> dict:
    sys = _load(args)
    try:
        raw = [t.strip() for t in args.point.split(",")]
        coords = [float(t) for t in raw] if args.numeric else [Fraction(t) for t in raw]
    except ValueError:
        raise InputError(f"cannot parse point {args.point!r}") from None
    if len(coords) != sys.n + 1:
        raise InputError(f"point needs {sys.n + 1} coordinates, got {len(coords)}")
    if args.numeric:
        if all(c == 0 for c in coords):
            raise ZeroPoint("cannot verify the zero vector")
        return verify_numeric(sys, coords, tol=args.tol, b=args.b).to_json()
    return verify_exact(sys, coords, b=args.b).to_json()


def cmd_gb(args) -> dict:
    sys = _load(args)
    try:
        order = MonomialOrder.parse(args.order)
        order.key_function(sys.n + sys.m + 2)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return buchberger(sys, order).to_json()


def cmd_bigin(args) -> dict:
    sys = _load(args)
    if sys.field.kind == "Q" and args.field is None:
        sys = sys.with_field(FieldSpec.prime())
    res = bigin(sys, seed=args.seed)
    out = res.to_json()
    if args.report:
        amax, bmax = args.report
        probes = admissible_probes(sys, amax, bmax, seed=args.seed)
        out["consistency"] = cor55_report(probes, res.bidegrees).to_json()
    return out


COMMANDS = {"hilbert": cmd_hilbert, "admissible": cmd_admissible, "bounds": cmd_bounds,
            "multmaps": cmd_multmaps, "solve": cmd_solve, "eigen": cmd_eigen, "verify": cmd_verify,
            "gb": cmd_gb, "bigin": cmd_bigin}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--field", default=None, help="Q or a prime p; overrides the system file")
    common.add_argument("--out", choices=["json", "text"], default="json")
    common.add_argument("--tol", type=float, default=None, help="numeric tolerance")

    parser = _Parser(prog="biproj", description="Projections of bihomogeneous systems.")
    parser.add_argument("--version", action="version", version=f"biproj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("system", help="JSON system file")
        return p

    p = add("hilbert", "Hilbert function values")
    p.add_argument("--degree", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--amax", type=int, help="table of HF(a,b) for a <= AMAX, b <= BMAX")
    p.add_argument("--bmax", type=int)
    p.add_argument("--table", nargs=2, type=int, metavar=("AMAX", "BMAX"), help="same as --amax/--bmax")

    p = add("admissible", "certify or search for an admissible bidegree")
    p.add_argument("--degree", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--cap", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--h", help="linear form in x to use instead of random ones")

    add("bounds", "a-priori admissible degree bounds")

    for name, help_ in (("multmaps", "multiplication matrices"), ("solve", "full pipeline"),
                        ("eigen", "eigenvalues and points")):
        p = add(name, help_)
        p.add_argument("--degree", nargs=2, type=int, metavar=("A", "B"))
        p.add_argument("--h", help="admissible linear form (default: x0 if admissible, else random)")
        if name == "solve":
            p.add_argument("--order", choices=["lex", "drl"], default="lex")
            p.add_argument("--randomized", action="store_true", help="vector FGLM with a random start vector")
        if name == "eigen":
            p.add_argument("--g", help="form of bidegree (k,0); reports eigenvalues of g/h^k")

    p = add("verify", "membership of a point in the projection")
    p.add_argument("--point", required=True, help='comma separated coordinates, e.g. "1,1,1"')
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--b", type=int, default=None, help="y-degree of the test")

    p = add("gb", "Groebner basis")
    p.add_argument("--order", default="drl", help="drl, lex, or a comma separated variable permutation")

    p = add("bigin", "bigeneric initial ideal (over F_65521 unless --field is given)")
    p.add_argument("--report", nargs=2, type=int, metavar=("AMAX", "BMAX"),
                   help="also check consistency with admissibility on [0,AMAX]x[0,BMAX]")
    return parser


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(t, (dict, list)) for t in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent) if isinstance(v, dict) else f"{pad}- {_inline(v)}" for v in obj)
    return pad + _inline(obj)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(t) for t in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(t)}" for k, t in v.items()) + "}"
    return str(v)


def run(argv=None) -> tuple[int, dict, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is None:
        args.tol = 1e-10 if args.command == "verify" else DEFAULT_TOL
    try:
        payload = COMMANDS[args.command](args)
        code = 0
    except (InputError, *INPUT_ERRORS) as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, 3
    except BiprojError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, 2
    return code, {"schema": SCHEMA, "command": args.command, **payload}, args.out


def main(argv=None) -> int:
    code, payload, fmt = run(argv)
    if fmt == "text" and "csv" in payload:
        print(payload["csv"])
    elif fmt == "text":
        print(_text(payload))
    else:
        print(json.dumps(payload, indent=2, default=_scalar))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
