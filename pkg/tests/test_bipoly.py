import json
import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fixtures import FP, Q, RUNNING, running
from biproj.bipoly import (BiDegree, BiRing, BiSystem, change_coords, change_coords_x, load_system,
                           monomials_of, multiply, normalize_point, parse_poly, specialize_x)
from biproj.errors import NotBihomogeneous, PolySyntaxError, ZeroPoint
from biproj.macaulay import hilbert_function

R22 = BiRing(2, 2, Q)


def test_parse_linear_generator():
    f = parse_poly("2*x0 - x1 - x2", R22)
    assert f.bidegree == (1, 0) and len(f) == 3


def test_parse_mixed_generator():
    assert parse_poly("x1*y1^2 - x2*y1^2", R22).bidegree == (1, 2)


def test_parse_not_bihomogeneous():
    with pytest.raises(NotBihomogeneous) as exc:
        parse_poly("x0 + y0", R22)
    assert exc.value.degrees == [(0, 1), (1, 0)]


@pytest.mark.parametrize("text", ["x0 +", "x3*y0", "z1", "x0**y0", "open('f')", "x0/y0"])
def test_parse_syntax_errors(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text, R22)


def test_parse_rational_and_parentheses():
    f = parse_poly("(x0 - x1)*(x0 + x1)/2", R22)
    assert f == parse_poly("1/2*x0^2 - 1/2*x1^2", R22)


def test_monomial_counts():
    assert len(monomials_of((2, 2), 2, 2)) == 36
    assert monomials_of((0, 0), 3, 1) == [(0,) * 6]
    assert set(monomials_of((1, 1), 1, 1)) == {(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
def test_monomials_bijection(a, b, n, m):
    mons = monomials_of((a, b), n, m)
    assert len(mons) == len(set(mons)) == comb(a + n, n) * comb(b + m, m)
    assert all(sum(u[: n + 1]) == a and sum(u[n + 1:]) == b for u in mons)


def test_column_order_is_degrevlex_with_y_above_x():
    mons = R22.monomials((0, 2))
    names = [R22.mon_str(u) for u in mons]
    # decreasing: y2^2 > y1*y2 > y1^2 > y0*y2 > y0*y1 > y0^2
    assert names == ["y2^2", "y1*y2", "y1^2", "y0*y2", "y0*y1", "y0^2"]
    assert R22.key(R22.var("y0").leading_monomial()) > R22.key(R22.var("x2").leading_monomial())


def test_multiply_examples():
    f = parse_poly("x1*y2 - x2*y2", R22)
    assert multiply(f, R22.one()) == f
    assert parse_poly("x0 - x1", R22) * parse_poly("x0 + x1", R22) == parse_poly("x0^2 - x1^2", R22)
    g = f * R22.y(0)
    assert g.bidegree == (1, 2) and len(g) == 2  # (1,1) + (0,1)


def _to_sympy(f):
    syms = sympy.symbols(" ".join(f.ring.names))
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**e for s, e in zip(syms, mon)])
               for mon, c in f.terms.items())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 1)]),
       st.sampled_from([(1, 0), (0, 2), (1, 1)]))
def test_product_matches_sympy_and_degrees_add(seed, d1, d2):
    rng = random.Random(seed)
    f, g = R22.random_form(d1, rng, 5), R22.random_form(d2, rng, 5)
    fg = f * g
    assert sympy.expand(_to_sympy(fg) - _to_sympy(f) * _to_sympy(g)) == 0
    if f and g:
        assert fg.bidegree == BiDegree(*d1) + BiDegree(*d2)


def test_bidegree_partial_order():
    assert BiDegree(1, 2).leq((1, 3)) and not BiDegree(2, 0).leq((1, 5))
    assert BiDegree(1, 2) + (1, 0) == (2, 2)


def test_specialize_examples():
    assert specialize_x(parse_poly("2*x0 - x1 - x2", R22), [1, 1, 1]).is_zero()
    f = specialize_x(parse_poly("x1*y2 - x2*y2", R22), [1, 0, 2])
    assert f.bidegree == (0, 1) and list(f.terms.values()) == [-2]
    g = parse_poly("y0^2", R22)
    assert list(specialize_x(g, [3, 1, 7]).terms.values()) == [1]


def test_specialize_zero_point():
    with pytest.raises(ZeroPoint):
        specialize_x(parse_poly("x0*y0", R22), [0, 0, 0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_specialize_is_multiplicative(seed):
    rng = random.Random(seed)
    f = R22.random_form((1, 1), rng, 5)
    g = R22.random_form((2, 0), rng, 5)
    xi = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
    if all(v == 0 for v in xi):
        xi[0] = Fraction(1)
    assert specialize_x(f * g, xi) == specialize_x(f, xi) * specialize_x(g, xi)


def test_normalize_point():
    assert normalize_point([0, 2, 4], Q) == [0, 1, 2]


def test_system_json_roundtrip(tmp_path):
    sys = running(FP)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(sys.to_json()))
    back = load_system(path)
    assert back.field == FP and back.generators == sys.generators


def test_system_json_malformed():
    with pytest.raises(PolySyntaxError):
        BiSystem.from_json({"n": 1, "generators": []})


def test_change_coords_identity():
    sys = running()
    same, A = change_coords_x(sys, "identity")
    assert same.generators == sys.generators and A.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_change_coords_keeps_bidegrees_and_hilbert_function(seed):
    sys = running()
    for changed in (change_coords_x(sys, seed)[0], change_coords(sys, seed)[0]):
        assert changed.degrees == sys.degrees
        for d in [(1, 1), (2, 2), (2, 3), (3, 1)]:
            assert hilbert_function(changed, d) == hilbert_function(sys, d)


def test_change_coords_makes_x0_admissible():
    from biproj.admissible import is_admissible

    changed, _ = change_coords_x(running(), 3)
    assert is_admissible(changed, (2, 2), h=changed.ring.x(0)) is not None


def test_running_generator_strings_roundtrip():
    sys = running()
    assert [parse_poly(str(f), sys.ring) for f in sys.generators] == sys.generators
    assert len(sys.generators) == len(RUNNING)
