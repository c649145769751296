import json
import math
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from permvol.ratpoly import (
    IncompatibleRadicand,
    MissingVariable,
    RationalPoly,
    ScaledPoly,
    add,
    evaluate,
    evaluate_float,
    from_json,
    mul,
    parse_rational,
    render,
    shift,
    squarefree_split,
)

x1, x2, x3 = (RationalPoly.var(i) for i in (1, 2, 3))
half = mpq(1, 2)

V3_TERMS = {
    ((1, 3),): mpq(1, 3),
    ((1, 2), (2, 1)): 2,
    ((1, 1), (2, 2)): 4,
    ((2, 3),): mpq(4, 3),
    ((1, 2), (3, 1)): 3,
    ((1, 1), (2, 1), (3, 1)): 12,
    ((2, 2), (3, 1)): 4,
    ((1, 1), (3, 2)): 3,
    ((2, 1), (3, 2)): 2,
    ((3, 3),): mpq(1, 3),
}
V3 = ScaledPoly(RationalPoly(V3_TERMS))


# strategies -----------------------------------------------------------------

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(mpq)
monomials = st.dictionaries(st.integers(1, 4), st.integers(1, 3), max_size=3).map(
    lambda d: tuple(sorted(d.items()))
)
polys = st.dictionaries(monomials, coeffs, max_size=5).map(RationalPoly)
squarefree = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 15, 30])


# add ------------------------------------------------------------------------

def test_add_same_radicand():
    assert add(ScaledPoly(x1), ScaledPoly(2 * x1)) == ScaledPoly(3 * x1)


def test_add_zero_is_identity_whatever_the_radicand():
    assert add(ScaledPoly(0), ScaledPoly(x2, 3)) == ScaledPoly(x2, 3)
    assert add(ScaledPoly(x2, 3), ScaledPoly(0)) == ScaledPoly(x2, 3)


def test_add_incompatible_radicands():
    with pytest.raises(IncompatibleRadicand):
        add(ScaledPoly(x1, 2), ScaledPoly(x1, 3))


def test_cancellation_resets_radicand():
    s = ScaledPoly(x1, 5) - ScaledPoly(x1, 5)
    assert s == ScaledPoly(0) and s.radicand == 1


# mul ------------------------------------------------------------------------

def test_mul_square_roots_combine():
    assert mul(ScaledPoly(x1, 2), ScaledPoly(x2, 2)) == ScaledPoly(2 * x1 * x2, 1)
    assert mul(ScaledPoly(x1, 2), ScaledPoly(x1, 3)) == ScaledPoly(x1 * x1, 6)


def test_mul_hand_expansion():
    # G_{2,2}[0] * G_{1,1}[0] for the 2-Dyck path NNEE
    p = mul(ScaledPoly(half * x1 + x2), ScaledPoly(x1))
    assert p == ScaledPoly(half * x1 * x1 + x1 * x2)


def test_constructor_absorbs_square_part():
    assert ScaledPoly(x1, 12) == ScaledPoly(2 * x1, 3)
    assert ScaledPoly(x1, 49).radicand == 1


def test_sqrt_of_rational():
    r = ScaledPoly.sqrt_of(mpq(3, 2))  # sqrt(6)/2
    assert r == ScaledPoly(half, 6)
    assert ScaledPoly.sqrt_of(mpq(9, 4)) == ScaledPoly(mpq(3, 2))


@settings(max_examples=200)
@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_mul_radicand_is_squarefree(a, b):
    r = mul(ScaledPoly(x1, a), ScaledPoly(x2, b))
    s, f = squarefree_split(r.radicand)
    assert s == 1
    # value check: coefficient^2 * radicand == a * b
    c = r.poly.coefficient(((1, 1), (2, 1)))
    assert c * c * r.radicand == a * b


@pytest.mark.parametrize("m, expected", [(1, (1, 1)), (12, (2, 3)), (72, (6, 2)), (97, (1, 97)), (10**4, (100, 1))])
def test_squarefree_split(m, expected):
    assert squarefree_split(m) == expected


@given(st.integers(1, 10**6))
def test_squarefree_split_reconstructs(m):
    s, f = squarefree_split(m)
    assert s * s * f == m
    assert all(f % (p * p) for p in range(2, math.isqrt(f) + 1))


# ring axioms ------------------------------------------------------------------

@given(polys, polys, polys, squarefree)
def test_ring_axioms(p, q, r, rad):
    a, b, c = ScaledPoly(p, rad), ScaledPoly(q, rad), ScaledPoly(r, rad)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ScaledPoly(0) == a
    assert a * ScaledPoly(1) == a


# shift ------------------------------------------------------------------------

def test_shift_examples():
    assert shift(x1 + 2 * x2, 1) == x2 + 2 * x3
    p = half * x2 + x3
    assert shift(p, 0) == p
    assert shift(p, 2) == half * RationalPoly.var(4) + RationalPoly.var(5)


@given(polys, polys, st.integers(0, 5), st.integers(0, 5))
def test_shift_is_degree_preserving_homomorphism(p, q, u, v):
    assert shift(p * q, u) == shift(p, u) * shift(q, u)
    assert shift(p + q, u) == shift(p, u) + shift(q, u)
    assert shift(shift(p, u), v) == shift(p, u + v)
    assert shift(p, u).degree() == p.degree()


def test_shift_scaled_keeps_radicand():
    assert shift(ScaledPoly(x1, 7), 3) == ScaledPoly(RationalPoly.var(4), 7)


# evaluate -----------------------------------------------------------------------

def test_evaluate_v3_at_ones():
    assert evaluate(V3, [1, 1, 1]) == (32, 1)


def test_evaluate_homogeneous_at_zero():
    assert evaluate(V3, [0, 0, 0]) == (0, 1)


def test_evaluate_scaled():
    value, r = evaluate(ScaledPoly(x1, 2), [3])
    assert (value, r) == (3, 2)
    assert evaluate_float(ScaledPoly(x1, 2), [3]) == pytest.approx(3 * math.sqrt(2), rel=1e-15)


def test_evaluate_missing_variable():
    with pytest.raises(MissingVariable):
        evaluate(V3, [1, 1])


def test_evaluate_accepts_fractions():
    assert evaluate(ScaledPoly(x1 * x2), [Fraction(1, 2), Fraction(2, 3)])[0] == mpq(1, 3)


@given(st.fractions(0, 10, max_denominator=9), st.lists(st.fractions(0, 10, max_denominator=9), min_size=3, max_size=3))
def test_homogeneity(t, x):
    scaled = [t * v for v in x]
    assert V3.poly.evaluate(scaled) == mpq(t) ** 3 * V3.poly.evaluate(x)


def test_floats_rejected():
    with pytest.raises(TypeError):
        RationalPoly.var(1, 0.5)


# render ---------------------------------------------------------------------------

def test_render_plain():
    assert render(ScaledPoly(half * x2 + x3)) == "1/2*x2 + x3"
    assert render(ScaledPoly(0)) == "0"
    assert render(ScaledPoly(-x1 + 3)) == "-x1 + 3"
    assert render(ScaledPoly(x1 * x1 - half * x2, 3)) == "sqrt(3)*(x1^2 - 1/2*x2)"


def test_render_grlex_order():
    assert render(V3) == (
        "1/3*x1^3 + 2*x1^2*x2 + 3*x1^2*x3 + 4*x1*x2^2 + 12*x1*x2*x3 + 3*x1*x3^2"
        " + 4/3*x2^3 + 4*x2^2*x3 + 2*x2*x3^2 + 1/3*x3^3"
    )


def test_render_latex_matches_display_up_to_order():
    display = (
        r"\tfrac{1}{3}x_1^3 + 2x_1^2x_2 + 4x_1x_2^2 + \tfrac{4}{3}x_2^3 + 3x_1^2x_3"
        r" + 12x_1x_2x_3 + 4x_2^2x_3 + 3x_1x_3^2 + 2x_2x_3^2 + \tfrac{1}{3}x_3^3"
    )
    assert sorted(render(V3, "latex").split(" + ")) == sorted(display.split(" + "))


def test_render_latex_braces_multidigit():
    assert render(ScaledPoly(RationalPoly.var(12) ** 10, 2), "latex") == r"\sqrt{2}\left(x_{12}^{10}\right)"


def test_render_json_schema():
    data = json.loads(render(ScaledPoly(half * x2 + x3, 3), "json"))
    assert data == {
        "radicand": 3,
        "terms": [{"coeff": "1/2", "exps": {"2": 1}}, {"coeff": "1", "exps": {"3": 1}}],
    }


def test_render_unknown_format():
    with pytest.raises(ValueError):
        render(V3, "xml")


@given(polys, squarefree)
def test_json_round_trip(p, rad):
    s = ScaledPoly(p, rad)
    back = from_json(render(s, "json"))
    assert back == s
    assert render(back, "plain") == render(s, "plain")
    assert render(back, "latex") == render(s, "latex")


def test_from_json_rejects_duplicates():
    bad = {"radicand": 1, "terms": [{"coeff": "1", "exps": {"1": 1}}, {"coeff": "2", "exps": {"1": 1}}]}
    with pytest.raises(ValueError):
        from_json(bad)


# parsing ----------------------------------------------------------------------------

@pytest.mark.parametrize("text, value", [("3", 3), ("-3/6", mpq(-1, 2)), ("+7/2", mpq(7, 2)), (" 0 ", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "1/0", "a/b", "", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_immutability():
    s = ScaledPoly(x1, 2)
    with pytest.raises(AttributeError):
        s.radicand = 3


def test_pickle_round_trip():
    import pickle

    assert pickle.loads(pickle.dumps(V3)) == V3
