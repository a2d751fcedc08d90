"""Ring arithmetic, calculus, division, gcd, and serialization of Poly."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from xlegendre import InexactDivisionError, NEG_INFINITY, Poly, parse_rat, poly_gcd, rat_str

from helpers import sparse_poly

rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(rats, min_size=0, max_size=6).map(Poly)
points = st.fractions(min_value=-3, max_value=3, max_denominator=8)


# -- rational literals ------------------------------------------------------


def test_parse_rat_grammar():
    assert parse_rat("3/4") == Fraction(3, 4)
    assert parse_rat("-7") == Fraction(-7)
    assert parse_rat(" 26/5 ") == Fraction(26, 5)
    for bad in ("1.5", "a", "1/-2", "--3", "2/0x", ""):
        with pytest.raises(ValueError):
            parse_rat(bad)
    with pytest.raises(ZeroDivisionError):
        parse_rat("1/0")


def test_rat_str_always_carries_denominator():
    assert rat_str(Fraction(1)) == "1/1"
    assert rat_str(Fraction(-1, 2)) == "-1/2"


# -- construction and basic queries ----------------------------------------


def test_trailing_zeros_trimmed_and_zero_degree():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).is_zero
    assert Poly().degree == NEG_INFINITY
    assert Poly([5]).degree == 0
    # degree arithmetic stays consistent with the -inf sentinel
    assert Poly().degree + 3 == NEG_INFINITY
    assert max(Poly().degree, Poly([1]).degree) == 0


def test_coefficients_are_exact_fractions():
    p = Poly(["1/1", "0/1", "-1/2"])
    assert p.coeffs == (Fraction(1), Fraction(0), Fraction(-1, 2))
    assert p.coefficient(2) == Fraction(-1, 2)
    assert p.coefficient(99) == 0
    assert p.leading_coefficient == Fraction(-1, 2)


def test_mul_golden_difference_of_squares():
    assert Poly([1, 1]) * Poly([-1, 1]) == Poly([-1, 0, 1])


def test_add_identity():
    p = sparse_poly({0: -1, 2: 3}, 2)
    assert p + Poly.zero() == p


def test_mul_golden_legendre2_squared():
    # ((3z^2-1)/2)^2 expanded by hand: (9z^4 - 6z^2 + 1)/4
    p2 = Poly([Fraction(-1, 2), 0, Fraction(3, 2)])
    assert p2 * p2 == sparse_poly({0: 1, 2: -6, 4: 9}, 4)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys, polys)
def test_degree_of_product(a, b):
    if not a.is_zero and not b.is_zero:
        assert (a * b).degree == a.degree + b.degree
    else:
        assert (a * b).is_zero


# -- calculus ----------------------------------------------------------------


def test_differentiate_goldens():
    assert Poly([0, 0, 0, 1]).differentiate() == Poly([0, 0, 3])
    assert Poly([7]).differentiate().is_zero
    # derivative of the diagonal overlap (9z^5-10z^3+5z+4)/20 equals the
    # independently expanded square of the degree-2 Legendre polynomial
    overlap = sparse_poly({0: 4, 1: 5, 3: -10, 5: 9}, 20)
    assert overlap.differentiate() == sparse_poly({0: 1, 2: -6, 4: 9}, 4)


def test_antiderivative_goldens():
    assert Poly([1]).antiderivative_from_minus1() == Poly([1, 1])
    assert Poly([0, 1]).antiderivative_from_minus1() == Poly([Fraction(-1, 2), 0, Fraction(1, 2)])
    p22 = sparse_poly({0: 1, 2: -6, 4: 9}, 4)
    assert p22.antiderivative_from_minus1() == sparse_poly({0: 4, 1: 5, 3: -10, 5: 9}, 20)


@given(polys)
def test_antiderivative_roundtrip(p):
    f = p.antiderivative_from_minus1()
    assert f.differentiate() == p
    assert f.evaluate(-1) == 0


def test_evaluate_goldens():
    assert Poly([Fraction(-1, 2), 0, Fraction(1, 2)]).evaluate(1) == 0
    assert Poly([1, 1]).evaluate(1) == 2
    r22 = sparse_poly({0: 4, 1: 5, 3: -10, 5: 9}, 20)
    assert r22.evaluate(1) == Fraction(2, 5)


@given(polys, polys, points)
def test_evaluate_is_ring_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


# -- division and gcd ---------------------------------------------------------


@given(polys, polys)
def test_divmod_invariant(a, b):
    if b.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


@given(polys, polys)
def test_exact_division_of_products(a, b):
    if a.is_zero:
        return
    assert (a * b).exact_div(a) == b


def test_exact_div_rejects_remainder():
    with pytest.raises(InexactDivisionError):
        Poly([1, 0, 1]).exact_div(Poly([1, 1]))
    assert Poly([1, 0, 1]).exact_div_or_none(Poly([1, 1])) is None


@given(polys, polys, polys)
def test_gcd_divides_both_and_contains_common_factor(a, b, c):
    if a.is_zero and b.is_zero:
        return
    g = poly_gcd(a * c, b * c)
    if not (a * c).is_zero:
        assert (a * c).exact_div_or_none(g) is not None
    if not (b * c).is_zero:
        assert (b * c).exact_div_or_none(g) is not None
    if not c.is_zero and not (a.is_zero and b.is_zero):
        # the common factor must be contained in the gcd
        assert g.exact_div_or_none(c.monic()) is not None or poly_gcd(a, b).degree > 0


def test_gcd_is_monic():
    g = poly_gcd(Poly([2, 2]), Poly([-4, 0, 4]))
    assert g == Poly([1, 1])


def test_primitive_part_preserves_sign():
    p = Poly([Fraction(-4, 3), 0, Fraction(-8, 3)])
    pp = p.primitive_part()
    assert pp == Poly([-1, 0, -2])
    assert pp.leading_coefficient < 0


def test_pow():
    assert Poly([1, 1]) ** 4 == sparse_poly({0: 1, 1: 4, 2: 6, 3: 4, 4: 1})
    assert Poly([0, 2]) ** 0 == Poly.one()


# -- serialization -------------------------------------------------------------


def test_json_format_and_roundtrip():
    p = Poly([1, 0, Fraction(-1, 2)])
    assert p.to_json() == ["1/1", "0/1", "-1/2"]
    assert Poly.from_json(p.to_json()) == p


@given(polys)
def test_json_roundtrip_random(p):
    assert Poly.from_json(p.to_json()) == p
