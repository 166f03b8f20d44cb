from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _strategies import fields, polys
from sardkit.poly import (
    DegreeCapExceeded, NotDivisible, Poly, PolyVectorField, PolySyntaxError, UnknownVariable,
    compose, divides, divmod_poly, exact_divide, lie_bracket, parse_poly, poly_gcd, squarefree,
)

x1, x2, x3 = (Poly.var(i, 3) for i in range(3))


# -- ring axioms --------------------------------------------------------------------------

@settings(max_examples=500, deadline=None, derandomize=True)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero(3)
    assert p * Poly.const(1, 3) == p


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys(), st.integers(0, 2), st.integers(0, 2))
def test_partials_commute(p, i, j):
    assert p.partial(i).partial(j) == p.partial(j).partial(i)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys(), polys(), st.integers(0, 2))
def test_leibniz(p, q, i):
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(fields(), fields(), fields())
def test_jacobi_identity(X, Y, W):
    total = (lie_bracket(X, lie_bracket(Y, W)) + lie_bracket(Y, lie_bracket(W, X))
             + lie_bracket(W, lie_bracket(X, Y)))
    assert total.is_zero()


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys())
def test_parse_print_roundtrip(p):
    assert parse_poly(str(p)) == p


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys(max_deg=2), polys(max_deg=2))
def test_exact_divide_product(p, q):
    if q.is_zero():
        return
    assert exact_divide(p * q, q) == p


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys(max_deg=2), polys(max_deg=2))
def test_divmod_reconstructs(p, q):
    if q.is_zero():
        return
    quo, rem = divmod_poly(p, q)
    assert quo * q + rem == p


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3), polys(max_deg=1, max_terms=3))
def test_gcd_divides_both(a, b, c):
    if c.is_zero() or (a.is_zero() and b.is_zero()):
        return
    g = poly_gcd(a * c, b * c)
    assert divides(g, a * c) and divides(g, b * c)
    assert divides(c, g) or c.is_constant()


# -- parser -------------------------------------------------------------------------------

def test_parse_basic():
    p = parse_poly("x1^2*x2 - 3/2*x3")
    assert p == x1 ** 2 * x2 - Fraction(3, 2) * x3
    assert str(p) == "x1^2*x2 - 3/2*x3"


def test_parse_precedence_and_parens():
    assert parse_poly("-(x1 + 1)*(x1 + 1)") == -((x1 + 1) * (x1 + 1))
    assert parse_poly("x1 - x2*x3^2") == x1 - x2 * x3 * x3
    assert parse_poly("2*(x1 + x2)*x3") == 2 * x1 * x3 + 2 * x2 * x3
    assert parse_poly("- x1 + 1/2*x2") == -x1 + Fraction(1, 2) * x2
    with pytest.raises(PolySyntaxError):
        parse_poly("0.5*x2")


def test_parse_planar_names():
    p = parse_poly("-y + x*(x^2 + y^2)", 2)
    assert p.arity == 2 and p.total_degree() == 3


@pytest.mark.parametrize("text,offset", [
    ("x1 +", 4), ("x1 ** 2", 4), ("(x1)^2", 4), ("x1 $ x2", 3), ("", 0), ("2^3", 1),
])
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(PolySyntaxError) as ei:
        parse_poly(text)
    assert ei.value.offset == offset


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as ei:
        parse_poly("x1 + z")
    assert ei.value.offset == 5


def test_byte_offsets_count_utf8():
    with pytest.raises(PolySyntaxError) as ei:
        parse_poly("x1 + é")
    assert ei.value.pos == 5 and ei.value.offset == 5


# -- gcd and squarefree -------------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("-2*x1", "x1"),
    ("x1^2*x2", "x1*x2"),
    ("x2^2 - x3^2", "x2^2 - x3^2"),
    ("4*x1^3 - 4*x1", "x1^3 - x1"),
    ("(x1 + x2)*(x1 + x2)*(x1 + x2)*(x1 - 1)", "x1^2 + x1*x2 - x1 - x2"),
])
def test_squarefree(text, expected):
    assert squarefree(parse_poly(text)) == parse_poly(expected)


def test_squarefree_rejects_large_degree_and_zero():
    with pytest.raises(DegreeCapExceeded):
        squarefree(x1 ** 13)
    with pytest.raises(ValueError):
        squarefree(Poly.zero(3))


def test_gcd_examples():
    a = parse_poly("x1^2 - x2^2")
    b = parse_poly("x1^2 + 2*x1*x2 + x2^2")
    assert poly_gcd(a, b) == x1 + x2


def test_exact_divide_raises():
    with pytest.raises(NotDivisible):
        exact_divide(x1 + 1, x2)


def test_compose_and_evaluation():
    p = parse_poly("x1*x2 + x3^2")
    q = compose(p, [x1 + 1, x2, x3])
    assert q(Fraction(1), Fraction(2), Fraction(3)) == p(Fraction(2), Fraction(2), Fraction(3))


def test_vector_field_divergence_and_bracket():
    X = PolyVectorField.parse(["1", "0", "0"])
    Y = PolyVectorField.parse(["0", "1", "x1^2"])
    assert lie_bracket(X, Y).to_strings() == ["0", "0", "2*x1"]
    assert Y.divergence().is_zero()
