"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from sardkit.poly import Poly, PolyVectorField

coeffs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def exponents(arity, max_deg):
    return st.tuples(*[st.integers(0, max_deg)] * arity).filter(lambda e: sum(e) <= max_deg)


def polys(arity=3, max_deg=3, max_terms=5):
    return st.dictionaries(exponents(arity, max_deg), coeffs, max_size=max_terms).map(
        lambda d: Poly(arity, d))


def fields(arity=3, max_deg=2, max_terms=3):
    return st.lists(polys(arity, max_deg, max_terms), min_size=arity, max_size=arity).map(
        PolyVectorField)
