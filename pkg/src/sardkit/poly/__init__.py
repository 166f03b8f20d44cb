from .polynomial import (
    Poly, NotDivisible, exact_divide, divmod_poly, divides, compose, translate,
    monomial_content, divide_monomial, default_names, evaluate,
)
from .parser import parse_poly, PolySyntaxError, UnknownVariable
from .gcd import poly_gcd, squarefree, integer_primitive, DegreeCapExceeded, MAX_SQUAREFREE_DEGREE
from .fields import (
    PolyVectorField, PolyMap, directional, lie_bracket, divergence, pullback, det3,
    as_fraction_point,
)

__all__ = [
    "Poly", "NotDivisible", "exact_divide", "divmod_poly", "divides", "compose", "translate",
    "monomial_content", "divide_monomial", "default_names", "evaluate",
    "parse_poly", "PolySyntaxError", "UnknownVariable",
    "poly_gcd", "squarefree", "integer_primitive", "DegreeCapExceeded", "MAX_SQUAREFREE_DEGREE",
    "PolyVectorField", "PolyMap", "directional", "lie_bracket", "divergence", "pullback",
    "det3", "as_fraction_point",
]
