"""Multivariate gcd over Q by subresultant pseudo-remainder sequences.

Polynomials are viewed recursively as univariate in a main variable with
coefficients in the remaining ones.  Only the pieces needed for squarefree
reduction are provided.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm
from typing import Dict

from .polynomial import Poly, exact_divide

MAX_SQUAREFREE_DEGREE = 12


class DegreeCapExceeded(ValueError):
    pass


def _coeffs_in(p: Poly, v: int) -> Dict[int, Poly]:
    """Split ``p`` as sum_k c_k * x_v^k; c_k does not involve x_v."""
    groups: Dict[int, dict] = {}
    for e, c in p.items():
        k = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        groups.setdefault(k, {})[ne] = c
    return {k: Poly(p.arity, t) for k, t in groups.items()}


def _lc_in(p: Poly, v: int) -> Poly:
    cs = _coeffs_in(p, v)
    return cs[max(cs)]


def _xpow(v: int, k: int, n: int) -> Poly:
    return Poly.var(v, n, k) if k else Poly.const(1, n)


def integer_primitive(p: Poly) -> Poly:
    """Scale ``p`` to integer coefficients with gcd 1 and positive leading coefficient."""
    if p.is_zero():
        return p
    den = 1
    for _, c in p.items():
        den = lcm(den, c.denominator)
    g = 0
    for _, c in p.items():
        g = igcd(g, int(c * den))
    q = p * Fraction(den, g)
    if q.leading_coeff() < 0:
        q = -q
    return q


def _content(p: Poly, v: int) -> Poly:
    """gcd of the coefficients of ``p`` viewed in x_v."""
    g = None
    for c in _coeffs_in(p, v).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Poly.const(1, p.arity)
    return g


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder lc(b)^(da-db+1) * a mod b in x_v."""
    da, db = a.degree_in(v), b.degree_in(v)
    lb = _lc_in(b, v)
    r = a
    e = da - db + 1
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = _lc_in(r, v)
        r = lb * r - lr * _xpow(v, dr - db, a.arity) * b
        e -= 1
    if e > 0:
        r = r * (lb ** e)
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized by :func:`integer_primitive`."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    n = a.arity
    if a.is_zero():
        return integer_primitive(b)
    if b.is_zero():
        return integer_primitive(a)
    if a.is_constant() or b.is_constant():
        return Poly.const(1, n)
    va, vb = set(a.variables()), set(b.variables())
    v = min(va | vb)
    if v not in va or v not in vb:
        # the gcd cannot involve x_v; reduce to the content of the one that has it
        if v in va:
            return poly_gcd(_content(a, v), b)
        return poly_gcd(a, _content(b, v))
    ca, cb = _content(a, v), _content(b, v)
    c = poly_gcd(ca, cb)
    A = exact_divide(a, ca)
    B = exact_divide(b, cb)
    if A.degree_in(v) < B.degree_in(v):
        A, B = B, A
    g = Poly.const(1, n)
    h = Poly.const(1, n)
    while True:
        d = A.degree_in(v) - B.degree_in(v)
        R = _prem(A, B, v)
        if R.is_zero():
            G = exact_divide(B, _content(B, v))
            return integer_primitive(c * G)
        if R.degree_in(v) == 0:
            return integer_primitive(c)
        A, B = B, exact_divide(R, g * h ** d)
        g = _lc_in(A, v)
        if d == 0:
            pass  # h unchanged
        elif d == 1:
            h = g
        else:
            h = exact_divide(g ** d, h ** (d - 1))


def squarefree(p: Poly) -> Poly:
    """Remove repeated factors; result is primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("squarefree of the zero polynomial")
    if p.total_degree() > MAX_SQUAREFREE_DEGREE:
        raise DegreeCapExceeded(
            f"total degree {p.total_degree()} exceeds the cap {MAX_SQUAREFREE_DEGREE}")
    if p.is_constant():
        return Poly.const(1, p.arity)
    g = p
    for i in range(p.arity):
        d = p.partial(i)
        if not d.is_zero():
            g = poly_gcd(g, d)
    return integer_primitive(exact_divide(p, g))

