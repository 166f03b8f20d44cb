"""Comparison of a pulled-back Euclidean metric with the (u^a, u^b) model metric.

The local map is pi = (u^a, g2 + u^b + h2, g3 + u^b + h3).  At each grid
point off the divisor we compute the generalized eigenvalues of
J^T J (pulled-back metric) against M^T M (model metric), exactly when the
point is rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Sequence, Tuple

from ..poly import Poly, divides

Pair = Tuple[int, int]


class PreconditionError(ValueError):
    pass


def _mono(e: Sequence[int]) -> Poly:
    return Poly.monomial(tuple(e))


def _sqrt_exact(q: Fraction):
    n, d = q.numerator, q.denominator
    if n < 0:
        return None
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def generalized_eigs_2x2(P, Q):
    """Roots of det(P - l Q) = 0 for symmetric 2x2 P and positive definite Q.

    Exact Fractions when the discriminant is a rational square, floats otherwise.
    """
    a = Q[0][0] * Q[1][1] - Q[0][1] * Q[0][1]
    b = -(P[0][0] * Q[1][1] + P[1][1] * Q[0][0] - 2 * P[0][1] * Q[0][1])
    c = P[0][0] * P[1][1] - P[0][1] * P[0][1]
    disc = b * b - 4 * a * c
    if disc < 0:
        disc = Fraction(0)  # only from rounding-free cancellation; P,Q symmetric => real roots
    s = _sqrt_exact(disc)
    if s is not None:
        return (-b - s) / (2 * a), (-b + s) / (2 * a)
    sf = float(disc) ** 0.5
    return (-float(b) - sf) / (2 * float(a)), (-float(b) + sf) / (2 * float(a))


@dataclass
class HPComparison:
    k: object
    K: object
    grid: Tuple[Fraction, int]
    points: int


def check_hp_preconditions(alpha: Pair, beta: Pair, g: Sequence[Poly], h: Sequence[Poly]) -> None:
    if any(a > b for a, b in zip(alpha, beta)):
        raise PreconditionError(f"u^{alpha} does not divide u^{beta}")
    if alpha[0] * beta[1] - alpha[1] * beta[0] == 0:
        raise PreconditionError("alpha and beta must be linearly independent")
    pi1 = _mono(alpha)
    ub = _mono(beta)
    for i, gi in enumerate(g):
        if not divides(pi1, gi):
            raise PreconditionError(f"u^alpha does not divide g{i + 2}")
        wedge = gi.partial(0) * pi1.partial(1) - gi.partial(1) * pi1.partial(0)
        if not wedge.is_zero():
            raise PreconditionError(f"d g{i + 2} and d u^alpha are not parallel")
    for i, hi in enumerate(h):
        if not divides(ub, hi):
            raise PreconditionError(f"u^beta does not divide h{i + 2}")


def hp_components(alpha: Pair, beta: Pair, g: Sequence[Poly], h: Sequence[Poly]) -> List[Poly]:
    ub = _mono(beta)
    return [_mono(alpha)] + [gi + ub + hi for gi, hi in zip(g, h)]


def hp_metric_compare(alpha: Pair, beta: Pair, g: Sequence[Poly] = (), h: Sequence[Poly] = (),
                      grid: Tuple[object, int] = (1, 64)) -> HPComparison:
    """Inf and sup of the metric ratio over the grid r*i/n, i = 1..n, in each coordinate."""
    g = list(g) or [Poly.zero(2), Poly.zero(2)]
    h = list(h) or [Poly.zero(2), Poly.zero(2)]
    if len(g) != 2 or len(h) != 2:
        raise ValueError("need g2, g3 and h2, h3")
    check_hp_preconditions(alpha, beta, g, h)
    comps = hp_components(alpha, beta, g, h)
    model = [_mono(alpha), _mono(beta)]
    dpi = [(c.partial(0), c.partial(1)) for c in comps]
    dmo = [(c.partial(0), c.partial(1)) for c in model]
    r, n = Fraction(grid[0]), int(grid[1])
    ks, Ks = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            p = (r * i / n, r * j / n)
            J = [(d0(p), d1(p)) for d0, d1 in dpi]
            M = [(d0(p), d1(p)) for d0, d1 in dmo]
            P = [[sum(row[a] * row[b] for row in J) for b in range(2)] for a in range(2)]
            Q = [[sum(row[a] * row[b] for row in M) for b in range(2)] for a in range(2)]
            lo, hi = generalized_eigs_2x2(P, Q)
            ks.append(lo)
            Ks.append(hi)
    return HPComparison(min(ks), max(Ks), (r, n), n * n)


@dataclass
class ComparisonSet:
    """Grid view of the set where |Z(u^a)| = |Z(u^b)|."""
    points: List[Tuple[Fraction, Fraction]]
    alpha_dominant: List[bool]          # |Z(u^a)| >= |Z(u^b)| at each grid point
    equal: List[Tuple[Fraction, Fraction]]
    sign_changes: int                   # neighbouring grid points on opposite sides


def comparison_set(Z, alpha: Pair, beta: Pair, grid: Tuple[object, int] = (1, 16)) -> ComparisonSet:
    """Sample T = {|Z(u^alpha)| = |Z(u^beta)|} on the punctured box; no reduction of T is attempted."""
    fa = Z.vector_field.apply(_mono(alpha))
    fb = Z.vector_field.apply(_mono(beta))
    r, n = Fraction(grid[0]), int(grid[1])
    pts, dom, eq = [], [], []
    side = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            p = (r * i / n, r * j / n)
            a, b = abs(fa(p)), abs(fb(p))
            pts.append(p)
            dom.append(a >= b)
            side[(i, j)] = (a > b) - (a < b)
            if a == b:
                eq.append(p)
    changes = 0
    for (i, j), s in side.items():
        for q in ((i + 1, j), (i, j + 1)):
            t = side.get(q)
            if t is not None and s * t < 0:
                changes += 1
    return ComparisonSet(pts, dom, eq, changes)
