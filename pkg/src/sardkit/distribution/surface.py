"""Martinet surface, characteristic field, tangency locus and point classes."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from ..poly import Poly, PolyVectorField, det3, lie_bracket, squarefree, as_fraction_point
from ..poly.linalg import rank as exact_rank
from .spec import DistributionSpec, OneForm

MAX_BRACKET_DEPTH = 6


@dataclass(frozen=True)
class MartinetData:
    h_raw: Poly
    h: Poly
    gradient: Tuple[Poly, Poly, Poly]

    @property
    def sigma_empty(self) -> bool:
        """True when h is a nonzero constant, so the Martinet surface is empty."""
        return self.h.is_constant()


def _curl(c: Sequence[Poly]):
    return (c[2].partial(1) - c[1].partial(2),
            c[0].partial(2) - c[2].partial(0),
            c[1].partial(0) - c[0].partial(1))


def martinet_function(spec: DistributionSpec) -> MartinetData:
    if isinstance(spec.form, OneForm):
        c = spec.form.coeffs
        rot = _curl(c)
        h_raw = c[0] * rot[0] + c[1] * rot[1] + c[2] * rot[2]
    else:
        X1, X2 = spec.form.X1, spec.form.X2
        B = lie_bracket(X1, X2)
        # columns X1 | X2 | [X1,X2]
        h_raw = det3([[X1[i], X2[i], B[i]] for i in range(3)])
    if h_raw.is_zero():
        raise ValueError(f"{spec.name}: the distribution is integrable (h vanishes identically)")
    h = squarefree(h_raw)
    return MartinetData(h_raw, h, h.gradient())


def characteristic_field(spec: DistributionSpec, md: MartinetData) -> PolyVectorField:
    X1, X2 = spec.fields()
    a, b = X1.apply(md.h), X2.apply(md.h)
    return X2.scale(a) - X1.scale(b)


@dataclass
class LocusSystem:
    generators: Tuple[Poly, ...]
    certified_empty: bool
    candidate_zeros: List[Tuple[Fraction, ...]] = field(default_factory=list)


@dataclass
class TangencyLocus:
    tangency: LocusSystem   # {h, X1(h), X2(h)}
    singular: LocusSystem   # {h, d1 h, d2 h, d3 h}

    @property
    def certified_empty(self) -> bool:
        return self.tangency.certified_empty and self.singular.certified_empty


def _system(gens: Tuple[Poly, ...], candidates) -> LocusSystem:
    empty = any(g.is_constant() and not g.is_zero() for g in gens)
    zeros = []
    if not empty:
        for p in candidates:
            if all(g(p) == 0 for g in gens):
                zeros.append(p)
    return LocusSystem(gens, empty, zeros)


def tangency_locus(spec: DistributionSpec, md: MartinetData,
                   candidates: Sequence[Sequence] = ()) -> TangencyLocus:
    X1, X2 = spec.fields()
    pts = [as_fraction_point(p) for p in candidates]
    h = md.h
    return TangencyLocus(
        _system((h, X1.apply(h), X2.apply(h)), pts),
        _system((h,) + tuple(md.gradient), pts),
    )


STRATA = ("OffSigma", "Sigma2", "Sigma1_tr", "Sigma1_tan", "Sigma0_candidate")


@dataclass
class PointClass:
    label: str
    point: Tuple[Fraction, ...]
    h: Fraction
    grad_h: Tuple[Fraction, ...]
    X1h: Fraction
    X2h: Fraction
    Z: Tuple[Fraction, ...]
    tangent_pairing: Optional[Fraction] = None

    def diagnostics(self) -> Dict[str, object]:
        d = {
            "h": self.h, "grad_h": list(self.grad_h), "X1h": self.X1h, "X2h": self.X2h,
            "Z": list(self.Z),
        }
        if self.tangent_pairing is not None:
            d["delta_T"] = self.tangent_pairing
        return d


def classify_point(spec: DistributionSpec, md: MartinetData, p: Sequence,
                   tangent: Optional[Sequence] = None) -> PointClass:
    """Place an exact rational point in the stratification of the Martinet surface."""
    p = as_fraction_point(p)
    if len(p) != 3:
        raise ValueError("points must have three coordinates")
    X1, X2 = spec.fields()
    h = md.h
    hv = h(p)
    grad = tuple(g(p) for g in md.gradient)
    a, b = X1.apply(h)(p), X2.apply(h)(p)
    x1v, x2v = X1.at(p), X2.at(p)
    Z = tuple(a * x2v[i] - b * x1v[i] for i in range(3))
    pc = PointClass("", p, hv, grad, a, b, Z)
    if hv != 0:
        pc.label = "OffSigma"
    elif any(grad) and (a != 0 or b != 0):
        pc.label = "Sigma2"
    elif tangent is None:
        pc.label = "Sigma0_candidate"
    else:
        T = as_fraction_point(tangent)
        if not any(T):
            pc.label = "Sigma0_candidate"
            return pc
        # delta(T) up to a unit: det[X1, X2, T]
        pairing = det3([[x1v[i], x2v[i], T[i]] for i in range(3)])
        pc.tangent_pairing = pairing
        pc.label = "Sigma1_tan" if pairing == 0 else "Sigma1_tr"
    return pc


def iterated_brackets(X1: PolyVectorField, X2: PolyVectorField, depth: int):
    """Yield (length, field) for right-normed brackets [Xi1,[Xi2,...,Xik]]."""
    level = [X1, X2]
    for k in range(1, depth + 1):
        for Y in level:
            yield k, Y
        if k < depth:
            level = [lie_bracket(X, Y) for X in (X1, X2) for Y in level]
            level = [Y for Y in level if not Y.is_zero()]


def hormander_check(spec: DistributionSpec, p: Sequence, depth: int = MAX_BRACKET_DEPTH):
    """Rank of the bracket span at ``p``; returns (rank, achieved_depth)."""
    if depth > MAX_BRACKET_DEPTH:
        raise ValueError(f"bracket depth {depth} exceeds the cap {MAX_BRACKET_DEPTH}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    p = as_fraction_point(p)
    X1, X2 = spec.fields()
    rows: List[Tuple[Fraction, ...]] = []
    current_rank = 0
    last = 0
    for k, Y in iterated_brackets(X1, X2, depth):
        last = k
        v = Y.at(p)
        if not any(v):
            continue
        r = exact_rank(rows + [v])
        if r > current_rank:
            rows.append(v)
            current_rank = r
            if r == 3:
                return 3, k
    return current_rank, last


# -- sampling rational points on the Martinet surface ----------------------------------------

def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _univariate_roots(h: Poly, v: int, rest: Dict[int, Fraction]) -> List[Fraction]:
    """Rational roots in x_v of h with the other coordinates fixed (degree <= 2)."""
    coeffs: Dict[int, Fraction] = {}
    for e, c in h.items():
        val = c
        for i, k in enumerate(e):
            if i != v and k:
                val *= rest[i] ** k
        coeffs[e[v]] = coeffs.get(e[v], 0) + val
    deg = max((k for k, c in coeffs.items() if c), default=-1)
    if deg == 1:
        return [-coeffs.get(0, 0) / coeffs[1]]
    if deg == 2:
        a, b, c = coeffs[2], coeffs.get(1, 0), coeffs.get(0, 0)
        s = _rational_sqrt(b * b - 4 * a * c)
        if s is None:
            return []
        return sorted({(-b + s) / (2 * a), (-b - s) / (2 * a)})
    return []


def sample_sigma_points(md: MartinetData, count: int, seed: int = 0, box: int = 3,
                        max_tries: int = 20000) -> List[Tuple[Fraction, ...]]:
    """Random exact points of {h = 0}, solving h for a variable of degree <= 2."""
    if md.sigma_empty:
        return []
    rng = random.Random(seed)
    h = md.h
    vars_ = [v for v in range(3) if 1 <= h.degree_in(v) <= 2]
    if not vars_:
        return []
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        v = vars_[tries % len(vars_)]
        rest = {i: Fraction(rng.randint(-box * 16, box * 16), 16) for i in range(3) if i != v}
        roots = _univariate_roots(h, v, rest)
        if not roots:
            continue
        r = roots[rng.randrange(len(roots))]
        pt = tuple(r if i == v else rest[i] for i in range(3))
        if h(pt) == 0:
            out.append(pt)
    return out


def restricted_parallel(Z: PolyVectorField, direction: Sequence[int], points) -> bool:
    """Exact check that Z(p) is parallel to ``direction`` at every point."""
    d = tuple(Fraction(x) for x in direction)
    for p in points:
        z = Z.at(p)
        for i, j in product(range(3), repeat=2):
            if z[i] * d[j] != z[j] * d[i]:
                return False
    return True
