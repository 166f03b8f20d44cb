"""Rational roots of univariate polynomials with exact verification."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: List[Fraction], r: Fraction) -> List[Fraction]:
    # synthetic division by (x - r), coeffs in ascending order
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry * r if k < n else coeffs[k]
        out[k - 1] = carry
    return out


def _trim(coeffs: List[Fraction]) -> List[Fraction]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


def rational_roots(coeffs: Sequence, max_den: int = 10**6) -> Tuple[List[Fraction], List[float]]:
    """Distinct rational roots and leftover real (irrational) roots.

    ``coeffs`` are in ascending degree order.  Rational candidates come from
    numpy's companion-matrix roots, snapped with ``limit_denominator`` and
    accepted only when they vanish exactly.
    """
    cs = _trim([Fraction(c) for c in coeffs])
    if len(cs) == 1:
        if cs[0] == 0:
            raise ValueError("the zero polynomial has every point as a root")
        return [], []
    found = []
    while len(cs) > 1:
        if cs[0] == 0:
            if Fraction(0) not in found:
                found.append(Fraction(0))
            cs = cs[1:]
            continue
        approx = np.roots([float(c) for c in reversed(cs)])
        hit = None
        for z in sorted(approx, key=lambda z: abs(z.imag)):
            if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
                continue
            cand = Fraction(float(z.real)).limit_denominator(max_den)
            if _eval(cs, cand) == 0:
                hit = cand
                break
        if hit is None:
            break
        if hit not in found:
            found.append(hit)
        cs = _deflate(cs, hit)
    left = []
    if len(cs) > 1:
        for z in np.roots([float(c) for c in reversed(cs)]):
            if abs(z.imag) <= 1e-9 * max(1.0, abs(z)):
                left.append(float(z.real))
    return sorted(found), sorted(set(round(x, 12) for x in left))
