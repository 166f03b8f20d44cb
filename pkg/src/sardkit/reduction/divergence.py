"""Divergence ideal membership and the final-singularity saddle check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..poly import Poly, as_fraction_point, divide_monomial, translate
from ..poly.linalg import solve
from .blowup import _axis_points, _max_power
from .planar import PlanarField, jacobian_classify

MAX_MEMBERSHIP_DEGREE = 8


@dataclass
class Witness:
    f: Poly
    g: Poly
    degree: int
    kind: str = "witness"

    def residual(self, Z: PlanarField) -> Poly:
        return Z.divergence() - self.f * Z.A - self.g * Z.B


@dataclass
class NumericBound:
    K: float
    residual: float
    grid: Tuple[float, int]   # (half-width, points per half-axis)
    degree: int
    kind: str = "numeric_bound"


@dataclass
class Fail:
    reason: str
    point: Tuple[Fraction, Fraction]
    kind: str = "fail"


Membership = Union[Witness, NumericBound, Fail]


def _monomials(deg: int):
    return [(i, d - i) for d in range(deg + 1) for i in range(d, -1, -1)]


def _system(Z: PlanarField, deg: int):
    basis = _monomials(deg)
    cols = []
    for target in (Z.A, Z.B):
        for m in basis:
            cols.append(Poly.monomial(m) * target)
    div = Z.divergence()
    rows = set(e for e, _ in div.items())
    for c in cols:
        rows.update(e for e, _ in c.items())
    rows = sorted(rows)
    M = [[c.coeff(r) for c in cols] for r in rows]
    rhs = [div.coeff(r) for r in rows]
    return basis, M, rhs


def _order_at_origin(p: Poly) -> int:
    return p.order() if not p.is_zero() else 10**9


def _common_zeros(Z: PlanarField, candidates) -> List[Tuple[Fraction, Fraction]]:
    pts = [(Fraction(0), Fraction(0))] + [as_fraction_point(c) for c in candidates]
    pts += _axis_points(Z)[0]
    out = []
    for p in pts:
        if p not in out and Z.at(p) == (0, 0):
            out.append(p)
    return out


def _obstruction(Z: PlanarField, candidates) -> Optional[Fail]:
    div = Z.divergence()
    for p in _common_zeros(Z, candidates):
        if div(p) != 0:
            return Fail(f"divergence is {div(p)} at a common zero of the components", p)
        A, B, D = (translate(P, p) if any(p) else P for P in (Z.A, Z.B, div))
        if _order_at_origin(D) < min(_order_at_origin(A), _order_at_origin(B)):
            return Fail("divergence vanishes to lower order than the components", p)
    return None


def grid_bound(Z: PlanarField, half_width: float = 1.0, n: int = 32) -> float:
    A, B, D = Z.A.lambdify(), Z.B.lambdify(), Z.divergence().lambdify()
    ts = np.linspace(-half_width, half_width, 2 * n + 1)
    K = 0.0
    for x in ts:
        for y in ts:
            den = abs(A(x, y)) + abs(B(x, y))
            if den < 1e-300:
                continue
            K = max(K, abs(D(x, y)) / den)
    return K


def divergence_membership(Z: PlanarField, max_deg: int = 4,
                          candidates: Sequence[Sequence] = (),
                          grid: Tuple[float, int] = (1.0, 32)) -> Membership:
    """Look for div Z = f A + g B with deg f, g <= max_deg, lowest degree first."""
    if max_deg > MAX_MEMBERSHIP_DEGREE:
        raise ValueError(f"max_deg {max_deg} exceeds the cap {MAX_MEMBERSHIP_DEGREE}")
    if max_deg < 0:
        raise ValueError("max_deg must be non-negative")
    fail = _obstruction(Z, candidates)
    if fail is not None:
        return fail
    for d in range(max_deg + 1):
        basis, M, rhs = _system(Z, d)
        x = solve(M, rhs)
        if x is not None:
            k = len(basis)
            f = Poly(2, {m: c for m, c in zip(basis, x[:k])})
            g = Poly(2, {m: c for m, c in zip(basis, x[k:])})
            return Witness(f, g, d)
    basis, M, rhs = _system(Z, max_deg)
    Mf = np.array([[float(v) for v in row] for row in M])
    bf = np.array([float(v) for v in rhs])
    sol, *_ = np.linalg.lstsq(Mf, bf, rcond=None)
    res = float(np.linalg.norm(Mf @ sol - bf))
    return NumericBound(grid_bound(Z, *grid), res, grid, max_deg)


@dataclass
class Finding:
    name: str
    passed: Optional[bool]
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class FinalSingularityReport:
    alpha: int
    beta: int
    reduced: PlanarField
    membership: Membership
    findings: List[Finding] = field(default_factory=list)
    singularity_class: Optional[str] = None

    def finding(self, name: str) -> Finding:
        for f in self.findings:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def hypothesis_holds(self) -> bool:
        return isinstance(self.membership, Witness)


def final_singularity_check(Z: PlanarField, max_deg: int = 4) -> FinalSingularityReport:
    a = _max_power(Z.A, Z.B, 0)
    b = _max_power(Z.A, Z.B, 1)
    Zt = PlanarField(divide_monomial(Z.A, (a, b)), divide_monomial(Z.B, (a, b)))
    mem = divergence_membership(Z, max_deg)
    rep = FinalSingularityReport(a, b, Zt, mem)
    x_div = all(e[0] >= 1 for e, _ in Zt.A.items())
    y_div = all(e[1] >= 1 for e, _ in Zt.B.items())
    if a:
        rep.findings.append(Finding("tangency_x", x_div, "x divides the reduced A"))
    if b:
        rep.findings.append(Finding("tangency_y", y_div, "y divides the reduced B"))
    if not isinstance(mem, Witness):
        rep.findings.append(Finding("membership", False,
                                    "hypothesis (i) violated: divergence not in the ideal (A, B)"))
        return rep
    rep.findings.append(Finding("membership", True, f"witness found at degree {mem.degree}"))
    o = (0, 0)
    lhs = (a + 1) * Zt.A.partial(0)(o) + (b + 1) * Zt.B.partial(1)(o)
    rep.findings.append(Finding("identity", lhs == 0,
                                f"(alpha+1) dA/dx(0) + (beta+1) dB/dy(0) = {lhs}"))
    sr = jacobian_classify(Zt, o)
    rep.singularity_class = sr.cls
    if sr.cls == "Regular":
        rep.findings.append(Finding("saddle", None, "reduced field is regular at the origin"))
    elif sr.elementary:
        rep.findings.append(Finding("saddle", sr.cls == "Saddle", f"origin is {sr.cls}"))
    else:
        rep.findings.append(Finding("saddle", None, "origin is not elementary; no claim"))
    return rep
