"""Point blow-ups of planar fields, strict transforms and resolution trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..poly import Poly, PolyMap, as_fraction_point, compose, divide_monomial, exact_divide
from ..poly.gcd import poly_gcd
from .planar import PlanarField, SingularityReport, jacobian_classify
from .roots import rational_roots

DEFAULT_MAX_DEPTH = 8


class NotSingular(ValueError):
    pass


def _var(i):
    return Poly.var(i, 2)


def chart_map(chart: int) -> PolyMap:
    u, v = _var(0), _var(1)
    if chart == 1:
        return PolyMap(2, (u, u * v))
    if chart == 2:
        return PolyMap(2, (u * v, v))
    raise ValueError("chart must be 1 or 2")


def _max_power(P: Poly, Q: Poly, i: int) -> int:
    ks = [e[i] for e, _ in P.items()] + [e[i] for e, _ in Q.items()]
    return min(ks) if ks else 0


@dataclass
class BlowUpChart:
    chart: int
    map: PolyMap                 # chart coordinates -> coordinates centred at `center`
    center: Tuple[Fraction, Fraction]
    pullback: PlanarField        # pulled-back field before removing the divisor
    r: int
    strict: PlanarField
    dicritical: bool

    def divisor_restriction(self) -> Tuple[Poly, Poly]:
        """Components of the strict transform on the divisor, as Polys in (u, v)."""
        i = 0 if self.chart == 1 else 1
        sub = [Poly.var(0, 2), Poly.var(1, 2)]
        sub[i] = Poly.zero(2)
        return compose(self.strict.A, sub), compose(self.strict.B, sub)


def _strict(chart: int, A: Poly, B: Poly) -> Tuple[PlanarField, int, PlanarField, bool]:
    sigma = chart_map(chart)
    Ap, Bp = sigma.pullback(A), sigma.pullback(B)
    u, v = _var(0), _var(1)
    if chart == 1:
        P, Q = Ap, exact_divide(Bp - v * Ap, u)
        idx = 0
    else:
        P, Q = exact_divide(Ap - u * Bp, v), Bp
        idx = 1
    r = _max_power(P, Q, idx)
    mono = (r, 0) if idx == 0 else (0, r)
    S = PlanarField(divide_monomial(P, mono), divide_monomial(Q, mono))
    # transverse component to the divisor, restricted to it
    normal = S.A if idx == 0 else S.B
    on_divisor = [e for e, _ in normal.items() if e[idx] == 0]
    dicritical = bool(on_divisor)
    return PlanarField(P, Q), r, S, dicritical


def blow_up_point(Z: PlanarField, p: Sequence = (0, 0)) -> Tuple[BlowUpChart, BlowUpChart]:
    p = as_fraction_point(p)
    if Z.at(p) != (0, 0):
        raise NotSingular(f"field does not vanish at {tuple(map(str, p))}")
    Zc = Z.translated(p) if any(p) else Z
    charts = []
    for c in (1, 2):
        F, r, S, dic = _strict(c, Zc.A, Zc.B)
        charts.append(BlowUpChart(c, chart_map(c), p, F, r, S, dic))
    return charts[0], charts[1]


def _univariate(p: Poly, var: int) -> List[Fraction]:
    """Ascending coefficients of a Poly that only involves ``var``."""
    deg = max((e[var] for e, _ in p.items()), default=0)
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.items():
        out[e[var]] += c
    return out


@dataclass
class DivisorPoints:
    rational: List[Tuple[Fraction, Fraction]]
    irrational: List[Tuple[float, float]]


def divisor_singular_points(ch: BlowUpChart) -> DivisorPoints:
    """Singular points of the strict transform on the exceptional divisor.

    Chart 1 covers every divisor direction except the vertical one, which is
    the origin of chart 2, so chart 2 only reports its origin.
    """
    if ch.chart == 2:
        if ch.strict.at((0, 0)) == (0, 0):
            return DivisorPoints([(Fraction(0), Fraction(0))], [])
        return DivisorPoints([], [])
    P0, Q0 = ch.divisor_restriction()
    g = poly_gcd(P0, Q0)
    if g.is_constant():
        return DivisorPoints([], [])
    rat, irr = rational_roots(_univariate(g, 1))
    return (DivisorPoints([(Fraction(0), v) for v in rat], [(0.0, v) for v in irr]))


def chart_overlap_residual(c1: BlowUpChart, c2: BlowUpChart, point: Sequence) -> Fraction:
    """Exact mismatch of the two strict transforms at a chart-1 overlap point.

    With (u2, v2) = (1/v1, u1 v1) the charts must satisfy
    D(transition) S1 = v1^r S2.
    """
    u1, v1 = as_fraction_point(point)
    if u1 == 0 or v1 == 0:
        raise ValueError("overlap points need u != 0 and v != 0")
    if c1.r != c2.r:
        raise ValueError("charts disagree on the divisor multiplicity")
    s1 = c1.strict.at((u1, v1))
    u2, v2 = 1 / v1, u1 * v1
    s2 = c2.strict.at((u2, v2))
    # Jacobian of (1/v, u v)
    d = ((Fraction(0), -1 / (v1 * v1)), (v1, u1))
    lhs = (d[0][0] * s1[0] + d[0][1] * s1[1], d[1][0] * s1[0] + d[1][1] * s1[1])
    scale = v1 ** c1.r
    return max(abs(lhs[0] - scale * s2[0]), abs(lhs[1] - scale * s2[1]))


# -- resolution tree ----------------------------------------------------------------------

@dataclass
class ResolutionNode:
    field: PlanarField
    depth: int
    chart: Optional[int] = None          # None at the root
    center: Optional[Tuple[Fraction, Fraction]] = None
    to_root: Optional[PolyMap] = None    # node coordinates -> root coordinates
    r: int = 0
    dicritical: bool = False
    singularities: List[SingularityReport] = field(default_factory=list)
    irrational_points: List[Tuple[float, float]] = field(default_factory=list)
    children: List["ResolutionNode"] = field(default_factory=list)
    depth_capped: bool = False

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def is_leaf(self) -> bool:
        return not self.children

    def leaf_singularities(self) -> List[SingularityReport]:
        """Singular points that were not blown up further."""
        blown = {c.center for c in self.children}
        return [s for s in self.singularities if s.point not in blown]

    def as_dict(self, names=("u", "v")) -> dict:
        d = {
            "depth": self.depth,
            "chart": self.chart,
            "field": self.field.to_strings(names),
            "r": self.r,
            "dicritical": self.dicritical,
            "singularities": [s.as_dict() for s in self.singularities],
            "children": [c.as_dict(("u", "v")) for c in self.children],
            "depth_capped": self.depth_capped,
        }
        if self.center is not None:
            d["center"] = [str(c) for c in self.center]
        if self.to_root is not None:
            d["map"] = self.to_root.to_strings(names)
        if self.irrational_points:
            d["irrational_points"] = [list(p) for p in self.irrational_points]
        return d


@dataclass
class ResolutionTree:
    root: ResolutionNode
    monomial: Tuple[int, int]
    max_depth: int

    @property
    def depth(self) -> int:
        return max(n.depth for n in self.root.walk())

    @property
    def depth_capped(self) -> bool:
        return any(n.depth_capped for n in self.root.walk())

    def final_reports(self) -> List[SingularityReport]:
        out = []
        for n in self.root.walk():
            out.extend(s for s in n.leaf_singularities())
        return out

    @property
    def all_elementary(self) -> bool:
        return all(s.elementary for s in self.final_reports())

    def leaves(self):
        return [n for n in self.root.walk() if n.is_leaf()]

    def leaf_saddle_summary(self):
        """For each leaf node, whether all its final singularities are saddles."""
        return [all(s.cls == "Saddle" for s in n.leaf_singularities()) for n in self.leaves()]

    def as_dict(self) -> dict:
        return {
            "monomial_factor": list(self.monomial),
            "max_depth": self.max_depth,
            "depth": self.depth,
            "depth_capped": self.depth_capped,
            "all_elementary": self.all_elementary,
            "root": self.root.as_dict(("x", "y")),
        }


def _axis_points(Z: PlanarField):
    """Rational common zeros of (A, B) on the coordinate axes."""
    pts, irr = [], []
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    zero = Poly.zero(2)
    for axis in (0, 1):
        # axis 0: y = 0, parameter x; axis 1: x = 0, parameter y
        sub = [x, zero] if axis == 0 else [zero, y]
        a, b = compose(Z.A, sub), compose(Z.B, sub)
        g = poly_gcd(a, b) if not (a.is_zero() and b.is_zero()) else None
        if g is None:
            continue  # the whole axis is singular; not isolated
        if g.is_constant():
            continue
        rat, ir = rational_roots(_univariate(g, axis))
        for t in rat:
            pts.append((t, Fraction(0)) if axis == 0 else (Fraction(0), t))
        for t in ir:
            irr.append((t, 0.0) if axis == 0 else (0.0, t))
    return pts, irr


def _expand(node: ResolutionNode, max_depth: int):
    for s in node.singularities:
        if s.cls != "NonElementary":
            continue
        if node.depth >= max_depth:
            node.depth_capped = True
            continue
        for ch in blow_up_point(node.field, s.point):
            pts = divisor_singular_points(ch)
            # chart coordinates -> node coordinates (undo the translation) -> root
            shift = PolyMap(2, tuple(ch.map.components[i] + s.point[i] for i in range(2)))
            to_root = shift if node.to_root is None else shift.then(node.to_root)
            child = ResolutionNode(
                field=ch.strict, depth=node.depth + 1, chart=ch.chart, center=s.point,
                to_root=to_root, r=ch.r, dicritical=ch.dicritical,
                singularities=[jacobian_classify(ch.strict, p) for p in pts.rational],
                irrational_points=pts.irrational,
            )
            node.children.append(child)
            _expand(child, max_depth)


def resolve(Z: PlanarField, max_depth: int = DEFAULT_MAX_DEPTH,
            candidates: Sequence[Sequence] = ()) -> ResolutionTree:
    """Blow up non-elementary singular points until all are elementary."""
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    a = _max_power(Z.A, Z.B, 0)
    b = _max_power(Z.A, Z.B, 1)
    Zt = PlanarField(divide_monomial(Z.A, (a, b)), divide_monomial(Z.B, (a, b)))
    pts = [as_fraction_point(p) for p in candidates]
    pts.append((Fraction(0), Fraction(0)))
    axis, irr = _axis_points(Zt)
    pts.extend(axis)
    seen, sing = set(), []
    for p in pts:
        if p in seen:
            continue
        seen.add(p)
        if Zt.at(p) == (0, 0):
            sing.append(jacobian_classify(Zt, p))
    root = ResolutionNode(field=Zt, depth=0, singularities=sing, irrational_points=irr)
    _expand(root, max_depth)
    return ResolutionTree(root, (a, b), max_depth)
