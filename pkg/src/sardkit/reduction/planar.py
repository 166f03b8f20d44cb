"""Planar polynomial vector fields and linear classification of singular points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from ..poly import Poly, PolyVectorField, as_fraction_point, parse_poly, translate
from ..poly.polynomial import default_names

NAMES2 = default_names(2)

CLASSES = ("Saddle", "Node", "FocusOrCenterLinear", "SaddleNode", "NonElementary", "Regular")


@dataclass(frozen=True)
class PlanarField:
    """The field A d/dx + B d/dy."""
    A: Poly
    B: Poly

    def __post_init__(self):
        if self.A.arity != 2 or self.B.arity != 2:
            raise ValueError("planar fields need Polys in two variables")
        if self.A.is_zero() and self.B.is_zero():
            raise ValueError("planar field must be nonzero")

    @classmethod
    def parse(cls, a: str, b: str, names: Sequence[str] = NAMES2) -> "PlanarField":
        return cls(parse_poly(a, names), parse_poly(b, names))

    @property
    def vector_field(self) -> PolyVectorField:
        return PolyVectorField((self.A, self.B))

    def divergence(self) -> Poly:
        return self.A.partial(0) + self.B.partial(1)

    def at(self, p):
        return self.A(p), self.B(p)

    def translated(self, p) -> "PlanarField":
        """The same field in coordinates centred at ``p``."""
        return PlanarField(translate(self.A, p), translate(self.B, p))

    def reversed(self) -> "PlanarField":
        return PlanarField(-self.A, -self.B)

    def numeric(self):
        return self.vector_field.numeric()

    def to_strings(self, names: Sequence[str] = NAMES2):
        return [self.A.to_string(names), self.B.to_string(names)]

    def __str__(self):
        return f"({self.A})*dx + ({self.B})*dy"


def focus2d() -> PlanarField:
    """Repelling focus (-y + x r^2, x + y r^2); reverse it for the spiralling-in model."""
    return PlanarField.parse("-y + x*(x^2 + y^2)", "x + y*(x^2 + y^2)")


def saddle() -> PlanarField:
    return PlanarField.parse("x", "-y")


def class_from_invariants(det: Fraction, trace: Fraction) -> str:
    """Label of a singular point from det and trace of its linear part."""
    if det < 0:
        return "Saddle"
    if trace == 0:
        return "NonElementary"
    if det == 0:
        # eigenvalues 0 and trace: one eigenvalue has nonzero real part
        return "SaddleNode"
    if trace * trace >= 4 * det:
        return "Node"
    return "FocusOrCenterLinear"


def is_elementary(label: str) -> bool:
    return label in ("Saddle", "Node", "FocusOrCenterLinear", "SaddleNode")


@dataclass(frozen=True)
class SingularityReport:
    point: Tuple[Fraction, Fraction]
    det: Fraction
    trace: Fraction
    discriminant: Fraction
    cls: str

    @property
    def elementary(self) -> bool:
        return is_elementary(self.cls)

    def as_dict(self):
        return {
            "point": [str(c) for c in self.point],
            "det": str(self.det),
            "trace": str(self.trace),
            "discriminant": str(self.discriminant),
            "class": self.cls,
        }


def jacobian_classify(Z: PlanarField, p: Sequence) -> SingularityReport:
    p = as_fraction_point(p)
    a, b = Z.at(p)
    ax, ay = Z.A.partial(0)(p), Z.A.partial(1)(p)
    bx, by = Z.B.partial(0)(p), Z.B.partial(1)(p)
    det = ax * by - ay * bx
    tr = ax + by
    disc = tr * tr - 4 * det
    if a != 0 or b != 0:
        cls = "Regular"
    else:
        cls = class_from_invariants(det, tr)
    return SingularityReport(p, det, tr, disc, cls)
