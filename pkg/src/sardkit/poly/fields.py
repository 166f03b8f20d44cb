"""Polynomial vector fields and polynomial maps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from .parser import parse_poly
from .polynomial import Poly, compose, default_names, evaluate


@dataclass(frozen=True)
class PolyVectorField:
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = len(comps)
        for c in comps:
            if c.arity != n:
                raise ValueError(f"component arity {c.arity} does not match dimension {n}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, texts: Sequence[str], names: Sequence[str] | None = None):
        names = names or default_names(len(texts))
        return cls(tuple(parse_poly(t, names) for t in texts))

    @classmethod
    def coordinate(cls, i: int, n: int) -> "PolyVectorField":
        return cls(tuple(Poly.const(1 if j == i else 0, n) for j in range(n)))

    @classmethod
    def zero(cls, n: int) -> "PolyVectorField":
        return cls(tuple(Poly.zero(n) for _ in range(n)))

    @property
    def arity(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "PolyVectorField"):
        return PolyVectorField(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "PolyVectorField"):
        return PolyVectorField(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return PolyVectorField(tuple(-a for a in self))

    def scale(self, f) -> "PolyVectorField":
        """Multiply every component by a scalar or a Poly."""
        return PolyVectorField(tuple(a * f for a in self))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative X(f) = sum X_i d_i f."""
        if f.arity != self.arity:
            raise ValueError("arity mismatch")
        out = Poly.zero(self.arity)
        for i, c in enumerate(self.components):
            if not c.is_zero():
                out = out + c * f.partial(i)
        return out

    def divergence(self) -> Poly:
        out = Poly.zero(self.arity)
        for i, c in enumerate(self.components):
            out = out + c.partial(i)
        return out

    def jacobian(self):
        return [[c.partial(j) for j in range(self.arity)] for c in self.components]

    def at(self, point):
        return tuple(evaluate(c, point) for c in self.components)

    def numeric(self):
        """Return a fast float function ``x -> ndarray`` for the field."""
        fns = [c.lambdify() for c in self.components]

        def f(x):
            return np.array([fn(*x) for fn in fns], dtype=float)
        return f

    def numeric_jacobian(self):
        rows = [[d.lambdify() for d in row] for row in self.jacobian()]

        def J(x):
            return np.array([[fn(*x) for fn in row] for row in rows], dtype=float)
        return J

    def to_strings(self, names: Sequence[str] | None = None):
        return [c.to_string(names) for c in self.components]

    def __str__(self):
        names = default_names(self.arity)
        parts = []
        for name, c in zip(names, self.components):
            if not c.is_zero():
                parts.append(f"({c})*d{name}")
        return " + ".join(parts) if parts else "0"


def directional(X: PolyVectorField, f: Poly) -> Poly:
    return X.apply(f)


def lie_bracket(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """[X, Y]_j = X(Y_j) - Y(X_j)."""
    if X.arity != Y.arity:
        raise ValueError("arity mismatch")
    return PolyVectorField(tuple(X.apply(Y[j]) - Y.apply(X[j]) for j in range(X.arity)))


def divergence(X: PolyVectorField) -> Poly:
    return X.divergence()


@dataclass(frozen=True)
class PolyMap:
    domain: int
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if c.arity != self.domain:
                raise ValueError("component arity differs from the domain arity")
        object.__setattr__(self, "components", comps)

    @property
    def codomain(self) -> int:
        return len(self.components)

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, tuple(Poly.var(i, n) for i in range(n)))

    @classmethod
    def parse(cls, texts: Sequence[str], names: Sequence[str]):
        return cls(len(names), tuple(parse_poly(t, names) for t in texts))

    def pullback(self, p: Poly) -> Poly:
        if p.arity != self.codomain:
            raise ValueError(f"cannot pull back a {p.arity}-variable Poly through a map into R^{self.codomain}")
        return compose(p, self.components)

    def then(self, other: "PolyMap") -> "PolyMap":
        """Composite ``other ∘ self``."""
        return PolyMap(self.domain, tuple(self.pullback(c) for c in other.components))

    def jacobian(self):
        return [[c.partial(j) for j in range(self.domain)] for c in self.components]

    def at(self, point):
        return tuple(evaluate(c, point) for c in self.components)

    def to_strings(self, names: Sequence[str] | None = None):
        return [c.to_string(names) for c in self.components]


def pullback(p: Poly, sigma: PolyMap) -> Poly:
    return sigma.pullback(p)


def det3(m) -> object:
    """Determinant of a 3x3 matrix of Polys or numbers (columns or rows alike)."""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def as_fraction_point(point) -> Tuple[Fraction, ...]:
    out = []
    for v in point:
        if isinstance(v, float) or not isinstance(v, (int, Fraction)):
            raise TypeError(f"expected an exact rational coordinate, got {v!r}")
        out.append(Fraction(v))
    return tuple(out)
