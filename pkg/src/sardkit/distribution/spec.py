"""Rank-2 distributions on R^3 given by a 1-form or by a pair of fields."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from ..poly import Poly, PolyVectorField, parse_poly
from ..poly.polynomial import default_names

NAMES3 = default_names(3)


class ConversionError(ValueError):
    """The 1-form has no constant nonzero coefficient to solve against."""


@dataclass(frozen=True)
class OneForm:
    """delta = c1 dx1 + c2 dx2 + c3 dx3."""
    coeffs: Tuple[Poly, Poly, Poly]

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if len(cs) != 3 or any(c.arity != 3 for c in cs):
            raise ValueError("a 1-form on R^3 needs three Polys in x1, x2, x3")
        object.__setattr__(self, "coeffs", cs)

    def scaled(self, k) -> "OneForm":
        return OneForm(tuple(c * k for c in self.coeffs))


@dataclass(frozen=True)
class Pair:
    X1: PolyVectorField
    X2: PolyVectorField

    def __post_init__(self):
        if self.X1.arity != 3 or self.X2.arity != 3:
            raise ValueError("distribution fields must live on R^3")


@dataclass(frozen=True)
class DistributionSpec:
    name: str
    form: Union[OneForm, Pair]

    @property
    def mode(self) -> str:
        return "one_form" if isinstance(self.form, OneForm) else "pair"

    def as_pair(self) -> Pair:
        if isinstance(self.form, Pair):
            return self.form
        return one_form_to_pair(self.form)

    def as_one_form(self) -> OneForm:
        if isinstance(self.form, OneForm):
            return self.form
        return pair_to_one_form(self.form)

    def fields(self) -> Tuple[PolyVectorField, PolyVectorField]:
        p = self.as_pair()
        return p.X1, p.X2


def one_form_to_pair(form: OneForm) -> Pair:
    """Solve delta(X) = 0 on coordinate fields against a constant coefficient."""
    c = form.coeffs
    for k in (2, 0, 1):
        if c[k].is_constant() and not c[k].is_zero():
            ck = c[k].constant_term()
            others = [i for i in range(3) if i != k]
            fields = []
            for i in others:
                comps = [Poly.zero(3)] * 3
                comps[i] = Poly.const(1, 3)
                comps[k] = -c[i] / ck
                fields.append(PolyVectorField(tuple(comps)))
            return Pair(fields[0], fields[1])
    raise ConversionError("the 1-form has no nonzero constant coefficient")


def pair_to_one_form(pair: Pair) -> OneForm:
    """Annihilator of the pair: the cross product X1 x X2."""
    a, b = pair.X1.components, pair.X2.components
    return OneForm((a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0]))


def one_form_from_strings(name: str, texts: Sequence[str]) -> DistributionSpec:
    return DistributionSpec(name, OneForm(tuple(parse_poly(t, NAMES3) for t in texts)))


def pair_from_strings(name: str, x1: Sequence[str], x2: Sequence[str]) -> DistributionSpec:
    return DistributionSpec(name, Pair(PolyVectorField.parse(x1, NAMES3),
                                       PolyVectorField.parse(x2, NAMES3)))


def _random_point(rng: random.Random, box: float, n: int = 3):
    den = 64
    lim = int(box * den)
    return tuple(Fraction(rng.randint(-lim, lim), den) for _ in range(n))


def check_well_formed(spec: DistributionSpec, samples: int = 50, box: float = 2.0,
                      seed: int = 0) -> List[str]:
    """Sampled checks of nonsingularity; returns warnings (empty when fine)."""
    rng = random.Random(seed)
    warnings = []
    if isinstance(spec.form, OneForm):
        cs = spec.form.coeffs
        if any(c.is_constant() and not c.is_zero() for c in cs):
            return warnings
        for _ in range(samples):
            p = _random_point(rng, box)
            if all(c(p) == 0 for c in cs):
                warnings.append(f"1-form vanishes at sampled point {tuple(str(v) for v in p)}")
                break
    else:
        delta = pair_to_one_form(spec.form).coeffs
        for _ in range(samples):
            p = _random_point(rng, box)
            if all(c(p) == 0 for c in delta):
                warnings.append(f"fields are dependent at sampled point {tuple(str(v) for v in p)}")
                break
    return warnings


# -- shipped fixtures ------------------------------------------------------------

def martinet() -> DistributionSpec:
    return one_form_from_strings("MARTINET", ["0", "-x1^2", "1"])


def heisenberg() -> DistributionSpec:
    return one_form_from_strings("HEISENBERG", ["1/2*x2", "-1/2*x1", "1"])


def twoplanes() -> DistributionSpec:
    return pair_from_strings("TWOPLANES", ["1", "0", "0"], ["0", "1", "x1^2*x2"])


def tangential() -> DistributionSpec:
    return pair_from_strings("TANGENTIAL", ["1", "0", "0"], ["0", "1", "x1*(x2^2 - x3^2)"])


FIXTURES = {
    "MARTINET": martinet,
    "HEISENBERG": heisenberg,
    "TWOPLANES": twoplanes,
    "TANGENTIAL": tangential,
}


def fixture(name: str) -> DistributionSpec:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
