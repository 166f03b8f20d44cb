"""Loading TOML spec files into library objects."""
from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

from .distribution import DistributionSpec, fixture, one_form_from_strings, pair_from_strings
from .poly import parse_poly
from .reduction import PlanarField, focus2d, saddle

PLANAR_FIXTURES = {"FOCUS2D": focus2d, "SADDLE": saddle}


class SpecError(ValueError):
    pass


def _rational(v) -> Fraction:
    if isinstance(v, bool):
        raise SpecError(f"expected a number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError:
            raise SpecError(f"not a rational number: {v!r}") from None
    if isinstance(v, float):
        raise SpecError(f"exact coordinates must be integers or strings like '1/2', got {v!r}")
    raise SpecError(f"expected a rational, got {v!r}")


def rational_point(vals, dim: int) -> Tuple[Fraction, ...]:
    if not isinstance(vals, list) or len(vals) != dim:
        raise SpecError(f"expected a list of {dim} coordinates, got {vals!r}")
    return tuple(_rational(v) for v in vals)


def float_point(vals, dim: int) -> Tuple[float, ...]:
    if not isinstance(vals, list) or len(vals) != dim:
        raise SpecError(f"expected a list of {dim} coordinates, got {vals!r}")
    return tuple(float(_rational(v)) if isinstance(v, str) else float(v) for v in vals)


@dataclass
class PointEntry:
    at: Tuple[Fraction, ...]
    tangent: Optional[Tuple[Fraction, ...]] = None
    label: str = ""


@dataclass
class SpecFile:
    path: Path
    sha256: str
    raw: Dict[str, Any]
    distribution: Optional[DistributionSpec] = None
    planar: Optional[PlanarField] = None
    planar_name: str = ""
    points: List[PointEntry] = field(default_factory=list)
    planar_candidates: List[Tuple[Fraction, ...]] = field(default_factory=list)

    def block(self, name: str) -> Dict[str, Any]:
        b = self.raw.get(name, {})
        if not isinstance(b, dict):
            raise SpecError(f"[{name}] must be a table")
        return b


def _load_distribution(d: Dict[str, Any]) -> DistributionSpec:
    if "fixture" in d:
        try:
            return fixture(d["fixture"])
        except KeyError as e:
            raise SpecError(str(e)) from None
    name = d.get("name", "unnamed")
    mode = d.get("mode")
    if mode == "one_form":
        delta = d.get("delta")
        if not isinstance(delta, list) or len(delta) != 3:
            raise SpecError("one_form mode needs delta = [c1, c2, c3]")
        return one_form_from_strings(name, [str(c) for c in delta])
    if mode == "pair":
        x1, x2 = d.get("X1"), d.get("X2")
        if not (isinstance(x1, list) and isinstance(x2, list) and len(x1) == len(x2) == 3):
            raise SpecError("pair mode needs X1 = [...] and X2 = [...] with three components")
        return pair_from_strings(name, [str(c) for c in x1], [str(c) for c in x2])
    raise SpecError(f"[distribution] mode must be 'one_form' or 'pair', got {mode!r}")


def _load_planar(p: Dict[str, Any]) -> Tuple[PlanarField, str]:
    if "fixture" in p:
        key = str(p["fixture"]).upper()
        if key not in PLANAR_FIXTURES:
            raise SpecError(f"unknown planar fixture {p['fixture']!r}")
        return PLANAR_FIXTURES[key](), key
    if "A" not in p or "B" not in p:
        raise SpecError("[planar] needs A and B (polynomials in x, y)")
    return PlanarField(parse_poly(str(p["A"]), 2), parse_poly(str(p["B"]), 2)), p.get("name", "planar")


def load_spec(path) -> SpecFile:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise SpecError(f"cannot read spec file: {e}") from None
    try:
        raw = tomllib.loads(data.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
        raise SpecError(f"spec file is not valid TOML: {e}") from None
    sf = SpecFile(path, hashlib.sha256(data).hexdigest(), raw)
    if "distribution" in raw:
        sf.distribution = _load_distribution(sf.block("distribution"))
    if "planar" in raw:
        sf.planar, sf.planar_name = _load_planar(sf.block("planar"))
        sf.planar_candidates = [rational_point(c, 2) for c in sf.block("planar").get("candidates", [])]
    for entry in raw.get("points", []):
        at = rational_point(entry.get("at"), 3)
        t = entry.get("tangent")
        sf.points.append(PointEntry(at, rational_point(t, 3) if t is not None else None,
                                    str(entry.get("label", ""))))
    if sf.distribution is None and sf.planar is None:
        raise SpecError("spec needs a [distribution] or a [planar] block")
    return sf
