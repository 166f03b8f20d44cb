"""Reducing planar singularities by blow-ups, and the saddle criterion after reduction."""
import json

from sardkit.poly import Poly
from sardkit.reduction import (
    PlanarField, blow_up_point, chart_overlap_residual, divergence_membership,
    final_singularity_check, focus2d, hp_metric_compare, resolve,
)

radial = PlanarField.parse("x", "y")
c1, c2 = blow_up_point(radial)
print("radial: r =", c1.r, "dicritical =", c1.dicritical, "strict =", c1.strict.to_strings(("u", "v")))

c1, c2 = blow_up_point(PlanarField.parse("x", "2*y"))
print("node:   r =", c1.r, "dicritical =", c1.dicritical, "strict =", c1.strict.to_strings(("u", "v")))
print("overlap residual at (2, 3):", chart_overlap_residual(c1, c2, (2, 3)))

# a cusp needs two rounds
cusp = PlanarField.parse("y", "-x^3")
tree = resolve(cusp)
print("\ncusp resolved at depth", tree.depth)
print([(s.point, s.cls, s.det) for s in tree.final_reports()])
print(json.dumps(tree.as_dict()["root"]["children"][0]["field"]))

# divergence lies in the ideal of the coefficients
print("\nfocus witness:", divergence_membership(focus2d(), max_deg=1))
print("(x, y):", divergence_membership(PlanarField.parse("x", "y")))

rep = final_singularity_check(PlanarField.parse("x^2*y", "-x*y^2"))
print(f"\nalpha={rep.alpha} beta={rep.beta} class={rep.singularity_class}")
for f in rep.findings:
    print(f"  {f.name:10s} {f.passed}  {f.detail}")

# degenerate metric near a divisor corner
print("\ntrivial comparison:", hp_metric_compare((1, 0), (1, 1), grid=(1, 32)))
g = [Poly(2, {(2, 2): 1}), Poly.zero(2)]
for n in (16, 32, 64):
    c = hp_metric_compare((1, 1), (2, 3), g=g, grid=(1, n))
    print(f"  n={n:3d} k={float(c.k):.6f} K={float(c.K):.6f}")
