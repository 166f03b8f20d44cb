"""Martinet surfaces of the shipped distributions and where their points sit."""
from sardkit.distribution import (
    FIXTURES, characteristic_field, classify_point, fixture, hormander_check, martinet_function,
    restricted_parallel, sample_sigma_points, tangency_locus,
)

for name in FIXTURES:
    spec = fixture(name)
    md = martinet_function(spec)
    Z = characteristic_field(spec, md)
    print(f"{name:11s} h = {md.h!s:14s} Z = {Z.to_strings()}")

# Martinet: Sigma = {x1 = 0} and Z restricted there is the coordinate field d/dx2
spec = fixture("MARTINET")
md = martinet_function(spec)
Z = characteristic_field(spec, md)
pts = sample_sigma_points(md, 100, seed=0)
print("\nZ parallel to d/dx2 on", len(pts), "sampled points:", restricted_parallel(Z, (0, 1, 0), pts))
print("tangency locus certified empty:", tangency_locus(spec, md).certified_empty)
print("bracket rank and depth at 0:", hormander_check(spec, (0, 0, 0)))

# the two planes x1 = 0 and x2 = 0 cross along the x3 axis
spec = fixture("TWOPLANES")
md = martinet_function(spec)
for p, T in [((0, 0, 1), (0, 0, 1)), ((0, 2, 0), None), ((1, 1, 0), None)]:
    pc = classify_point(spec, md, p, T)
    print(p, pc.label, pc.diagnostics())

spec = fixture("TANGENTIAL")
md = martinet_function(spec)
print("\nTANGENTIAL at (1,0,0) along d/dx1:", classify_point(spec, md, (1, 0, 0), (1, 0, 0)).label)
