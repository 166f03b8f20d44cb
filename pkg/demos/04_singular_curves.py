"""Singular horizontal curves of the Martinet distribution: lifts, end-point rank, reach."""
import numpy as np

from sardkit.distribution import fixture, martinet_function
from sardkit.trajectory import (
    Hyperplane, abnormal_lift, endpoint_rank, reachable_set, stokes_action,
)

spec = fixture("MARTINET")
md = martinet_function(spec)

# moving along x2 inside {x1 = 0} is singular; along x1 it is not
for u in ([0, 1], [1, 0]):
    lift = abnormal_lift(spec, u, (0, 0, 0), (0, 0, 1))
    print(f"u={u}: max pairing {lift.max_pairing:.2e}, singular={lift.singular}, "
          f"|p| in [{lift.norms.min():.6f}, {lift.norms.max():.6f}]")

for u in ([0, 1], [1, 1]):
    er = endpoint_rank(spec, (0, 0, 0), np.tile(np.array(u, float).reshape(2, 1), (1, 16)))
    print(f"u={u}: singular values {np.round(er.singular_values[:3], 6)}, rank {er.rank}")

# the action of an arc of covectors is carried along unchanged
s = np.linspace(0, 1, 41)
arc = np.stack([s, 0 * s, s], axis=1)
cov = np.stack([0 * s, -s ** 2, 0 * s + 1], axis=1)
res = stokes_action(spec, md, arc, cov, [Hyperplane((0.0, 1.0, 0.0), float(k)) for k in (1, 2, 3)])
print("actions:", np.round(res.actions, 12), "spread", f"{res.relative_spread:.1e}")

tree = reachable_set(spec, md, (0, 0, 0), 1.0)
print("\nMartinet reach tree, L = 1")
for e in tree.edges:
    print(f"  edge {e.index}: {tree.vertices[e.start].point} -> {tree.vertices[e.end].point}, "
          f"length {e.length:.9f}")

spec = fixture("TWOPLANES")
tree = reachable_set(spec, martinet_function(spec), (1, 0, 0), 2.0)
print("\nTWOPLANES reach tree from (1,0,0), L = 2")
for v in tree.vertices:
    print(f"  {v.kind:9s} {np.round(v.point, 9)} at length {v.depth_length:.6f}")
