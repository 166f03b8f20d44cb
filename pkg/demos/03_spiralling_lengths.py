"""Lengths of a trajectory spiralling into a weak focus grow without bound.

In polar form the reversed field is r' = -r^3, theta' = -1, so the k-th return
to the positive x axis has r_k = r_0 / sqrt(1 + 4 pi k r_0^2) and the length
up to it grows like sqrt(k).
"""
import math
from pathlib import Path

import numpy as np

from sardkit.reduction import focus2d
from sardkit.trajectory import (
    Section, comparison_constant, monodromic_length_experiment, poincare_returns,
    write_trajectory_csv,
)

field = focus2d().reversed()
sec = Section((0.0, 0.0), (1.0, 0.0))

ss, traj = poincare_returns(field, sec, 0.5, 50, tol=1e-10)
r = 0.5
errs = []
for s in ss:
    r = r / math.sqrt(1 + 4 * math.pi * r * r)
    errs.append(abs(s - r) / r)
print(f"50 returns, worst relative error {max(errs):.2e}")

res = monodromic_length_experiment(field, sec, 0.5, 200, tol=1e-10)
L = np.array(res.lengths)
print(f"L_100 = {L[99]:.4f}  L_200 = {L[199]:.4f}  ratio {L[199] / L[99]:.4f}")
print(f"fit L_k ~ {res.fit_prefactor:.3f} k^{res.fit_exponent:.4f}")

inner = monodromic_length_experiment(field, sec, 0.25, 200, tol=1e-10)
print("comparison constant (0.25 vs 0.5):", comparison_constant(res.lengths, inner.lengths))

out = Path("demo_out")
out.mkdir(exist_ok=True)
write_trajectory_csv(out / "focus_50_returns.csv", traj)
print("wrote", out / "focus_50_returns.csv", len(traj.times), "rows")
