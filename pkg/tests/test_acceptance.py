"""Acceptance criteria 1-15, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
Each check returns (ok, detail); the wall-clock budget is part of the check.
"""
import json
import math
import random
import tempfile
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from sardkit.cli import run
from sardkit.distribution import (
    characteristic_field, fixture, martinet_function, restricted_parallel, sample_sigma_points,
)
from sardkit.poly import Poly, PolyVectorField, lie_bracket, parse_poly
from sardkit.reduction import (
    Fail, PlanarField, Witness, blow_up_point, chart_overlap_residual, divergence_membership,
    divisor_singular_points, final_singularity_check, focus2d, hp_metric_compare,
    jacobian_classify,
)
from sardkit.trajectory import (
    HPMetric, Hyperplane, Section, abnormal_lift, comparison_constant, endpoint_rank,
    monodromic_length_experiment, poincare_returns, reachable_set, stokes_action,
    transition_monotonicity_check,
)

FIXTURES = Path(str(resources.files("sardkit") / "fixtures"))
SEED = 20240601
SEC = Section((0.0, 0.0), (1.0, 0.0))
MARTINET = fixture("MARTINET")


def _analyze(name):
    with tempfile.TemporaryDirectory() as d:
        code = run(["analyze", str(FIXTURES / name), "--out", d, "--seed", str(SEED)])
        rep = json.loads((Path(d) / "report.json").read_text()) if code == 0 else None
    return code, rep


def _focus_return(r):
    return r / math.sqrt(1 + 4 * math.pi * r * r)


def c01():
    code, rep = _analyze("martinet.toml")
    res = rep["results"]
    md = martinet_function(MARTINET)
    Z = characteristic_field(MARTINET, md)
    pts = sample_sigma_points(md, 100, seed=SEED)
    ok = (code == 0 and res["h"] == "x1" and res["S_empty"] is True and len(pts) == 100
          and restricted_parallel(Z, (0, 1, 0), pts))
    return ok, f"h={res['h']}, S_empty={res['S_empty']}, Z||d/dx2 on {len(pts)} points"


def c02():
    code, rep = _analyze("heisenberg.toml")
    res = rep["results"]
    ok = code == 0 and res["sigma_empty"] is True and res["h"] == "1"
    return ok, f"h={res['h']}, sigma_empty={res['sigma_empty']}"


def c03():
    rep = final_singularity_check(PlanarField.parse("x^2*y", "-x*y^2"))
    names = ("tangency_x", "tangency_y", "identity", "saddle")
    ok1 = (rep.alpha, rep.beta) == (1, 1) and all(rep.finding(n).passed for n in names)
    ok1 = ok1 and rep.singularity_class == "Saddle"
    bad = final_singularity_check(PlanarField.parse("x", "y"))
    m = bad.finding("membership")
    ok2 = isinstance(bad.membership, Fail) and m.passed is False
    return ok1 and ok2, (f"alpha=beta={rep.alpha}, class={rep.singularity_class}; "
                         f"(x,y): {m.detail}")


def c04():
    Z = focus2d()
    w = divergence_membership(Z, max_deg=1)
    ok = (isinstance(w, Witness) and w.f == parse_poly("-4*y", 2)
          and w.g == parse_poly("4*x", 2) and w.residual(Z).is_zero())
    return ok, f"f={w.f}, g={w.g}, residual=0"


def c05():
    u, v = Poly.var(0, 2), Poly.var(1, 2)
    a, _ = blow_up_point(PlanarField.parse("x", "y"))
    ok1 = a.r == 1 and a.dicritical and a.strict.A == Poly.const(1, 2) and a.strict.B.is_zero()
    b, _ = blow_up_point(PlanarField.parse("x", "2*y"))
    pts = divisor_singular_points(b).rational
    ok2 = (b.r == 0 and not b.dicritical and b.strict.A == u and b.strict.B == v
           and [jacobian_classify(b.strict, p).cls for p in pts] == ["Node"])
    return ok1 and ok2, "radial: r=1 dicritical strict=d/du; (x,2y): r=0 node on divisor"


def c06():
    ss, _ = poincare_returns(focus2d().reversed(), SEC, 0.5, 50, tol=1e-10)
    r, worst = 0.5, 0.0
    for s in ss:
        r = _focus_return(r)
        worst = max(worst, abs(s - r) / r)
    return len(ss) == 50 and worst < 1e-6, f"50 returns, max rel err {worst:.2e}"


_LENGTHS = {}


def _lengths(s0):
    if s0 not in _LENGTHS:
        _LENGTHS[s0] = monodromic_length_experiment(focus2d().reversed(), SEC, s0, 200,
                                                    tol=1e-10)
    return _LENGTHS[s0]


def c07():
    res = _lengths(0.5)
    L = res.lengths
    ratio = L[199] / L[99]
    ok = len(L) == 200 and 0.45 <= res.fit_exponent <= 0.55 and ratio > 1.3
    return ok, f"e={res.fit_exponent:.4f}, L200/L100={ratio:.4f}"


def c08():
    a, b = _lengths(0.5), _lengths(0.25)
    C = comparison_constant(a.lengths, b.lengths)
    ok = len(b.lengths) == 200 and C <= 1.0 + 1e-3
    return ok, f"C={C:.6f} over k<=200"


def c09():
    reg = transition_monotonicity_check(
        PlanarField.parse("1", "0"), Section((0.0, 0.0), (0.0, 1.0)),
        Section((1.0, 0.0), (0.0, 1.0)), samples=50, seed=SEED)
    sad = transition_monotonicity_check(
        PlanarField.parse("x", "-y"), Section((0.0, 1.0), (1.0, 0.0)),
        Section((1.0, 0.0), (0.0, 1.0)), samples=50, seed=SEED,
        metric=HPMetric((1, 0), (2, 1)), saddle=True)
    ok = (reg.pairs == sad.pairs == 50 and reg.violations == 0 and sad.violations == 0
          and reg.monotone_violations == 0 and sad.monotone_violations == 0
          and sad.sandwich_violations == 0 and reg.K_used == 1.0)
    return ok, (f"regular K=1 viol={reg.violations}; saddle K={sad.K_used:.3g} "
                f"viol={sad.violations}, monotone={sad.monotone_kind}")


def c10():
    lift = abnormal_lift(MARTINET, [0, 1], (0, 0, 0), (0, 0, 1))
    ok1 = lift.max_pairing < 1e-8 and np.max(np.abs(lift.norms - 1)) < 1e-9
    rng = np.random.default_rng(SEED)
    good = 0
    for _ in range(20):
        N = int(rng.integers(1, 9))
        u = rng.uniform(-1, 1, (2, N))
        x0 = rng.uniform(-1, 1, 3)
        x0[0] = 0.0
        good += abnormal_lift(MARTINET, u, x0, (0, -x0[0] ** 2, 1)).gronwall_ok
    return ok1 and good == 20, f"max|p.X|={lift.max_pairing:.1e}, gronwall {good}/20"


def c11():
    md = martinet_function(MARTINET)
    s = np.linspace(0, 1, 41)
    arc = np.stack([s, 0 * s, s], axis=1)
    cov = np.stack([0 * s, -s ** 2, 0 * s + 1], axis=1)
    secs = [Hyperplane((0.0, 1.0, 0.0), float(k)) for k in (1, 2, 3)]
    res = stokes_action(MARTINET, md, arc, cov, secs)
    return res.relative_spread < 1e-6, f"I_k={[round(a, 10) for a in res.actions]}, " \
                                       f"spread={res.relative_spread:.1e}"


def c12():
    a = endpoint_rank(MARTINET, (0, 0, 0), np.tile([[0.0], [1.0]], (1, 16)))
    b = endpoint_rank(MARTINET, (0, 0, 0), np.ones((2, 16)))
    ok = a.ratio < 1e-6 and a.rank == 2 and b.rank == 3 and b.ratio > 1e-3
    return ok, (f"u=(0,1): ratio={a.ratio:.1e} rank {a.rank}; "
                f"u=(1,1): ratio={b.ratio:.3f} rank {b.rank}")


def c13():
    tree = reachable_set(MARTINET, martinet_function(MARTINET), (0, 0, 0), 1.0)
    ends = sorted((tree.vertices[e.end].point for e in tree.edges), key=lambda p: p[1])
    ok = (len(tree.edges) == 2 and abs(tree.total_length - 2.0) < 1e-6
          and np.allclose(ends[0], [0, -1, 0], atol=1e-6)
          and np.allclose(ends[1], [0, 1, 0], atol=1e-6))
    return ok, f"{len(tree.edges)} edges, total length {tree.total_length:.9f}"


def c14():
    t = hp_metric_compare((1, 0), (1, 1), grid=(1, 64))
    g = [parse_poly("x^2*y^2", 2), Poly.zero(2)]
    lo = hp_metric_compare((1, 1), (2, 3), g=g, grid=(1, 64))
    hi = hp_metric_compare((1, 1), (2, 3), g=g, grid=(1, 128))
    dk = abs(float(lo.k) - float(hi.k)) / float(hi.k)
    dK = abs(float(lo.K) - float(hi.K)) / float(hi.K)
    ok = t.k == 1 and t.K == 2 and dk < 0.05 and dK < 0.05
    return ok, (f"trivial (k,K)=({t.k},{t.K}); nontrivial k {float(lo.k):.4f}->{float(hi.k):.4f}, "
                f"K {float(lo.K):.4f}->{float(hi.K):.4f}")


def _rpoly(rng, arity=3, deg=3, terms=5):
    d = {}
    for _ in range(rng.randint(0, terms)):
        e = [rng.randint(0, deg) for _ in range(arity)]
        if sum(e) <= deg:
            d[tuple(e)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Poly(arity, d)


def c15():
    rng = random.Random(SEED)
    ring = 0
    for _ in range(500):
        p, q, r = (_rpoly(rng) for _ in range(3))
        ring += (p + q == q + p and p * q == q * p and (p * q) * r == p * (q * r)
                 and p * (q + r) == p * q + p * r and (p + q) + r == p + (q + r))
    jac = 0
    for _ in range(100):
        X, Y, W = (PolyVectorField([_rpoly(rng, deg=2, terms=3) for _ in range(3)])
                   for _ in range(3))
        jac += (lie_bracket(X, lie_bracket(Y, W)) + lie_bracket(Y, lie_bracket(W, X))
                + lie_bracket(W, lie_bracket(X, Y))).is_zero()
    chart = 0
    n_chart = 0
    while n_chart < 50:
        A, B = _rpoly(rng, 2, 3, 4), _rpoly(rng, 2, 3, 4)
        if A.is_zero() and B.is_zero():
            continue
        Z = PlanarField(A, B)
        if Z.at((0, 0)) != (0, 0):
            continue
        c1, c2 = blow_up_point(Z)
        p = (Fraction(rng.randint(1, 9), rng.randint(1, 5)), -Fraction(rng.randint(1, 9), 2))
        chart += chart_overlap_residual(c1, c2, p) == 0
        n_chart += 1
    starts = sorted(rng.uniform(0.02, 1.0) for _ in range(50))
    images = [poincare_returns(focus2d().reversed(), SEC, s, 1)[0][0] for s in starts]
    mono = int(np.all(np.diff(images) > 0))
    det = 0
    with tempfile.TemporaryDirectory() as d:
        for k in range(50):
            outs = []
            for sub in ("a", "b"):
                out = Path(d) / f"{sub}{k}"
                run(["analyze", str(FIXTURES / "twoplanes.toml"), "--out", str(out),
                     "--seed", str(k), "--samples", "10"])
                outs.append((out / "report.json").read_bytes())
            det += outs[0] == outs[1]
    ok = ring == 500 and jac == 100 and chart == 50 and mono and det == 50
    return ok, (f"ring {ring}/500, Jacobi {jac}/100, chart overlap {chart}/50, "
                f"Poincare monotone {'yes' if mono else 'no'} (50 starts), determinism {det}/50")


CRITERIA = [
    (1, "Martinet analyze", c01, 1.0),
    (2, "Heisenberg analyze", c02, 1.0),
    (3, "saddle criterion", c03, 1.0),
    (4, "divergence witness", c04, 1.0),
    (5, "blow-up correctness", c05, 1.0),
    (6, "return map", c06, 30.0),
    (7, "monodromic length divergence", c07, 60.0),
    (8, "comparison property", c08, 60.0),
    (9, "transition monotonicity", c09, 30.0),
    (10, "abnormal lift", c10, 10.0),
    (11, "Stokes action", c11, 10.0),
    (12, "end-point rank", c12, 10.0),
    (13, "reachable set", c13, 5.0),
    (14, "HP metric", c14, 30.0),
    (15, "property suites", c15, 60.0),
]


def evaluate(fn, budget):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # report, don't hide
        ok, detail = False, f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    if dt >= budget:
        ok, detail = False, f"{detail}; over budget"
    return bool(ok), detail, dt


def line(n, title, ok, detail, dt, budget):
    return f"criterion {n:2d} {title}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s < {budget:g}s) {detail}"


@pytest.mark.parametrize("n,title,fn,budget", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(n, title, fn, budget, capsys):
    ok, detail, dt = evaluate(fn, budget)
    with capsys.disabled():
        print("\n" + line(n, title, ok, detail, dt, budget))
    assert ok, detail


if __name__ == "__main__":
    fails = 0
    for n, title, fn, budget in CRITERIA:
        ok, detail, dt = evaluate(fn, budget)
        fails += not ok
        print(line(n, title, ok, detail, dt, budget))
    raise SystemExit(1 if fails else 0)
