import csv
import math

import numpy as np
import pytest

from sardkit.distribution import fixture, martinet_function
from sardkit.poly import PolyVectorField, parse_poly
from sardkit.reduction import PlanarField, focus2d
from sardkit.trajectory import (
    HPMetric, Hyperplane, Junction, LiftError, Section, abnormal_lift, endpoint_rank, integrate,
    monodromic_length_experiment, poincare_returns, reach_tree_json, reachable_set,
    section_crossings, stokes_action, transition_monotonicity_check, write_trajectory_csv,
)
from sardkit.trajectory.integrate import IntegrationError

MARTINET = fixture("MARTINET")
SEC = Section((0.0, 0.0), (1.0, 0.0))


def focus_return(r):
    return r / math.sqrt(1 + 4 * math.pi * r * r)


# -- integrator ---------------------------------------------------------------------------

def test_constant_field_time_and_length():
    X = PolyVectorField.parse(["0", "1", "0"])
    tr = integrate(X, (0, 0, 0), t_max=1.0)
    assert tr.status == "t_max"
    assert np.allclose(tr.end, [0, 1, 0], atol=1e-12)
    assert abs(tr.length - 1.0) < 1e-12
    assert tr.cum_length[0] == 0 and np.all(np.diff(tr.cum_length) >= 0)


def test_length_stop():
    X = PolyVectorField.parse(["1", "1", "0"])
    tr = integrate(X, (0, 0, 0), length_max=1.0)
    assert tr.status == "length" and abs(tr.length - 1.0) < 1e-9


def test_saddle_region_exit():
    Z = PlanarField.parse("x", "-y")
    tr = integrate(Z, (1e-3, 1.0), t_max=100, region=lambda x: 1.0 - abs(x[0]))
    assert tr.status == "region_exit"
    assert np.allclose(tr.end, [1.0, 1e-3], rtol=1e-7)


def test_reversed_focus_matches_radius():
    Z = focus2d().reversed()
    tr = integrate(Z, (0.5, 0.0), t_max=10.0, tol=1e-10)
    r = np.hypot(tr.points[:, 0], tr.points[:, 1])
    exact = 1 / np.sqrt(4 + 2 * tr.times)       # r' = -r^3
    assert np.max(np.abs(r - exact)) < 1e-8


def test_tol_range_enforced():
    with pytest.raises(ValueError):
        integrate(focus2d(), (0.5, 0.0), t_max=1.0, tol=1e-14)


def test_hp_metric_length():
    Z = PlanarField.parse("1", "0")
    tr = integrate(Z, (1.0, 1.0), t_max=1.0, metric=HPMetric((1, 0), (1, 1)), tol=1e-12)
    # along u: d(u) = 1, d(uv) = v du = 1, so speed sqrt(2)
    assert abs(tr.length - math.sqrt(2)) < 1e-9


# -- sections and returns ---------------------------------------------------------------

def test_section_crossings_on_circle():
    Z = PlanarField.parse("-y", "x")
    tr = integrate(Z, (0.5, 0.0), t_max=6.5 * math.pi, tol=1e-10)
    cr = section_crossings(tr, SEC)
    assert [round(c.t / math.pi, 8) for c in cr] == [2.0, 4.0, 6.0]
    assert all(b.t > a.t for a, b in zip(cr, cr[1:]))


def test_return_map_matches_closed_form():
    ss, tr = poincare_returns(focus2d().reversed(), SEC, 0.5, 20, tol=1e-10)
    r = 0.5
    for s in ss:
        r = focus_return(r)
        assert abs(s - r) / r < 1e-6


def test_return_map_monotone():
    starts = np.linspace(0.1, 0.9, 12)
    images = [poincare_returns(focus2d().reversed(), SEC, s, 1)[0][0] for s in starts]
    assert np.all(np.diff(images) > 0)


def test_base_point_excluded():
    with pytest.raises(ValueError):
        poincare_returns(focus2d().reversed(), SEC, 0.0, 1)


def test_monodromic_experiment_short():
    res = monodromic_length_experiment(focus2d().reversed(), SEC, 0.5, 40)
    assert res.complete and len(res.lengths) == 40
    assert all(b > a for a, b in zip(res.lengths, res.lengths[1:]))
    assert 0.4 < res.fit_exponent < 0.6


# -- transitions --------------------------------------------------------------------------

def test_transition_regular():
    Z = PlanarField.parse("1", "0")
    src = Section((0.0, 0.0), (0.0, 1.0))
    dst = Section((1.0, 0.0), (0.0, 1.0))
    rep = transition_monotonicity_check(Z, src, dst, samples=20, seed=2)
    assert rep.violations == 0 and rep.monotone_violations == 0


def test_transition_saddle():
    Z = PlanarField.parse("x", "-y")
    src = Section((0.0, 1.0), (1.0, 0.0))
    dst = Section((1.0, 0.0), (0.0, 1.0))
    rep = transition_monotonicity_check(Z, src, dst, samples=20, seed=2,
                                        metric=HPMetric((1, 0), (2, 1)), saddle=True)
    assert rep.violations == 0 and rep.monotone_violations == 0 and rep.sandwich_violations == 0
    for d in rep.samples:
        assert abs(d.length - math.hypot(1, d.s) * (1 - d.s)) < 1e-8


# -- lifts, action, end-point rank --------------------------------------------------------

def test_abnormal_lift_martinet():
    lift = abnormal_lift(MARTINET, [0, 1], (0, 0, 0), (0, 0, 1))
    assert lift.singular and lift.max_pairing < 1e-8
    assert np.allclose(lift.norms, 1.0, atol=1e-9)
    assert lift.gronwall_ok


def test_lift_non_singular_direction():
    lift = abnormal_lift(MARTINET, [1, 0], (0, 0, 0), (0, 0, 1))
    assert not lift.singular


def test_lift_rejects_bad_covector():
    with pytest.raises(LiftError):
        abnormal_lift(MARTINET, [0, 1], (0, 0, 0), (1, 0, 0))


def test_gronwall_random_controls():
    rng = np.random.default_rng(5)
    for _ in range(5):
        u = rng.uniform(-1, 1, (2, 8))
        assert abnormal_lift(MARTINET, u, (0, 0, 0), (0, 0, 1)).gronwall_ok


def test_stokes_action_invariant():
    md = martinet_function(MARTINET)
    s = np.linspace(0, 1, 21)
    arc = np.stack([s, 0 * s, s], axis=1)
    cov = np.stack([0 * s, -s ** 2, 0 * s + 1], axis=1)
    secs = [Hyperplane((0.0, 1.0, 0.0), float(k)) for k in (1, 2, 3)]
    res = stokes_action(MARTINET, md, arc, cov, secs)
    assert len(res.actions) == 4
    assert res.relative_spread < 1e-6


def test_endpoint_rank():
    singular = endpoint_rank(MARTINET, (0, 0, 0), np.tile([[0.0], [1.0]], (1, 16)))
    assert singular.rank == 2 and singular.ratio < 1e-6
    regular = endpoint_rank(MARTINET, (0, 0, 0), np.ones((2, 16)))
    assert regular.rank == 3 and regular.ratio > 1e-3


# -- reachable set ------------------------------------------------------------------------

def test_reach_martinet():
    md = martinet_function(MARTINET)
    tree = reachable_set(MARTINET, md, (0, 0, 0), 1.0)
    assert len(tree.edges) == 2 and abs(tree.total_length - 2.0) < 1e-6
    ends = sorted(tree.vertices[e.end].point[1] for e in tree.edges)
    assert np.allclose(ends, [-1, 1], atol=1e-6)
    assert reachable_set(MARTINET, md, (0, 0, 0), 0.0).edges == []


def test_reach_off_surface_rejected():
    md = martinet_function(MARTINET)
    with pytest.raises(ValueError):
        reachable_set(MARTINET, md, (1, 0, 0), 1.0)


def test_reach_twoplanes_branches_at_origin():
    spec = fixture("TWOPLANES")
    md = martinet_function(spec)
    tree = reachable_set(spec, md, (1, 0, 0), 2.0)
    leaves = sorted(tuple(np.round(v.point, 6)) for v in tree.leaves())
    assert leaves == [(-1, 0, 0), (0, -1, 0), (0, 1, 0), (3, 0, 0)]
    j = Junction("axis", (parse_poly("x1"), parse_poly("x2")),
                 ((0, 1, 0), (0, -1, 0), (-1, 0, 0)))
    tree2 = reachable_set(spec, md, (1, 0, 0), 2.0, junctions=[j])
    assert len(tree2.leaves()) == 4


# -- io -----------------------------------------------------------------------------------

def test_trajectory_csv(tmp_path):
    tr = integrate(focus2d(), (0.1, 0.0), t_max=1.0)
    path = write_trajectory_csv(tmp_path / "t.csv", tr)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "u", "v", "cum_length"]
    assert len(rows) == len(tr.times) + 1


def test_reach_json_writes_polylines(tmp_path):
    md = martinet_function(MARTINET)
    d = reach_tree_json(reachable_set(MARTINET, md, (0, 0, 0), 1.0), tmp_path)
    for e in d["edges"]:
        assert (tmp_path / e["polyline"]).exists()
