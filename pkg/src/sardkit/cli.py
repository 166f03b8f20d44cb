"""Command-line entry point.

Every command reads a TOML spec, writes ``report.json`` (plus CSVs for the
numerical commands) into ``--out``, and returns 0, 2 on a precondition
violation, or 1 on an internal error.
"""
from __future__ import annotations

import argparse
import sys
import traceback
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from . import __version__
from .distribution import (
    characteristic_field, check_well_formed, classify_point, hormander_check, martinet_function,
    restricted_parallel, sample_sigma_points, tangency_locus,
)
from .poly import parse_poly
from .reduction import (
    Fail, NumericBound, Witness, divergence_membership, final_singularity_check,
    jacobian_classify, resolve,
)
from .report import emit_report
from .specfile import SpecError, SpecFile, float_point, load_spec, rational_point
from .trajectory import (
    HPMetric, Junction, Section, abnormal_lift, comparison_constant, endpoint_rank,
    monodromic_length_experiment, power_fit, reach_tree_json, reachable_set,
    transition_monotonicity_check, write_trajectory_csv,
)
from .trajectory.sections import poincare_returns

COMMANDS = ("analyze", "classify", "resolve", "trace", "reach", "endpoint", "divcheck")


class Precondition(ValueError):
    pass


def _need_distribution(sf: SpecFile):
    if sf.distribution is None:
        raise Precondition("this command needs a [distribution] block")
    return sf.distribution


def _need_planar(sf: SpecFile):
    if sf.planar is None:
        raise Precondition("this command needs a [planar] block")
    return sf.planar


def _vec(v) -> List[str]:
    return [str(c) for c in v]


# -- commands ------------------------------------------------------------------------------

def cmd_analyze(sf: SpecFile, args, outdir: Path, warnings: List[str]) -> Dict[str, Any]:
    res: Dict[str, Any] = {}
    if sf.distribution is not None:
        res.update(_analyze_distribution(sf, args, warnings))
    if sf.planar is not None:
        Z = sf.planar
        pts = [(Fraction(0), Fraction(0))] + [p for p in sf.planar_candidates if p != (0, 0)]
        res["planar"] = {
            "name": sf.planar_name,
            "field": Z.to_strings(),
            "divergence": str(Z.divergence()),
            "points": [jacobian_classify(Z, p).as_dict() for p in pts],
        }
    return res


def _analyze_distribution(sf: SpecFile, args, warnings: List[str]) -> Dict[str, Any]:
    spec = sf.distribution
    warnings.extend(check_well_formed(spec, seed=args.seed))
    md = martinet_function(spec)
    Z = characteristic_field(spec, md)
    X1, X2 = spec.fields()
    res: Dict[str, Any] = {
        "name": spec.name,
        "mode": spec.mode,
        "X1": X1.to_strings(), "X2": X2.to_strings(),
        "h_raw": str(md.h_raw),
        "h": str(md.h),
        "sigma_empty": md.sigma_empty,
        "Z": Z.to_strings(),
    }
    pts = [p.at for p in sf.points]
    if md.sigma_empty:
        res["S_empty"] = True
    else:
        loc = tangency_locus(spec, md, pts)
        res["S_empty"] = loc.certified_empty
        res["tangency_system"] = {"generators": [str(g) for g in loc.tangency.generators],
                                  "certified_empty": loc.tangency.certified_empty,
                                  "candidate_zeros": [_vec(p) for p in loc.tangency.candidate_zeros]}
        res["singular_system"] = {"generators": [str(g) for g in loc.singular.generators],
                                  "certified_empty": loc.singular.certified_empty,
                                  "candidate_zeros": [_vec(p) for p in loc.singular.candidate_zeros]}
        samples = sample_sigma_points(md, args.samples, seed=args.seed)
        tangent = all(Z.apply(md.h)(p) == 0 for p in samples)
        axes = [i for i in range(3)
                if samples and restricted_parallel(Z, [int(i == j) for j in range(3)], samples)]
        res["sigma_samples"] = {"count": len(samples), "Z_tangent": tangent,
                                "Z_parallel_axes": [f"x{i + 1}" for i in axes]}
    rank_at = pts or [(Fraction(0),) * 3]
    res["hormander"] = []
    for p in rank_at:
        r, k = hormander_check(spec, p)
        res["hormander"].append({"point": _vec(p), "rank": r, "depth": k})
        if r < 3:
            warnings.append(f"bracket rank {r} < 3 at {_vec(p)}")
    if sf.points:
        res["points"] = _classify(sf, spec, md)
    return res


def _classify(sf, spec, md):
    out = []
    for e in sf.points:
        pc = classify_point(spec, md, e.at, e.tangent)
        entry = {"point": _vec(e.at), "label": pc.label, "diagnostics": pc.diagnostics()}
        if e.label:
            entry["name"] = e.label
        out.append(entry)
    return out


def cmd_classify(sf: SpecFile, args, outdir, warnings) -> Dict[str, Any]:
    spec = _need_distribution(sf)
    if not sf.points:
        raise Precondition("classify needs at least one [[points]] entry")
    md = martinet_function(spec)
    return {"name": spec.name, "h": str(md.h), "points": _classify(sf, spec, md)}


def cmd_resolve(sf: SpecFile, args, outdir, warnings) -> Dict[str, Any]:
    Z = _need_planar(sf)
    block = sf.block("resolve")
    depth = args.max_depth if args.max_depth is not None else int(block.get("max_depth", 8))
    tree = resolve(Z, depth, candidates=sf.planar_candidates)
    if tree.depth_capped:
        warnings.append(f"resolution stopped at depth cap {depth} with non-elementary points left")
    finals = tree.final_reports()
    return {
        "field": Z.to_strings(),
        "tree": tree.as_dict(),
        "final_classes": [s.cls for s in finals],
    }


def _membership_dict(m) -> Dict[str, Any]:
    if isinstance(m, Witness):
        return {"kind": m.kind, "f": str(m.f), "g": str(m.g), "degree": m.degree}
    if isinstance(m, NumericBound):
        return {"kind": m.kind, "K": m.K, "residual": m.residual, "grid": list(m.grid),
                "degree": m.degree}
    assert isinstance(m, Fail)
    return {"kind": m.kind, "reason": m.reason, "point": _vec(m.point)}


def cmd_divcheck(sf: SpecFile, args, outdir, warnings) -> Dict[str, Any]:
    Z = _need_planar(sf)
    block = sf.block("divcheck")
    max_deg = args.max_depth if args.max_depth is not None else int(block.get("max_deg", 4))
    mem = divergence_membership(Z, max_deg, candidates=sf.planar_candidates)
    rep = final_singularity_check(Z, max_deg)
    if isinstance(mem, NumericBound):
        warnings.append("no exact witness found; numeric bound reported")
    return {
        "field": Z.to_strings(),
        "divergence": str(Z.divergence()),
        "membership": _membership_dict(mem),
        "final_check": {
            "alpha": rep.alpha, "beta": rep.beta,
            "reduced": rep.reduced.to_strings(),
            "findings": [f.as_dict() for f in rep.findings],
            "class": rep.singularity_class,
        },
    }


def _section(d, key) -> Section:
    if not isinstance(d, dict) or "base" not in d or "dir" not in d:
        raise SpecError(f"{key} needs base = [..] and dir = [..]")
    return Section(float_point(d["base"], 2), float_point(d["dir"], 2))


def _metric(block):
    if "alpha" in block or "beta" in block:
        a, b = block.get("alpha"), block.get("beta")
        if not (isinstance(a, list) and isinstance(b, list) and len(a) == len(b) == 2):
            raise SpecError("alpha and beta must be pairs of integers")
        return HPMetric(tuple(int(v) for v in a), tuple(int(v) for v in b))
    return None


def cmd_trace(sf: SpecFile, args, outdir: Path, warnings) -> Dict[str, Any]:
    Z = _need_planar(sf)
    block = sf.block("trace")
    field = Z.reversed() if block.get("reverse", False) else Z
    tol = args.tol if args.tol is not None else float(block.get("tol", 1e-10))
    res: Dict[str, Any] = {"field": field.to_strings(), "tol": tol}
    if "section" in block:
        sec = _section(block["section"], "[trace].section")
        s0 = float(block.get("s0", 0.5))
        n = args.returns if args.returns is not None else int(block.get("returns", 50))
        if not 0 < s0 <= 1:
            raise Precondition("s0 must lie in (0, 1]")
        ss, traj = poincare_returns(field.numeric(), sec, s0, n, tol=tol)
        lengths = [h.length for h in traj.hits("return")]
        write_trajectory_csv(outdir / "trajectory.csv", traj)
        with (outdir / "returns.csv").open("w") as fh:
            fh.write("k,s,cum_length\n")
            for k, (s, L) in enumerate(zip(ss, lengths), 1):
                fh.write(f"{k},{format(s, '.17g')},{format(L, '.17g')}\n")
        table: Dict[str, Any] = {"returns": len(ss), "status": traj.status,
                                 "final_s": ss[-1] if ss else None,
                                 "final_length": lengths[-1] if lengths else None,
                                 "csv": "trajectory.csv", "returns_csv": "returns.csv"}
        if traj.status != "return":
            warnings.append(f"return sequence stopped early ({traj.status})")
        if len(lengths) >= 10:
            e, c = power_fit(lengths, max(1, len(lengths) // 10), len(lengths))
            table["fit_exponent"], table["fit_prefactor"] = e, c
        if len(lengths) >= 2:
            table["length_ratio_last_over_half"] = lengths[-1] / lengths[len(lengths) // 2 - 1]
        if "compare_s0" in block:
            other = monodromic_length_experiment(field.numeric(), sec, float(block["compare_s0"]),
                                                 n, tol=tol)
            table["comparison"] = {"s0": float(block["compare_s0"]),
                                   "C": comparison_constant(lengths, other.lengths)}
        res["monodromic"] = table
    tb = sf.block("transition")
    if tb:
        src = _section(tb.get("src"), "[transition].src")
        dst = _section(tb.get("dst"), "[transition].dst")
        metric = _metric(tb)
        rep = transition_monotonicity_check(
            field.numeric(), src, dst, samples=int(tb.get("samples", 50)), metric=metric,
            seed=args.seed, tol=tol, saddle=bool(tb.get("saddle", False)),
            K=tb.get("K"))
        res["transition"] = {
            "pairs": rep.pairs, "K_used": rep.K_used, "K_empirical": rep.K_empirical,
            "violations": rep.violations, "monotone_kind": rep.monotone_kind,
            "monotone_violations": rep.monotone_violations,
            "sandwich_violations": rep.sandwich_violations, "notes": rep.notes,
        }
    if "monodromic" not in res and "transition" not in res:
        raise Precondition("trace needs [trace].section or a [transition] block")
    return res


def cmd_reach(sf: SpecFile, args, outdir: Path, warnings) -> Dict[str, Any]:
    spec = _need_distribution(sf)
    block = sf.block("reach")
    if "x0" not in block or "budget" not in block:
        raise Precondition("[reach] needs x0 and budget")
    x0 = rational_point(block["x0"], 3)
    budget = float(block["budget"])
    junctions = []
    for j in block.get("junctions", []):
        eqs = tuple(parse_poly(str(q), 3) for q in j.get("equations", []))
        dirs = tuple(float_point(d, 3) for d in j.get("directions", []))
        junctions.append(Junction(str(j.get("name", f"j{len(junctions)}")), eqs, dirs))
    md = martinet_function(spec)
    tol = args.tol if args.tol is not None else float(block.get("tol", 1e-10))
    tree = reachable_set(spec, md, x0, budget, junctions=junctions, tol=tol)
    warnings.extend(tree.flags)
    return {"name": spec.name, "x0": _vec(x0), "tree": reach_tree_json(tree, outdir)}


def _control(block) -> np.ndarray:
    if "controls" in block:
        u = np.array(block["controls"], float)
    elif "u" in block:
        pieces = int(block.get("pieces", 16))
        u = np.tile(np.array(block["u"], float).reshape(2, 1), (1, pieces))
    else:
        raise Precondition("[endpoint] needs u = [a, b] or controls = [[...], [...]]")
    if u.ndim != 2 or u.shape[0] != 2:
        raise Precondition("controls must be two rows of piece values")
    return u


def cmd_endpoint(sf: SpecFile, args, outdir, warnings) -> Dict[str, Any]:
    spec = _need_distribution(sf)
    block = sf.block("endpoint")
    x0 = float_point(block.get("x0", [0, 0, 0]), 3)
    u = _control(block)
    er = endpoint_rank(spec, x0, u, h_fd=float(block.get("h_fd", 1e-5)),
                       tol_rank=float(block.get("tol_rank", 1e-6)))
    res = {"name": spec.name, "x0": list(x0), "pieces": int(u.shape[1]),
           "singular_values": [float(s) for s in er.singular_values[:3]],
           "rank": er.rank, "ratio": er.ratio}
    if "p0" in block:
        tol = args.tol if args.tol is not None else 1e-11
        lift = abnormal_lift(spec, u, x0, float_point(block["p0"], 3), tol=tol)
        res["lift"] = {"max_pairing": lift.max_pairing,
                       "singular": lift.singular, "gronwall_ok": lift.gronwall_ok,
                       "norm_range": [float(lift.norms.min()), float(lift.norms.max())]}
    return res


HANDLERS = {
    "analyze": cmd_analyze, "classify": cmd_classify, "resolve": cmd_resolve,
    "trace": cmd_trace, "reach": cmd_reach, "endpoint": cmd_endpoint, "divcheck": cmd_divcheck,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sardkit", description="Singular curves of rank-2 distributions.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("spec", help="TOML spec file")
    ap.add_argument("--out", default="out", help="output directory (default: out)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=None)
    ap.add_argument("--max-depth", type=int, default=None)
    ap.add_argument("--returns", type=int, default=None)
    ap.add_argument("--samples", type=int, default=100, help="Sigma sample count for analyze")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.tol is not None and not 1e-12 <= args.tol <= 1e-3:
            raise Precondition("--tol must lie in [1e-12, 1e-3]")
        if args.returns is not None and args.returns < 1:
            raise Precondition("--returns must be positive")
        sf = load_spec(args.spec)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        warnings: List[str] = []
        results = HANDLERS[args.command](sf, args, outdir, warnings)
        report = {
            "version": __version__,
            "command": args.command,
            "input_sha256": sf.sha256,
            "flags": {"seed": args.seed, "tol": args.tol, "max_depth": args.max_depth,
                      "returns": args.returns},
            "results": results,
            "warnings": warnings,
        }
        (outdir / "report.json").write_text(emit_report(report))
    except ValueError as e:
        # every precondition in the library is a ValueError subclass
        print(f"sardkit: error: {e}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
