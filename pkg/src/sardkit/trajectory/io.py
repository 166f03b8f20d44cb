"""CSV and JSON serialisation of trajectories and reach trees."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

from .integrate import Trajectory
from .reach import ReachTree


def coordinate_names(dim: int) -> Sequence[str]:
    return ("u", "v") if dim == 2 else tuple(f"x{i + 1}" for i in range(dim))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(path, traj: Trajectory, names: Sequence[str] | None = None) -> Path:
    path = Path(path)
    names = names or coordinate_names(traj.dim)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", *names, "cum_length"])
        for t, x, ell in zip(traj.times, traj.points, traj.cum_length):
            w.writerow([_fmt(t), *(_fmt(c) for c in x), _fmt(ell)])
    return path


def write_polyline_csv(path, points, names: Sequence[str] = ("x1", "x2", "x3")) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(names))
        for p in points:
            w.writerow([_fmt(c) for c in p])
    return path


def reach_tree_json(tree: ReachTree, outdir=None, prefix: str = "edge") -> dict:
    """JSON-ready dict; when ``outdir`` is given, edge polylines are written as CSV files."""
    edges = []
    for e in tree.edges:
        entry = {"index": e.index, "start": e.start, "end": e.end, "length": e.length,
                 "points": len(e.polyline)}
        if outdir is not None:
            name = f"{prefix}_{e.index:03d}.csv"
            write_polyline_csv(Path(outdir) / name, e.polyline)
            entry["polyline"] = name
        edges.append(entry)
    return {
        "budget": tree.budget,
        "total_length": tree.total_length,
        "vertices": [{"index": v.index, "point": [float(c) for c in v.point], "kind": v.kind,
                      "path_length": v.depth_length, "note": v.note} for v in tree.vertices],
        "edges": edges,
        "flags": list(tree.flags),
    }
