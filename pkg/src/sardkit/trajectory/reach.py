"""Finite trees approximating the set reached by characteristic curves within a length budget."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..distribution import DistributionSpec, MartinetData, characteristic_field
from ..poly import Poly
from ..poly.linalg import rref
from ..reduction.roots import rational_roots
from .integrate import Event, integrate

VERTEX_KINDS = ("root", "branch", "terminal", "unresolved")


@dataclass(frozen=True)
class Junction:
    """User-declared junction curve {eq = 0 for eq in equations} and its outgoing directions."""
    name: str
    equations: Tuple[Poly, ...]
    directions: Tuple[Tuple[float, float, float], ...]


@dataclass
class ReachVertex:
    index: int
    point: np.ndarray
    kind: str
    depth_length: float           # length used from the root to here
    note: str = ""


@dataclass
class ReachEdge:
    index: int
    start: int
    end: int
    polyline: np.ndarray
    length: float


@dataclass
class ReachTree:
    root: int
    vertices: List[ReachVertex]
    edges: List[ReachEdge]
    budget: float
    flags: List[str] = field(default_factory=list)

    @property
    def total_length(self) -> float:
        return float(sum(e.length for e in self.edges))

    def leaves(self) -> List[ReachVertex]:
        starts = {e.start for e in self.edges}
        return [v for v in self.vertices if v.index not in starts]

    def max_path_length(self) -> float:
        return max((v.depth_length for v in self.vertices), default=0.0)


def _snap(x: np.ndarray, max_den: int = 1000) -> Tuple[Fraction, ...]:
    return tuple(Fraction(float(v)).limit_denominator(max_den) for v in x)


def _exact_jacobian(Z, p):
    return [[c.partial(j)(p) for j in range(3)] for c in Z.components]


def _char_poly(J) -> List[Fraction]:
    # det(l I - J) = l^3 - tr l^2 + m l - det, ascending coefficients
    tr = J[0][0] + J[1][1] + J[2][2]
    m = (J[0][0] * J[1][1] - J[0][1] * J[1][0]
         + J[0][0] * J[2][2] - J[0][2] * J[2][0]
         + J[1][1] * J[2][2] - J[1][2] * J[2][1])
    det = (J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
           - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
           + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]))
    return [-det, m, -tr, Fraction(1)]


def _kernel(M) -> List[List[Fraction]]:
    R, piv = rref(M)
    n = len(M[0])
    free = [j for j in range(n) if j not in piv]
    basis = []
    for fj in free:
        v = [Fraction(0)] * n
        v[fj] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][fj]
        basis.append(v)
    return basis


def eigen_directions(Z, p) -> List[Tuple[Fraction, Tuple[Fraction, ...]]]:
    """Rational eigenpairs (lambda != 0) of the exact Jacobian of Z at a rational zero."""
    J = _exact_jacobian(Z, p)
    lams, _ = rational_roots(_char_poly(J))
    out = []
    for lam in lams:
        if lam == 0:
            continue
        M = [[J[i][j] - (lam if i == j else 0) for j in range(3)] for i in range(3)]
        for v in _kernel(M):
            out.append((lam, tuple(v)))
    return out


def reachable_set(spec: DistributionSpec, md: MartinetData, x0: Sequence, L: float, *,
                  junctions: Sequence[Junction] = (), tol: float = 1e-10,
                  zero_tol: float = 1e-7, snap_tol: float = 1e-6, eps: float = 1e-7,
                  max_vertices: int = 64, t_max: float = 1e4) -> ReachTree:
    """Follow the characteristic field both ways from ``x0``, branching at zeros and junctions."""
    if L < 0:
        raise ValueError("length budget must be non-negative")
    exact = all(isinstance(v, (int, Fraction)) for v in x0)
    if exact:
        if md.h(tuple(Fraction(v) for v in x0)) != 0:
            raise ValueError("x0 is not on the Martinet surface")
    elif abs(float(md.h.lambdify()(*map(float, x0)))) > 1e-9:
        raise ValueError("x0 is not on the Martinet surface")
    Z = characteristic_field(spec, md)
    fZ = Z.numeric()
    grad_h = md.gradient
    x0f = np.array([float(v) for v in x0])
    vertices = [ReachVertex(0, x0f, "root", 0.0)]
    edges: List[ReachEdge] = []
    flags: List[str] = []
    tree = ReachTree(0, vertices, edges, float(L), flags)
    if L == 0:
        return tree

    jfns = [[q.lambdify() for q in j.equations] for j in junctions]
    events = [Event("zero", lambda x: float(np.linalg.norm(fZ(x))) - zero_tol, -1, 1)]
    for k, fns in enumerate(jfns):
        events.append(Event(f"junction{k}", (lambda x, fns=fns: max(abs(f(*x)) for f in fns) - snap_tol),
                            -1, 1))

    # queue items: (start point, sign, used length, parent vertex, offset already spent)
    queue = deque()

    def branch_at(vidx: int, p_exact, incoming: Optional[np.ndarray], used: float,
                  directions=None):
        p = np.array([float(c) for c in p_exact])
        if directions is None:
            cand = []
            for lam, v in eigen_directions(Z, p_exact):
                g = [gi(p_exact) for gi in grad_h]
                if any(g) and sum(a * b for a, b in zip(g, v)):
                    continue  # leaves the surface
                vf = np.array([float(c) for c in v])
                vf /= np.linalg.norm(vf)
                s = 1 if lam > 0 else -1
                cand += [(vf, s), (-vf, s)]
        else:
            cand = []
            for d in directions:
                d = np.asarray(d, float)
                d = d / np.linalg.norm(d)
                z = fZ(p + eps * d)
                along = float(np.dot(z, d))
                if abs(along) < 1e-3 * eps:
                    continue
                cand.append((d, 1 if along > 0 else -1))
        for d, s in cand:
            if incoming is not None and np.dot(d, incoming) < -0.9:
                continue
            queue.append((p + eps * d, s, used + eps, vidx, p))

    def finish_edge(parent, start, traj, used):
        status = traj.status
        end = traj.end
        seg_len = traj.length
        poly = traj.points if start is None else np.vstack([start[None, :], traj.points])
        kind, note, p_exact = "terminal", "", None
        if status == "length":
            kind = "terminal"
        elif status == "zero" or status.startswith("junction"):
            p_exact = _snap(end)
            pf = np.array([float(c) for c in p_exact])
            if status == "zero":
                ok = Z.at(p_exact) == (0, 0, 0) and np.linalg.norm(pf - end) < 10 * snap_tol
            else:
                j = junctions[int(status[len("junction"):])]
                ok = all(q(p_exact) == 0 for q in j.equations) and np.linalg.norm(pf - end) < 10 * snap_tol
            gap = float(np.linalg.norm(pf - end))
            if ok and used + seg_len + gap <= L:
                kind, note = "branch", status
                poly = np.vstack([poly, pf[None, :]])
                seg_len += gap
                end = pf
            else:
                kind, note, p_exact = "unresolved", f"could not certify {status} vertex", None
        else:
            kind, note = "unresolved", f"integration stopped: {status}"
        total = used + seg_len
        v = ReachVertex(len(vertices), end.copy(), kind, total, note)
        vertices.append(v)
        length = total - vertices[parent].depth_length  # includes any branch offset
        edges.append(ReachEdge(len(edges), parent, v.index, poly, float(length)))
        return v, p_exact, status

    z0 = fZ(x0f)
    if np.linalg.norm(z0) <= zero_tol:
        if not exact:
            flags.append("root is a zero of the field but not an exact rational point")
            vertices[0].kind = "unresolved"
            return tree
        branch_at(0, tuple(Fraction(v) for v in x0), None, 0.0)
    else:
        queue.append((x0f, 1, 0.0, 0, None))
        queue.append((x0f, -1, 0.0, 0, None))

    while queue:
        if len(vertices) >= max_vertices:
            flags.append(f"vertex cap {max_vertices} reached; {len(queue)} branches left unexplored")
            for start, s, used, parent, anchor in queue:
                v = ReachVertex(len(vertices), start.copy(), "unresolved", used, "vertex cap")
                vertices.append(v)
                edges.append(ReachEdge(len(edges), parent, v.index,
                                       np.vstack([start if anchor is None else anchor, start]),
                                       used - vertices[parent].depth_length))
            break
        start, s, used, parent, anchor = queue.popleft()
        rem = L - used
        if rem <= 0:
            continue
        traj = integrate(fZ, start, direction=s, length_max=rem, events=events, tol=tol,
                         t_max=t_max)
        v, p_exact, status = finish_edge(parent, anchor, traj, used)
        if v.kind == "branch":
            incoming = traj.points[-1] - traj.points[max(0, len(traj.points) - 3)]
            nrm = np.linalg.norm(incoming)
            incoming = incoming / nrm if nrm > 0 else None
            dirs = None
            if status.startswith("junction"):
                dirs = junctions[int(status[len("junction"):])].directions
            # the incoming direction points into the vertex; branches must not go back out along it
            branch_at(v.index, p_exact, None if incoming is None else incoming, v.depth_length, dirs)
    if any(v.kind == "unresolved" for v in vertices):
        flags.append("tree has unresolved vertices")
    return tree
