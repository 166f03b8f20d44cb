"""Transversal sections, crossings and first-return maps."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .integrate import Event, Trajectory, as_numeric_field, integrate

TANGENCY_THRESHOLD = 1e-9


class NoReturn(RuntimeError):
    pass


@dataclass(frozen=True)
class Section:
    """Planar segment base + s * dir, s in [0, 1]."""
    base: Tuple[float, float]
    dir: Tuple[float, float]

    @property
    def length(self) -> float:
        return float(np.hypot(*self.dir))

    def point(self, s: float) -> np.ndarray:
        return np.asarray(self.base, float) + s * np.asarray(self.dir, float)

    def param(self, x) -> float:
        d = np.asarray(self.dir, float)
        return float(np.dot(np.asarray(x[:2], float) - self.base, d) / np.dot(d, d))

    def distance(self, s: float) -> float:
        """Arc length from the base endpoint."""
        return s * self.length

    def g(self, x) -> float:
        return float(self.dir[0] * (x[1] - self.base[1]) - self.dir[1] * (x[0] - self.base[0]))

    def crossing_det(self, v) -> float:
        return float(self.dir[0] * v[1] - self.dir[1] * v[0])

    def contains(self, x, open_base: bool = True) -> bool:
        s = self.param(x)
        lo_ok = s > 1e-12 if open_base else s >= -1e-12
        return lo_ok and s <= 1.0 + 1e-12

    def event(self, name: str = "section", direction: int = 0,
              terminal: Optional[int] = None) -> Event:
        return Event(name, self.g, direction, terminal, accept=self.contains)


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = offset} in any dimension."""
    normal: Tuple[float, ...]
    offset: float

    def g(self, x) -> float:
        return float(np.dot(self.normal, np.asarray(x)[:len(self.normal)]) - self.offset)

    def event(self, name: str = "hyperplane", direction: int = 0,
              terminal: Optional[int] = None) -> Event:
        return Event(name, self.g, direction, terminal)


@dataclass
class Crossing:
    s: float
    t: float
    x: np.ndarray
    det: float
    tangential: bool


def section_crossings(traj: Trajectory, sec: Section) -> List[Crossing]:
    """Crossings of a stored trajectory with ``sec``, refined in time."""
    out: List[Crossing] = []
    gs = np.array([sec.g(p) for p in traj.points])
    for i in range(len(gs) - 1):
        a, b = gs[i], gs[i + 1]
        if a == 0.0 or not (a < 0.0 <= b or a > 0.0 >= b):
            continue
        t0, t1 = traj.times[i], traj.times[i + 1]
        if b == 0.0:
            te = t1
        else:
            te = brentq(lambda t: sec.g(traj.state_at(t)), t0, t1, xtol=1e-13, rtol=1e-15)
        y = traj.state_at(te)
        x = y[:-1]
        if not sec.contains(x):
            continue
        v = traj.rhs(y)[:-1]
        det = sec.crossing_det(v)
        tangential = abs(det) < TANGENCY_THRESHOLD * max(1.0, sec.length * np.linalg.norm(v))
        out.append(Crossing(sec.param(x), float(te), x, det, tangential))
    return out


def _orientation(field, sec: Section, s0: float, direction: int) -> int:
    f = as_numeric_field(field)
    det = direction * sec.crossing_det(f(sec.point(s0)))
    if abs(det) < TANGENCY_THRESHOLD:
        raise ValueError(f"field is tangent to the section at s = {s0}")
    return 1 if det > 0 else -1


def poincare_returns(field, sec: Section, s0: float, returns: int, *, direction: int = 1,
                     tol: float = 1e-10, t_max: float = 1e6, metric=None,
                     max_steps: int = 5_000_000) -> Tuple[List[float], Trajectory]:
    """Successive return parameters s_1..s_k (partial list if the flow stops early)."""
    if not 0.0 < s0 <= 1.0:
        raise ValueError("s0 must lie in the open section (0, 1]; the base point is excluded")
    orient = _orientation(field, sec, s0, direction)
    ev = sec.event("return", orient, returns)
    traj = integrate(field, sec.point(s0), direction=direction, t_max=t_max, events=[ev],
                     tol=tol, metric=metric, max_steps=max_steps)
    ss = [sec.param(h.x) for h in traj.hits("return")]
    return ss, traj


def poincare_map(field, sec: Section, s0: float, **kw) -> float:
    ss, traj = poincare_returns(field, sec, s0, 1, **kw)
    if not ss:
        raise NoReturn(f"no return to the section (integration status {traj.status})")
    return ss[0]
