"""Dormand-Prince 5(4) integration with length accumulation and events.

The state is augmented with the running length, so length budgets are just
events on the last coordinate.  Event times are refined with ``brentq`` on a
single Runge-Kutta step of variable size taken from the last accepted point,
which reproduces the accepted step exactly at the bracket end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from ..poly import PolyVectorField

# Dormand-Prince tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

TOL_RANGE = (1e-12, 1e-3)


class IntegrationError(RuntimeError):
    pass


# -- metrics ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Euclidean:
    tag: str = "euclidean"

    def speed(self, x, v) -> float:
        return float(np.sqrt(np.dot(v, v)))


@dataclass(frozen=True)
class HPMetric:
    """Degenerate metric (d u^alpha)^2 + (d u^beta)^2."""
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]

    @property
    def tag(self) -> str:
        return f"hp({','.join(map(str, self.alpha))};{','.join(map(str, self.beta))})"

    @staticmethod
    def _dmono(exp, x, v) -> float:
        # d/dt of prod x_i^e_i along velocity v
        total = 0.0
        for i, e in enumerate(exp):
            if e == 0 or v[i] == 0.0:
                continue
            term = e * x[i] ** (e - 1) * v[i]
            for j, f in enumerate(exp):
                if j != i and f:
                    term *= x[j] ** f
            total += term
        return total

    def speed(self, x, v) -> float:
        a = self._dmono(self.alpha, x, v)
        b = self._dmono(self.beta, x, v)
        return float(np.hypot(a, b))

    def monomial(self, exp, x) -> float:
        out = 1.0
        for xi, e in zip(x, exp):
            out *= xi ** e
        return out


# -- events -------------------------------------------------------------------------------

@dataclass
class Event:
    """Zero crossing of ``fn(x)``; direction +1 for increasing, -1 decreasing, 0 both."""
    name: str
    fn: Callable[[np.ndarray], float]
    direction: int = 0
    terminal: Optional[int] = None
    accept: Optional[Callable[[np.ndarray], bool]] = None


@dataclass
class EventHit:
    name: str
    t: float
    x: np.ndarray
    length: float


@dataclass
class Trajectory:
    times: np.ndarray
    points: np.ndarray
    cum_length: np.ndarray
    metric_tag: str
    status: str
    events: List[EventHit] = field(default_factory=list)
    rhs: Optional[Callable] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def length(self) -> float:
        return float(self.cum_length[-1])

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]

    def hits(self, name: str) -> List[EventHit]:
        return [e for e in self.events if e.name == name]

    def state_at(self, t: float) -> np.ndarray:
        """Augmented state (x, length) at time ``t`` by one RK step from the last sample."""
        if self.rhs is None:
            raise ValueError("trajectory was built without its right-hand side")
        if not self.times[0] <= t <= self.times[-1]:
            raise ValueError("time outside the trajectory")
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        i = min(i, len(self.times) - 1)
        y = np.append(self.points[i], self.cum_length[i])
        dt = t - self.times[i]
        if dt == 0.0:
            return y
        return _dp_step(self.rhs, y, self.rhs(y), dt)[0]

    def split(self, t: float) -> Tuple["Trajectory", "Trajectory"]:
        """Cut at time ``t``; both halves restart their length at zero."""
        y = self.state_at(t)
        i = int(np.searchsorted(self.times, t, side="left"))
        left_t = np.append(self.times[:i], t)
        left_x = np.vstack([self.points[:i], y[:-1]])
        left_l = np.append(self.cum_length[:i], y[-1])
        j = int(np.searchsorted(self.times, t, side="right"))
        right_t = np.insert(self.times[j:], 0, t)
        right_x = np.vstack([y[:-1], self.points[j:]])
        right_l = np.insert(self.cum_length[j:], 0, y[-1]) - y[-1]
        return (Trajectory(left_t, left_x, left_l, self.metric_tag, "split", [], self.rhs),
                Trajectory(right_t, right_x, right_l, self.metric_tag, self.status, [], self.rhs))


# -- core stepping --------------------------------------------------------------------------

def _dp_step(rhs, y, k1, h):
    ks = [k1]
    for i in range(1, 6):
        a = _A[i]
        yi = y + h * sum(a[j] * ks[j] for j in range(i))
        ks.append(rhs(yi))
    y_new = y + h * sum(_B[j] * ks[j] for j in range(6))
    k7 = rhs(y_new)
    ks.append(k7)
    err = h * sum(_E[j] * ks[j] for j in range(7))
    return y_new, k7, err


def as_numeric_field(field) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(field, PolyVectorField):
        return field.numeric()
    if hasattr(field, "vector_field"):
        return field.vector_field.numeric()
    if callable(field):
        return field
    raise TypeError(f"cannot integrate a {type(field).__name__}")


def integrate(field, x0: Sequence[float], *, direction: int = 1,
              t_max: Optional[float] = None, length_max: Optional[float] = None,
              region: Optional[Callable[[np.ndarray], float]] = None,
              events: Sequence[Event] = (), tol: float = 1e-9, metric=None,
              max_steps: int = 1_000_000, h0: Optional[float] = None,
              min_step: float = 1e-13) -> Trajectory:
    """Integrate ``direction * field`` from ``x0``.

    Stops at ``t_max``, when the accumulated length reaches ``length_max``,
    when ``region(x)`` becomes non-positive, or at a terminal event.
    """
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise ValueError(f"tol must lie in [{TOL_RANGE[0]}, {TOL_RANGE[1]}]")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if t_max is None and length_max is None and region is None and not any(
            e.terminal for e in events):
        raise ValueError("no stopping condition given")
    metric = metric or Euclidean()
    f = as_numeric_field(field)
    x0 = np.asarray(x0, dtype=float)
    n = len(x0)
    sgn = float(direction)

    def rhs(y):
        v = sgn * np.asarray(f(y[:n]), dtype=float)
        return np.append(v, metric.speed(y[:n], v))

    evs: List[Tuple[Event, Callable]] = [(e, (lambda y, fn=e.fn: fn(y[:n]))) for e in events]
    if length_max is not None:
        evs.append((Event("length", None, 1, 1), lambda y: y[n] - length_max))
    if region is not None:
        evs.append((Event("region_exit", None, -1, 1), lambda y: region(y[:n])))
    counts = [0] * len(evs)

    y = np.append(x0, 0.0)
    t = 0.0
    ts, ys = [t], [y]
    hits: List[EventHit] = []
    status = "t_max"
    if length_max is not None and length_max <= 0:
        return Trajectory(np.array(ts), np.array([y[:n]]), np.array([0.0]), metric.tag,
                          "length", [], rhs)
    if region is not None and region(x0) <= 0:
        raise ValueError("start point lies outside the region")

    k1 = rhs(y)
    atol = rtol = tol
    if h0 is None:
        sc = atol + rtol * np.abs(y)
        d0 = np.sqrt(np.mean((y / sc) ** 2))
        d1 = np.sqrt(np.mean((k1 / sc) ** 2))
        h = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-6
        h = min(h, 0.1)
    else:
        h = h0
    if t_max is not None:
        h = min(h, t_max)
    g_old = [g(y) for _, g in evs]
    steps = 0
    while True:
        if t_max is not None and t >= t_max:
            status = "t_max"
            break
        if steps >= max_steps:
            status = "max_steps"
            break
        if h < min_step * max(1.0, abs(t)):
            status = "underflow"
            break
        if t_max is not None and t + h > t_max:
            h = t_max - t
        y_new, k7, err = _dp_step(rhs, y, k1, h)
        sc = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        en = float(np.sqrt(np.mean((err / sc) ** 2)))
        if not np.isfinite(en) or not np.all(np.isfinite(y_new)):
            h *= 0.2
            continue
        if en > 1.0:
            h *= max(0.2, 0.9 * en ** -0.2)
            continue
        steps += 1
        # accepted: look for events inside [t, t + h]
        g_new = [g(y_new) for _, g in evs]
        found = []
        for i, ((ev, g), a, b) in enumerate(zip(evs, g_old, g_new)):
            if a == 0.0 or not (a < 0.0 <= b or a > 0.0 >= b):
                continue
            if ev.direction > 0 and not a < b:
                continue
            if ev.direction < 0 and not a > b:
                continue
            if b == 0.0:
                th = 1.0
            else:
                phi = (lambda th, g=g: g(_dp_step(rhs, y, k1, th * h)[0]))
                th = brentq(phi, 0.0, 1.0, xtol=1e-15, rtol=1e-15, maxiter=200)
            found.append((th, i))
        stop = None
        for th, i in sorted(found):
            ev = evs[i][0]
            ye = _dp_step(rhs, y, k1, th * h)[0] if th < 1.0 else y_new
            if ev.accept is not None and not ev.accept(ye[:n]):
                continue
            counts[i] += 1
            hits.append(EventHit(ev.name, t + th * h, ye[:n].copy(), float(ye[n])))
            if ev.terminal is not None and counts[i] >= ev.terminal:
                stop = (th, ye, ev.name)
                break
        if stop is not None:
            th, ye, name = stop
            t = t + th * h
            ts.append(t)
            ys.append(ye)
            status = name
            break
        t += h
        y, k1 = y_new, k7
        ts.append(t)
        ys.append(y)
        g_old = g_new
        fac = 0.9 * en ** -0.2 if en > 0 else 5.0
        h *= min(5.0, max(0.2, fac))
    arr = np.array(ys)
    cum = np.maximum.accumulate(arr[:, n])
    return Trajectory(np.array(ts), arr[:, :n], cum, metric.tag, status, hits, rhs)
