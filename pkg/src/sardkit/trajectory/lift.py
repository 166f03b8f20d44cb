"""Cotangent lifts, the Stokes action along a family, and the end-point map rank."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..distribution import DistributionSpec, MartinetData
from .integrate import Event, integrate
from .sections import Hyperplane

MAX_CONTROL_PIECES = 64


class LiftError(ValueError):
    pass


def _frame(spec: DistributionSpec):
    X1, X2 = spec.fields()
    return (X1.numeric(), X2.numeric()), (X1.numeric_jacobian(), X2.numeric_jacobian())


def _controls(u) -> np.ndarray:
    u = np.asarray(u, float)
    if u.ndim == 1:
        u = u.reshape(2, 1)
    if u.shape[0] != 2:
        raise ValueError("controls must have shape (2, N)")
    return u


@dataclass
class Lift:
    times: np.ndarray
    points: np.ndarray        # gamma(t)
    covectors: np.ndarray     # p(t)
    length: float             # Euclidean length of gamma
    max_pairing: float        # max_t max_i |p . X^i(gamma)|
    max_norm: float
    gronwall_C: float
    gronwall_bound: float
    singular: bool

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.covectors, axis=1)

    @property
    def gronwall_ok(self) -> bool:
        return self.max_norm <= self.gronwall_bound


def _lift_rhs(X, DX, w):
    def f(y):
        x, p = y[:3], y[3:]
        v = w[0] * X[0](x) + w[1] * X[1](x)
        dp = -(w[0] * (p @ DX[0](x)) + w[1] * (p @ DX[1](x)))
        return np.concatenate([v, dp])
    return f


def _coupled_metric():
    # lengths of gamma only
    class _M:
        tag = "euclidean"

        @staticmethod
        def speed(y, v):
            return float(np.linalg.norm(v[:3]))
    return _M()


def abnormal_lift(spec: DistributionSpec, u, x0: Sequence[float], p0: Sequence[float], *,
                  T: float = 1.0, tol: float = 1e-11, singular_tol: float = 1e-8) -> Lift:
    """Integrate (gamma, p) for a piecewise-constant control on [0, T]."""
    u = _controls(u)
    X, DX = _frame(spec)
    x0 = np.asarray(x0, float)
    p0 = np.asarray(p0, float)
    nrm = np.linalg.norm(p0)
    if nrm == 0:
        raise LiftError("p0 must be nonzero")
    pair0 = max(abs(p0 @ X[0](x0)), abs(p0 @ X[1](x0)))
    if pair0 > 1e-10 * nrm:
        raise LiftError(f"p0 does not annihilate the distribution at x0 (pairing {pair0:.3g})")
    p0 = p0 / nrm
    N = u.shape[1]
    dt = T / N
    y = np.concatenate([x0, p0])
    ts, ys = [0.0], [y]
    length = 0.0
    metric = _coupled_metric()
    for k in range(N):
        w = u[:, k]
        if not np.any(w):
            ts.append((k + 1) * dt)
            ys.append(y)
            continue
        tr = integrate(_lift_rhs(X, DX, w), y, t_max=dt, tol=tol, metric=metric)
        if tr.status != "t_max":
            raise LiftError(f"lift integration stopped early ({tr.status})")
        ts.extend(k * dt + tr.times[1:])
        ys.extend(tr.points[1:])
        length += tr.length
        y = tr.points[-1]
    ts = np.array(ts)
    ys = np.array(ys)
    # controls at each sample (right-continuous, last piece at T)
    piece = np.minimum((ts / dt).astype(int), N - 1)
    pairing, C = 0.0, 0.0
    for (x, p), k in zip(((r[:3], r[3:]) for r in ys), piece):
        pairing = max(pairing, abs(p @ X[0](x)), abs(p @ X[1](x)))
        w = u[:, k]
        vel = np.linalg.norm(w[0] * X[0](x) + w[1] * X[1](x))
        if vel > 0:
            lip = abs(w[0]) * np.linalg.norm(DX[0](x), 2) + abs(w[1]) * np.linalg.norm(DX[1](x), 2)
            C = max(C, lip / vel)
    norms = np.linalg.norm(ys[:, 3:], axis=1)
    max_norm = float(norms.max())
    bound = float(2.0 * np.exp(C * length))
    return Lift(ts, ys[:, :3], ys[:, 3:], float(length), float(pairing), max_norm, float(C),
                bound, pairing <= singular_tol * max_norm)


# -- Stokes action ---------------------------------------------------------------------------

@dataclass
class StokesResult:
    actions: List[float]
    arcs: List[np.ndarray]

    @property
    def relative_spread(self) -> float:
        a = np.asarray(self.actions)
        return float(np.std(a) / abs(np.mean(a)))


def _action(points: np.ndarray, covectors: np.ndarray) -> float:
    # trapezoid rule for the integral of p . d(gamma)
    mid = 0.5 * (covectors[1:] + covectors[:-1])
    return float(np.sum(np.einsum("ij,ij->i", mid, np.diff(points, axis=0))))


def stokes_action(spec: DistributionSpec, md: MartinetData, arc: np.ndarray, covectors: np.ndarray,
                  sections: Sequence[Hyperplane], *, tol: float = 1e-11,
                  t_max: float = 100.0) -> StokesResult:
    """Transport an arc with its covectors along the characteristic feedback flow.

    The control is u = (-X2(h), X1(h)), so gamma follows the characteristic
    field while p evolves by the lift equation.  I_k is the action of the k-th
    image arc.
    """
    X1, X2 = spec.fields()
    a_poly, b_poly = X1.apply(md.h), X2.apply(md.h)
    fa, fb = a_poly.lambdify(), b_poly.lambdify()
    X, DX = _frame(spec)

    def rhs(y):
        x, p = y[:3], y[3:]
        w0, w1 = -fb(*x), fa(*x)
        v = w0 * X[0](x) + w1 * X[1](x)
        dp = -(w0 * (p @ DX[0](x)) + w1 * (p @ DX[1](x)))
        return np.concatenate([v, dp])

    arc = np.asarray(arc, float)
    cov = np.asarray(covectors, float)
    if arc.shape != cov.shape or arc.shape[1] != 3:
        raise ValueError("arc and covectors must both have shape (M, 3)")
    actions = [_action(arc, cov)]
    if actions[0] <= 0:
        raise ValueError("the initial arc must have positive action")
    arcs = [arc]
    states = np.hstack([arc, cov])
    for k, sec in enumerate(sections):
        new = []
        for y in states:
            ev = sec.event("section", 0, 1)
            g0 = sec.g(y[:3])
            if abs(g0) < 1e-14:
                new.append(y)
                continue
            tr = integrate(rhs, y, t_max=t_max, events=[_wrap6(ev)], tol=tol,
                           metric=_coupled_metric())
            if tr.status != "section":
                raise LiftError(f"family member failed to reach section {k + 1} ({tr.status})")
            new.append(tr.points[-1])
        states = np.array(new)
        arcs.append(states[:, :3])
        actions.append(_action(states[:, :3], states[:, 3:]))
    return StokesResult(actions, arcs)


def _wrap6(ev):
    # events see the full (x, p) state; sections only look at x
    return Event(ev.name, lambda y: ev.fn(y[:3]), ev.direction, ev.terminal)


# -- end-point map ---------------------------------------------------------------------------

@dataclass
class EndpointRank:
    singular_values: np.ndarray
    rank: int
    jacobian: np.ndarray

    @property
    def ratio(self) -> float:
        s = self.singular_values
        return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def _endpoint(X, x0, u: np.ndarray, substeps: int) -> np.ndarray:
    N = u.shape[1]
    h = 1.0 / (N * substeps)
    x = np.asarray(x0, float).copy()
    for k in range(N):
        w0, w1 = u[:, k]

        def f(z):
            return w0 * X[0](z) + w1 * X[1](z)
        for _ in range(substeps):
            k1 = f(x)
            k2 = f(x + 0.5 * h * k1)
            k3 = f(x + 0.5 * h * k2)
            k4 = f(x + h * k3)
            x = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > 1e8:
            raise LiftError("flow blows up within [0, 1]")
    return x


def endpoint_map(spec: DistributionSpec, x0: Sequence[float], u, substeps: int = 16) -> np.ndarray:
    """gamma(1) for a piecewise-constant control, by fixed-step RK4 (smooth in u)."""
    return _endpoint(_frame(spec)[0], x0, _controls(u), substeps)


def endpoint_rank(spec: DistributionSpec, x0: Sequence[float], u, *, h_fd: float = 1e-5,
                  tol_rank: float = 1e-6, substeps: int = 16) -> EndpointRank:
    """Central-difference Jacobian of the end-point map and its singular values."""
    u = _controls(u)
    N = u.shape[1]
    if N > MAX_CONTROL_PIECES:
        raise ValueError(f"at most {MAX_CONTROL_PIECES} control pieces")
    X, _ = _frame(spec)
    J = np.zeros((3, 2 * N))
    for i in range(2):
        for k in range(N):
            up, um = u.copy(), u.copy()
            up[i, k] += h_fd
            um[i, k] -= h_fd
            J[:, i * N + k] = (_endpoint(X, x0, up, substeps)
                               - _endpoint(X, x0, um, substeps)) / (2 * h_fd)
    s = np.linalg.svd(J, compute_uv=False)
    r = int(np.sum(s / s[0] > tol_rank)) if s[0] > 0 else 0
    return EndpointRank(s, r, J)
