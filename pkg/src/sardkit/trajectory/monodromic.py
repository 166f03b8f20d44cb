"""Length growth along spiralling trajectories and transition-map length checks."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .integrate import HPMetric, integrate
from .sections import Section, poincare_returns


@dataclass
class MonodromicResult:
    returns: List[float]          # section parameters s_1..s_K
    lengths: List[float]          # cumulative lengths L_1..L_K
    fit_exponent: Optional[float]
    fit_prefactor: Optional[float]
    status: str

    @property
    def complete(self) -> bool:
        return self.status == "return"


def power_fit(lengths: Sequence[float], k_lo: int, k_hi: int) -> Tuple[float, float]:
    """Least-squares fit of L_k = c k^e on log scale over k_lo..k_hi (1-based)."""
    k = np.arange(k_lo, k_hi + 1)
    L = np.asarray(lengths, float)[k - 1]
    e, logc = np.polyfit(np.log(k), np.log(L), 1)
    return float(e), float(np.exp(logc))


def monodromic_length_experiment(field, sec: Section, s0: float, returns: int, *,
                                 direction: int = 1, tol: float = 1e-10,
                                 metric=None) -> MonodromicResult:
    if returns < 1:
        raise ValueError("need at least one return")
    ss, traj = poincare_returns(field, sec, s0, returns, direction=direction, tol=tol,
                                metric=metric)
    lengths = [h.length for h in traj.hits("return")]
    e = c = None
    if len(lengths) >= 10:
        e, c = power_fit(lengths, max(1, len(lengths) // 10), len(lengths))
    return MonodromicResult(ss, lengths, e, c, traj.status)


def comparison_constant(longer: Sequence[float], shorter: Sequence[float]) -> float:
    """Smallest C with shorter_k <= C * longer_k for every common k."""
    m = min(len(longer), len(shorter))
    return float(max(shorter[k] / longer[k] for k in range(m)))


# -- transition maps between two sections ----------------------------------------------------

@dataclass
class TransitionSample:
    s: float
    distance: float
    length: float
    start: np.ndarray
    end: np.ndarray
    delta_alpha: float            # u^alpha(p) - u^alpha(phi(p))


@dataclass
class TransitionReport:
    samples: List[TransitionSample]
    pairs: int
    K_used: float
    K_empirical: float
    violations: int
    monotone_violations: int
    monotone_kind: str
    sandwich_violations: int = 0
    notes: List[str] = field(default_factory=list)


def transition(field, src: Section, dst: Section, s: float, *, metric=None,
               tol: float = 1e-10, t_max: float = 1e3, direction: int = 1) -> TransitionSample:
    x0 = src.point(s)
    traj = integrate(field, x0, direction=direction, t_max=t_max,
                     events=[dst.event("target", 0, 1)], tol=tol, metric=metric)
    if traj.status != "target":
        raise RuntimeError(f"trajectory from s={s} did not reach the target section ({traj.status})")
    end = traj.end
    da = 0.0
    if isinstance(metric, HPMetric):
        da = metric.monomial(metric.alpha, x0) - metric.monomial(metric.alpha, end)
    return TransitionSample(s, src.distance(s), traj.length, x0, end, da)


def _monotone(values: Sequence[float], atol: float) -> Tuple[str, int]:
    d = np.diff(np.asarray(values, float))
    if np.all(np.abs(d) <= atol):
        return "constant", 0
    up = int(np.sum(d < -atol))
    down = int(np.sum(d > atol))
    return ("increasing", up) if up <= down else ("decreasing", down)


def transition_monotonicity_check(field, src: Section, dst: Section, *, samples: int = 50,
                                  metric=None, K: Optional[float] = None,
                                  s_range: Tuple[float, float] = (0.05, 0.95), seed: int = 0,
                                  tol: float = 1e-10, rel_tol: float = 1e-7, abs_tol: float = 1e-12,
                                  saddle: bool = False) -> TransitionReport:
    """Check length(L(p)) <= K length(L(q)) for sampled d(p) < d(q).

    In the regular configuration K defaults to 1.  With ``saddle=True`` the
    constant is derived from the sandwich |du^alpha| <= length <= sqrt(2)|du^alpha|
    over the sampled range, which is verified sample by sample.
    """
    rng = random.Random(seed)
    ss = sorted(rng.uniform(*s_range) for _ in range(2 * samples))
    data = [transition(field, src, dst, s, metric=metric, tol=tol) for s in ss]
    notes = []
    sandwich = 0
    if saddle:
        if not isinstance(metric, HPMetric):
            raise ValueError("the saddle configuration needs an hp metric")
        for d in data:
            a = abs(d.delta_alpha)
            if not (a * (1 - rel_tol) <= d.length <= np.sqrt(2) * a * (1 + rel_tol)):
                sandwich += 1
        das = [abs(d.delta_alpha) for d in data]
        K_used = float(np.sqrt(2) * max(das) / min(das)) if min(das) > 0 else float("inf")
        notes.append("K from the sandwich bound over the sampled range")
    else:
        K_used = 1.0 if K is None else float(K)
    idx = list(range(len(data)))
    pairs = []
    for _ in range(samples):
        i, j = sorted(rng.sample(idx, 2))
        pairs.append((data[i], data[j]))
    viol = 0
    ratios = []
    for p, q in pairs:
        scale = max(p.length, q.length)
        if p.length > K_used * q.length + rel_tol * scale + abs_tol:
            viol += 1
        if q.length > 1e-12:
            ratios.append(p.length / q.length)
        elif p.length <= 1e-12:
            ratios.append(0.0)
    if all(d.length <= 1e-12 for d in data):
        notes.append("all transition lengths vanish to integration precision")
    kind, mono = _monotone([d.delta_alpha for d in data], 1e-8)
    K_emp = max(ratios) if ratios else 0.0
    return TransitionReport(data, len(pairs), K_used, float(K_emp), viol, mono, kind,
                            sandwich, notes)
