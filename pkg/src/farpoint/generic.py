"""Subgradients of ``r``, the G-condition gap, ``F_n`` probes and the Lau step.

For a finite ``C`` in ``R^d`` the value function is a finite max of smooth
convex functions away from ``C``, so ``dr(x)`` is the convex hull of the unit
vectors ``(x - z*) / ||x - z*||`` over the maximizers ``z*``.  That makes the
good set ``G`` and the bad sets ``F_n`` directly computable there.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .attainment import (
    DEFAULT_ETA,
    DEFAULT_SCHEDULE,
    _check_schedule,
    _scan,
    _verdict,
    argmax_set,
    eval_r,
    objective_values,
)
from .errors import (
    InvalidParameter,
    NoEpsilonMaximizer,
    UnsupportedCombination,
    UnsupportedSpace,
)
from .perturbations import perturbation_eval
from .sets import FiniteSet, alpha
from .space import Coordinates, DualCoordinates, Euclidean, GridFunction, apply_functional, norm

__all__ = [
    "SubgradientSet",
    "FnProbeRecord",
    "LauStepRecord",
    "DensityProbeReport",
    "Box",
    "GridBall",
    "subgradient_extremes",
    "g_gap",
    "fn_membership",
    "lau_step",
    "density_probe",
    "barycentric_grid",
]

MAX_GRID_POINTS = 2_000_000


@dataclass(frozen=True)
class SubgradientSet:
    """``dr(x)`` as the hull of ``extremes``; the whole dual ball if ``hull_marker``."""

    extremes: tuple
    hull_marker: bool
    maximizers: tuple = ()


@dataclass(frozen=True)
class FnProbeRecord:
    n: int
    member: bool
    witness_functional: Optional[DualCoordinates]
    min_gap_found: float  # largest gap seen on the grid
    resolution: int


@dataclass(frozen=True)
class LauStepRecord:
    y0: object
    z0: object
    z0_index: int
    lam: float
    epsilon: float
    x0: object
    alpha: float
    ball_radius: float
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {"y0": self.y0.to_json(), "z0": self.z0.to_json(), "z0_index": self.z0_index,
                "lambda": self.lam, "epsilon": self.epsilon, "x0": self.x0.to_json(),
                "alpha": self.alpha, "ball_radius": self.ball_radius, "checks": dict(self.checks)}


def _require_euclidean_finite(space, model):
    if not isinstance(space, Euclidean):
        raise UnsupportedSpace("subdifferentials are only computed in Euclidean spaces")
    if not isinstance(model, FiniteSet):
        raise UnsupportedCombination("subdifferentials need a FiniteSet model")


def subgradient_extremes(space, model, f, x, eta: float = DEFAULT_ETA) -> SubgradientSet:
    _require_euclidean_finite(space, model)
    extremes, maxi, hull = [], [], False
    for i, z, _ in argmax_set(space, model, f, x, model.size, eta):
        d = x - z
        nd = norm(space, d)
        maxi.append(i)
        if nd == 0.0:
            # r(y) - r(x) >= ||y - x|| for all y: every x* in the dual ball qualifies
            hull = True
            continue
        extremes.append(DualCoordinates(d.values / nd))
    return SubgradientSet(tuple(extremes), hull, tuple(maxi))


def _linearized_max(space, model, f, x, functionals, N):
    """``max_z <g, x - z> - f(z)`` for each row ``g`` of ``functionals``."""
    idx = model.indices(N)
    if isinstance(model, FiniteSet) and model._matrix is not None:
        diffs = x.values - model._matrix[idx]
        fz = np.array([perturbation_eval(f, space, model.element(int(i))) for i in idx])
        return (functionals @ diffs.T - fz).max(axis=1)
    raise UnsupportedCombination("linearized sup needs a Euclidean FiniteSet")


def g_gap(xstar, space, model, f, x, N: Optional[int] = None) -> float:
    """``r(x) - sup_z (<x*, x - z> - f(z))``; nonnegative when ``||x*|| <= 1``."""
    N = model.size if N is None else N
    r = eval_r(space, model, f, x, N).lower
    if isinstance(xstar, DualCoordinates) and isinstance(model, FiniteSet) and isinstance(space, Euclidean):
        return float(r - _linearized_max(space, model, f, x, xstar.values[None, :], N)[0])
    best = -np.inf
    for i in model.indices(N):
        z = model.element(int(i))
        best = max(best, apply_functional(xstar, x - z) - perturbation_eval(f, space, z))
    for z in model.limit_points:
        best = max(best, apply_functional(xstar, x - z) - perturbation_eval(f, space, z))
    return float(r - best)


def barycentric_grid(k: int, resolution: int) -> np.ndarray:
    """All weight vectors in the ``k``-simplex with denominator ``resolution``."""
    if k < 1 or resolution < 1:
        raise InvalidParameter("need k >= 1 and resolution >= 1")
    count = comb(resolution + k - 1, k - 1)
    if count > MAX_GRID_POINTS:
        raise InvalidParameter(f"barycentric grid would have {count} points")
    if k == 1:
        return np.ones((1, 1))
    bars = np.array(list(combinations(range(resolution + k - 1), k - 1)))
    edges = np.hstack([np.full((bars.shape[0], 1), -1), bars,
                       np.full((bars.shape[0], 1), resolution + k - 1)])
    return (np.diff(edges, axis=1) - 1) / resolution


def fn_membership(space, model, f, x, n: int, resolution: int = 100,
                  eta: float = DEFAULT_ETA) -> FnProbeRecord:
    """Search ``dr(x)`` for a functional whose gap is at least ``1/n``.

    A hit certifies ``x`` in ``F_n``; a miss is only evidence against it.
    When ``dr(x)`` is the whole dual ball, the search is limited to ``0``,
    ``+-e_i`` and the maximizer directions.
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    sub = subgradient_extremes(space, model, f, x, eta)
    if sub.hull_marker:
        eye = np.eye(space.d)
        cands = np.vstack([np.zeros((1, space.d)), eye, -eye] + [e.values[None, :] for e in sub.extremes])
    else:
        verts = np.vstack([e.values for e in sub.extremes])
        cands = barycentric_grid(len(verts), resolution) @ verts
    r = eval_r(space, model, f, x, model.size).lower
    gaps = r - _linearized_max(space, model, f, x, cands, model.size)
    best = int(np.argmax(gaps))
    member = bool(gaps[best] >= 1.0 / n - 1e-12)
    return FnProbeRecord(n=n, member=member,
                         witness_functional=DualCoordinates(cands[best]) if member else None,
                         min_gap_found=float(gaps[best]), resolution=resolution)


def lau_step(space, model, f, y0, ball_radius: float, n: int, N: Optional[int] = None) -> LauStepRecord:
    """One outward move ``x0 = y0 + lam (y0 - z0)`` from an ``eps``-maximizer ``z0``.

    ``lam = ball_radius / (alpha + ||y0||)`` keeps ``x0`` in the ball around
    ``y0`` and ``eps = lam / (n (1 + lam))``.
    """
    if ball_radius <= 0:
        raise InvalidParameter("ball_radius must be positive")
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    N = model.size if N is None else N
    a = alpha(model)
    ny0 = norm(space, y0)
    if a + ny0 == 0.0:
        raise InvalidParameter("alpha + ||y0|| = 0 leaves lambda undefined")
    lam = ball_radius / (a + ny0)
    eps = lam / (n * (1.0 + lam))

    rec_y = eval_r(space, model, f, y0, N)
    idx, vals = objective_values(space, model, f, y0, N)
    hits = np.flatnonzero(vals > rec_y.upper - eps)
    if hits.size == 0:
        raise NoEpsilonMaximizer(f"no eps-maximizer among the first {N} elements; increase N")
    k = int(hits[0])
    z0_index, z0, z0_value = int(idx[k]), model.element(int(idx[k])), float(vals[k])
    x0 = y0 + lam * (y0 - z0)

    r_y0 = rec_y.lower
    r_x0 = eval_r(space, model, f, x0, N).lower
    f_z0 = perturbation_eval(f, space, z0)
    checks = {
        "in_ball": bool(norm(space, x0 - y0) <= ball_radius * (1.0 + 1e-12)),
        "growth_lhs": r_x0,
        "growth_rhs": (1.0 + lam) * (r_y0 - eps) + lam * f_z0,
    }
    if z0_value < r_y0:
        # r(y0) - r(x0) < eps - lam/(1+lam) (r(x0) + f(z0)) for a strict eps-maximizer
        checks["estimate_lhs"] = r_y0 - r_x0
        checks["estimate_rhs"] = eps - lam / (1.0 + lam) * (r_x0 + f_z0)
    return LauStepRecord(y0=y0, z0=z0, z0_index=z0_index, lam=lam, epsilon=eps, x0=x0,
                         alpha=a, ball_radius=ball_radius, checks=checks)


@dataclass(frozen=True)
class Box:
    """Axis-aligned box in ``R^d`` sampled uniformly."""

    lower: tuple
    upper: tuple

    def sample(self, rng):
        return Coordinates(rng.uniform(self.lower, self.upper))

    def to_json(self):
        return {"kind": "Box", "lower": list(self.lower), "upper": list(self.upper)}


@dataclass(frozen=True)
class GridBall:
    """Functions ``center + p`` on ``[0, 1]`` with ``p`` piecewise linear, ``|p| <= radius``."""

    center: float = 2.0
    radius: float = 1.0
    n_breakpoints: int = 11

    def sample(self, rng):
        vals = self.center + rng.uniform(-self.radius, self.radius, self.n_breakpoints)
        return GridFunction(np.linspace(0.0, 1.0, self.n_breakpoints), vals)

    def to_json(self):
        return {"kind": "GridBall", "center": self.center, "radius": self.radius,
                "n_breakpoints": self.n_breakpoints}


@dataclass(frozen=True)
class DensityProbeReport:
    """Statistical evidence about how much of a region lies in ``D(C, f)``.

    ``g_condition_fraction`` is the share of samples in the good set ``G``
    (Euclidean finite sets only, else ``None``).
    """

    region: dict
    samples: int
    seed: int
    attained_fraction: float
    unique_argmax_fraction: float
    g_condition_fraction: Optional[float]
    per_sample_verdicts: dict
    rows: tuple = field(repr=False, default=())

    def to_json(self):
        return {"kind": "statistical", "region": self.region, "samples": self.samples,
                "seed": self.seed, "attained_fraction": self.attained_fraction,
                "unique_argmax_fraction": self.unique_argmax_fraction,
                "g_condition_fraction": self.g_condition_fraction,
                "per_sample_verdicts": dict(self.per_sample_verdicts)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "verdict", "r_lower", "r_upper", "best_index"])
        for row in self.rows:
            w.writerow([repr(v) if isinstance(v, float) else ("" if v is None else v) for v in row])
        return buf.getvalue()


def _in_g(space, model, f, x, eta):
    sub = subgradient_extremes(space, model, f, x, eta)
    if sub.hull_marker:
        return False
    if len(sub.extremes) == 1:
        return True
    return fn_membership(space, model, f, x, 1, resolution=20, eta=eta).min_gap_found <= 1e-9


def density_probe(space, model, f, region, samples: int, seed: int = 0,
                  eta: float = DEFAULT_ETA, schedule=DEFAULT_SCHEDULE) -> DensityProbeReport:
    """Classify ``samples`` points drawn from ``region``.

    Sample ``i`` uses its own generator seeded by ``(seed, i)``.
    """
    if samples < 1:
        raise InvalidParameter("samples must be >= 1")
    schedule = _check_schedule(schedule, eta)
    track_g = isinstance(space, Euclidean) and isinstance(model, FiniteSet)
    counts = {"Attained": 0, "NotAttained": 0, "Undetermined": 0}
    unique = in_g = 0
    rows = []
    for i in range(samples):
        x = region.sample(np.random.default_rng([seed, i]))
        try:
            records, idx, vals, lims = _scan(space, model, f, x, schedule)
        except UnsupportedCombination:
            counts["Undetermined"] += 1
            rows.append((i, "Undetermined", None, None, None))
            continue
        verdict = _verdict(model, records, idx, vals, lims, eta)
        counts[verdict.kind] += 1
        unique += int(np.count_nonzero(vals >= vals.max() - eta) == 1)
        if track_g:
            in_g += int(_in_g(space, model, f, x, eta))
        final = records[-1]
        rows.append((i, verdict.kind, final.lower, final.upper, final.best_index))
    return DensityProbeReport(
        region=region.to_json(), samples=samples, seed=seed,
        attained_fraction=counts["Attained"] / samples,
        unique_argmax_fraction=unique / samples,
        g_condition_fraction=in_g / samples if track_g else None,
        per_sample_verdicts=counts, rows=tuple(rows),
    )
