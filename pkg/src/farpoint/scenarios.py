"""End-to-end reproductions: the C(K) counterexample, the vanishing-penalty
remark on ``[0, 1]``, the extreme-point reduction and the unit-ball identity.

Each ``run_*`` function returns a :class:`ScenarioReport` (or an
:class:`ExtremePointReport`) whose assertions carry expected value,
observed value and tolerance.  Inequalities are recorded as an observed
excess (how far the inequality is violated, ``0`` when it holds) against an
expected ``0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .attainment import classify_membership
from .errors import InvalidObjective, InvalidParameter, InvalidX
from .generic import Box, GridBall, density_probe
from .perturbations import OneMinusNormPlus, Zero
from .sets import FiniteSet, build_ck_family
from .space import Coordinates, Euclidean, GridFunction, SupNormOnK, norm

__all__ = [
    "Assertion",
    "ScenarioReport",
    "ExtremePointReport",
    "Polytope",
    "EuclideanBall",
    "DistancePlusNorm",
    "Distance",
    "Square",
    "fk_supremum",
    "run_ck_counterexample",
    "run_fk_remark",
    "run_extreme_points",
    "run_ball_remark",
    "run_density_triangle",
    "run_density_ck",
    "random_polytope",
    "run_extreme_points_scenario",
    "TRIANGLE",
]

TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


@dataclass
class Assertion:
    description: str
    expected: object
    observed: object
    tolerance: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.tolerance is None:
            return self.expected == self.observed
        return bool(abs(float(self.expected) - float(self.observed)) <= self.tolerance)

    def to_json(self):
        return {"description": self.description, "expected": self.expected,
                "observed": self.observed, "tolerance": self.tolerance, "pass": self.passed}


def _excess(description, value, allowed=0.0, tolerance=0.0):
    """``value <= allowed (+ tolerance)`` recorded as an excess over ``allowed``."""
    return Assertion(description, 0.0, max(0.0, float(value) - allowed), tolerance)


@dataclass
class ScenarioReport:
    scenario_name: str
    parameters: dict
    assertions: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def add_series(self, name, columns, rows):
        self.artifacts[name] = {"columns": list(columns), "rows": [list(r) for r in rows]}

    def to_json(self):
        return {"scenario_name": self.scenario_name, "parameters": self.parameters,
                "assertions": [a.to_json() for a in self.assertions],
                "artifacts": self.artifacts, "pass": self.passed}


# -- the C([0,1]) counterexample -------------------------------------------------

def _as_grid_function(x):
    if isinstance(x, GridFunction):
        return x
    return GridFunction.uniform(np.atleast_1d(np.asarray(x, dtype=float)))


def run_ck_counterexample(n_max: int = 1000, schedule: Sequence[int] = (10, 100, 1000),
                          x_choices=None, probe_t: float = 0.3) -> ScenarioReport:
    """``f_x(z) = ||x - z|| + ||z||`` never attains its sup on ``C`` for ``x`` near ``2``.

    ``x_choices`` are :class:`GridFunction` objects or value lists on a uniform
    grid (a single value is a constant function).
    """
    schedule = tuple(int(N) for N in schedule)
    if not schedule or n_max < max(schedule):
        raise InvalidParameter("n_max must cover the whole schedule")
    xs = [_as_grid_function(x) for x in (x_choices if x_choices is not None else [[2.0]])]
    space = SupNormOnK()
    two = GridFunction.constant(2.0)
    for x in xs:
        off = norm(space, x - two)
        if off > 1.0:
            raise InvalidX(f"||x - 2|| = {off} > 1: outside the ball where non-attainment holds")

    model = build_ck_family(n_max)
    report = ScenarioReport("ck_counterexample", {
        "n_max": n_max, "schedule": list(schedule), "probe_t": probe_t,
        "x_choices": [x.to_json() for x in xs]})

    ns = np.arange(1, n_max + 1)
    unit_norms = np.empty(n_max)
    nonzero = at_zero = 0
    for k, n in enumerate(ns):
        xn = model.unit_element(int(n))
        unit_norms[k] = norm(space, xn)
        nonzero += n * probe_t >= 1.0 and xn(probe_t) != 0.0
        at_zero += xn(0.0) != 0.0
    report.assertions.append(Assertion(
        "max_n | ||x_n|| - 1 |", 0.0, float(np.max(np.abs(unit_norms - 1.0))), 1e-12))
    report.assertions.append(Assertion(
        f"count of n >= 1/{probe_t} with x_n({probe_t}) != 0", 0, int(nonzero)))
    report.assertions.append(Assertion("count of n with x_n(0) != 0", 0, int(at_zero)))

    f = OneMinusNormPlus()
    for j, x in enumerate(xs):
        nx = norm(space, x)
        fx = model.distances(space, x, ns) + model.norms(space, ns)
        tag = f"x[{j}]"
        report.assertions.append(Assertion(
            f"{tag}: max_n f_x(z_n) < ||x|| + 1", True, bool(fx.max() < nx + 1.0)))
        if np.all(x.values == x.values[0]):
            report.assertions.append(Assertion(
                f"{tag}: max_n |f_x(z_n) - (||x|| + 1 - 1/n)|", 0.0,
                float(np.max(np.abs(fx - (nx + 1.0 - 1.0 / ns)))), 1e-12))

        verdict = classify_membership(space, model, f, x, schedule)
        report.assertions.append(Assertion(f"{tag}: verdict", "NotAttained", verdict.kind))
        if verdict.kind == "NotAttained":
            # on C, f(z) = 1 - ||z|| so f_x = objective + 1
            cert = verdict.certificate
            report.assertions += [
                Assertion(f"{tag}: sup bracket upper (f_x)", nx + 1.0, cert.sup_limit + 1.0, 1e-12),
                Assertion(f"{tag}: sup bracket lower (f_x)", nx + 1.0, cert.final_lower + 1.0,
                          1.0 / schedule[-1] + 1e-12),
                Assertion(f"{tag}: f_x at the limit point 0", nx,
                          cert.limit_point_values[0][1] + 1.0, 1e-12),
                Assertion(f"{tag}: certificate margin", 1.0, cert.margin, 1e-9),
                Assertion(f"{tag}: escape indices strictly increase", True,
                          all(b > a for a, b in zip(cert.escape_indices, cert.escape_indices[1:]))),
            ]
        if j == 0:
            report.add_series("fx_vs_n", ["n", "f_x"], zip(ns.tolist(), fx.tolist()))
    return report


# -- vanishing penalties on C = [0, 1] --------------------------------------------

def fk_supremum(x: float, k: Optional[int]):
    """``sup {|x - z| - f_k(z) : z in [0, 1]}`` and whether it is attained.

    ``f_k`` is ``1/k`` at ``z = 0, 1`` and ``0`` elsewhere; ``k=None`` means
    ``f = 0``.  Returns ``(sup, attained, witness)``.  Over the open interval
    ``|x - z|`` stays strictly below its value at the far endpoint (``0``
    when ``x >= 1/2``, else ``1``), so only the endpoints can attain.
    """
    pen = 0.0 if k is None else 1.0 / k
    interior_sup = max(abs(x), abs(x - 1.0))
    ends = ((0.0, abs(x) - pen), (1.0, abs(x - 1.0) - pen))
    sup = max(interior_sup, ends[0][1], ends[1][1])
    for z, v in ends:
        if v == sup:
            return sup, True, z
    return sup, False, None


def run_fk_remark(k_values: Sequence[int] = (1, 2, 5), x_grid=None) -> ScenarioReport:
    if x_grid is None:
        x_grid = np.linspace(-1.0, 2.0, 101)
    x_grid = [float(x) for x in x_grid]
    k_values = [int(k) for k in k_values]
    if any(k < 1 for k in k_values):
        raise InvalidParameter("k must be >= 1")
    report = ScenarioReport("fk_remark", {"k_values": k_values, "x_grid": x_grid})
    rows = []
    control = [fk_supremum(x, None) for x in x_grid]
    for x, (s, att, _) in zip(x_grid, control):
        rows.append((x, 0, s, int(att)))
    for k in k_values:
        res = [fk_supremum(x, k) for x in x_grid]
        rows += [(x, k, s, int(att)) for x, (s, att, _) in zip(x_grid, res)]
        report.assertions.append(Assertion(
            f"k={k}: number of x in D(C, f_k)", 0, sum(att for _, att, _ in res)))
        report.assertions.append(Assertion(
            f"k={k}: max_x |sup_k(x) - sup_0(x)|", 0.0,
            max(abs(a[0] - b[0]) for a, b in zip(res, control)), 0.0))
        report.assertions.append(Assertion(
            f"k={k}: sup_z |f_k(z)|", 1.0 / k, 1.0 / k, 0.0))
    report.assertions.append(Assertion(
        "f = 0: number of x in D(C, 0)", len(x_grid), sum(att for _, att, _ in control)))
    report.add_series("fk_sup", ["x", "k", "sup", "attained"], rows)
    return report


# -- extreme points ----------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """Convex hull of an explicit vertex list (rows)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.shape[0] < 1:
            raise InvalidParameter("a polytope needs a vertex")
        object.__setattr__(self, "vertices", v)

    @property
    def d(self):
        return self.vertices.shape[1]

    def to_json(self):
        return {"kind": "Polytope", "vertices": self.vertices.tolist()}


@dataclass(frozen=True)
class EuclideanBall:
    """Closed unit ball of ``R^d``; its extreme points form the unit sphere."""

    d: int

    def to_json(self):
        return {"kind": "EuclideanBall", "d": self.d}


@dataclass(frozen=True)
class DistancePlusNorm:
    """``z -> ||x - z|| + ||z||``."""

    x: tuple

    def __call__(self, Z):
        Z = np.atleast_2d(Z)
        return np.linalg.norm(np.asarray(self.x) - Z, axis=1) + np.linalg.norm(Z, axis=1)

    def to_json(self):
        return {"kind": "DistancePlusNorm", "x": list(self.x)}


@dataclass(frozen=True)
class Distance:
    """``z -> ||x - z||``."""

    x: tuple

    def __call__(self, Z):
        return np.linalg.norm(np.asarray(self.x) - np.atleast_2d(Z), axis=1)

    def to_json(self):
        return {"kind": "Distance", "x": list(self.x)}


@dataclass(frozen=True)
class Square:
    """Scalar ``z -> z**2``."""

    x = None

    def __call__(self, Z):
        return np.atleast_2d(Z)[:, 0] ** 2

    def to_json(self):
        return {"kind": "Square"}


@dataclass(frozen=True)
class ExtremePointReport:
    set_descriptor: dict
    objective: dict
    sup_over_extremes: float
    argmax_extreme: list
    sup_over_dense_sample: float
    sample_count: int
    seed: int

    @property
    def gap(self) -> float:
        return self.sup_over_extremes - self.sup_over_dense_sample

    def to_json(self):
        return {"set_descriptor": self.set_descriptor, "objective": self.objective,
                "sup_over_extremes": self.sup_over_extremes, "argmax_extreme": self.argmax_extreme,
                "sup_over_dense_sample": self.sup_over_dense_sample,
                "sample_count": self.sample_count, "seed": self.seed, "gap": self.gap}


def _check_objective(objective, d):
    if not isinstance(objective, (DistancePlusNorm, Distance, Square)):
        raise InvalidObjective(f"{objective!r} is not one of the supported convex objectives")
    if isinstance(objective, Square):
        if d != 1:
            raise InvalidObjective("Square is defined on scalars only")
    elif len(objective.x) != d:
        raise InvalidObjective("objective point has the wrong dimension")


def _ball_extreme_sup(objective, d):
    """Analytic sup over the unit sphere and a maximizer."""
    if isinstance(objective, Square):
        return 1.0, np.array([1.0])
    x = np.asarray(objective.x, dtype=float)
    nx = float(np.linalg.norm(x))
    w = -x / nx if nx > 0 else np.eye(d)[0]
    return (nx + 2.0 if isinstance(objective, DistancePlusNorm) else nx + 1.0), w


def sphere_sample(rng, d, count):
    g = rng.standard_normal((count, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def ball_sample(rng, d, count):
    return sphere_sample(rng, d, count) * rng.uniform(0.0, 1.0, (count, 1)) ** (1.0 / d)


def run_extreme_points(set_descriptor, objective, sample_count: int = 100_000, seed: int = 0,
                       concentration: float = 0.1, block: int = 50_000) -> ExtremePointReport:
    """Compare the sup over extreme points with the sup over a dense sample of the set.

    Polytope samples are convex combinations of the vertices with
    Dirichlet(``concentration``) weights; small concentrations put many
    samples near the vertices and edges.
    """
    _check_objective(objective, set_descriptor.d)
    if sample_count < 1:
        raise InvalidParameter("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    if isinstance(set_descriptor, Polytope):
        vals = objective(set_descriptor.vertices)
        i = int(np.argmax(vals))
        ext_sup, ext_arg = float(vals[i]), set_descriptor.vertices[i]
        m = set_descriptor.vertices.shape[0]
        draw = lambda c: rng.dirichlet(np.full(m, concentration), c) @ set_descriptor.vertices
    elif isinstance(set_descriptor, EuclideanBall):
        ext_sup, ext_arg = _ball_extreme_sup(objective, set_descriptor.d)
        draw = lambda c: ball_sample(rng, set_descriptor.d, c)
    else:
        raise InvalidParameter(f"unknown set descriptor {set_descriptor!r}")
    best = -np.inf
    for lo in range(0, sample_count, block):
        best = max(best, float(np.max(objective(draw(min(block, sample_count - lo))))))
    return ExtremePointReport(set_descriptor.to_json(), objective.to_json(), ext_sup,
                              np.asarray(ext_arg).tolist(), best, sample_count, seed)


def random_polytope(rng, d: int, n_vertices: int) -> Polytope:
    return Polytope(rng.uniform(-1.0, 1.0, (n_vertices, d)))


def run_extreme_points_scenario(dimension: int = 2, n_vertices: int = 6, objective: str = "distance_plus_norm",
                                x=None, sample_count: int = 100_000, seed: int = 0) -> ScenarioReport:
    """Random polytope from ``seed`` plus a menu objective, as a scenario report."""
    rng = np.random.default_rng([seed, 1])
    poly = random_polytope(rng, dimension, n_vertices)
    x = tuple([2.0] + [0.0] * (dimension - 1)) if x is None else tuple(float(v) for v in x)
    menu = {"distance_plus_norm": DistancePlusNorm, "distance": Distance}
    if objective == "square":
        obj = Square()
    elif objective in menu:
        obj = menu[objective](x)
    else:
        raise InvalidObjective(f"unknown objective {objective!r}")
    rep = run_extreme_points(poly, obj, sample_count, seed)
    report = ScenarioReport("extreme_points", {
        "dimension": dimension, "n_vertices": n_vertices, "objective": objective,
        "x": list(x), "sample_count": sample_count, "seed": seed})
    report.assertions.append(_excess("dense-sample sup above vertex sup",
                                     rep.sup_over_dense_sample, rep.sup_over_extremes, 1e-12))
    report.artifacts["extreme_points"] = rep.to_json()
    return report


# -- the unit ball of R^d ---------------------------------------------------------

def _refine_on_sphere(x, starts, steps):
    """Projected gradient ascent of ``||x - z||`` over the unit sphere."""
    Z = starts.copy()
    for _ in range(steps):
        diff = Z - x
        nd = np.linalg.norm(diff, axis=1, keepdims=True)
        Z = Z + np.divide(diff, nd, out=np.zeros_like(diff), where=nd > 0)
        Z /= np.linalg.norm(Z, axis=1, keepdims=True)
    return Z


def run_ball_remark(dimension: int = 2, x_samples=10, seed: int = 0,
                    sphere_samples: int = 100_000, refine_steps: int = 50) -> ScenarioReport:
    """``sup_{||z|| <= 1} ||x - z|| + ||z|| = ||x|| + 2``, attained at ``-x / ||x||``.

    ``x_samples`` is a count of random points in ``[-3, 3]^d`` or an explicit
    list of points.  The observed sup is the best of the sphere sample after
    a short projected-ascent refinement of its top candidates.
    """
    if dimension < 1:
        raise InvalidParameter("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    if isinstance(x_samples, (int, np.integer)):
        xs = rng.uniform(-3.0, 3.0, (int(x_samples), dimension))
    else:
        xs = np.atleast_2d(np.asarray(x_samples, dtype=float))
        if xs.shape[1] != dimension:
            raise InvalidParameter("x samples must match the dimension")
    report = ScenarioReport("ball_remark", {
        "dimension": dimension, "x_samples": xs.tolist(), "seed": seed,
        "sphere_samples": sphere_samples, "refine_steps": refine_steps})
    rows = []
    for j, x in enumerate(xs):
        obj = DistancePlusNorm(tuple(x))
        expected, w = _ball_extreme_sup(obj, dimension)
        S = sphere_sample(rng, dimension, sphere_samples)
        B = ball_sample(rng, dimension, sphere_samples)
        on_sphere = obj(S)
        raw = float(on_sphere.max())
        top = S[np.argsort(on_sphere)[-5:]]
        refined = float(obj(_refine_on_sphere(x, top, refine_steps)).max())
        observed = max(raw, refined)
        in_ball = obj(B)
        Bdir = B / np.linalg.norm(B, axis=1, keepdims=True)
        through = np.maximum(obj(Bdir), obj(-Bdir))
        tag = f"x[{j}]"
        report.assertions += [
            Assertion(f"{tag}: value at the witness -x/||x||", expected, float(obj(w)[0]), 1e-12),
            Assertion(f"{tag}: observed sup vs ||x|| + 2", expected, observed, 2e-3),
            _excess(f"{tag}: observed sup above ||x|| + 2", observed, expected, 1e-12),
            Assertion(f"{tag}: sphere sup of f_x minus 1 + sphere sup of ||x - z||",
                      0.0, raw - (1.0 + float(np.linalg.norm(x - S, axis=1).max())), 1e-12),
            _excess(f"{tag}: ball sample above its two sphere endpoints",
                    float(np.max(in_ball - through)), 0.0, 1e-12),
        ]
        rows.append((j, float(np.linalg.norm(x)), expected, raw, refined, float(in_ball.max())))
    report.add_series("ball_sup", ["index", "norm_x", "expected", "sphere_raw", "refined", "ball_raw"], rows)
    return report


# -- density probes as scenarios ------------------------------------------------------

def run_density_triangle(samples: int = 10_000, seed: int = 0, half_width: float = 3.0) -> ScenarioReport:
    model = FiniteSet([Coordinates(p) for p in TRIANGLE])
    region = Box((-half_width, -half_width), (half_width, half_width))
    rep = density_probe(Euclidean(2), model, Zero(), region, samples, seed)
    report = ScenarioReport("density_triangle", {"samples": samples, "seed": seed,
                                                 "half_width": half_width})
    report.assertions += [
        Assertion("attained fraction", 1.0, rep.attained_fraction, 0.0),
        _excess("unique-argmax fraction shortfall below 0.999", 0.999 - rep.unique_argmax_fraction),
    ]
    _attach_probe(report, rep)
    return report


def run_density_ck(samples: int = 100, seed: int = 0, n_max: int = 10_000) -> ScenarioReport:
    model = build_ck_family(n_max)
    schedule = tuple(N for N in (100, 1000, 10_000) if N <= n_max) or (n_max,)
    rep = density_probe(SupNormOnK(), model, OneMinusNormPlus(), GridBall(), samples, seed,
                        schedule=schedule)
    report = ScenarioReport("density_ck", {"samples": samples, "seed": seed, "n_max": n_max})
    report.assertions.append(Assertion("attained fraction", 0.0, rep.attained_fraction, 0.0))
    report.assertions.append(Assertion("not-attained count", samples,
                                       rep.per_sample_verdicts["NotAttained"]))
    _attach_probe(report, rep)
    return report


def _attach_probe(report, rep):
    report.artifacts["density_probe"] = rep.to_json()
    report.add_series("density_rows", ["index", "verdict", "r_lower", "r_upper", "best_index"],
                      rep.rows)
