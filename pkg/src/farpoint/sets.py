"""Models of the bounded set ``C``.

An infinite ``C`` is represented by an enumerable prefix, its limit points
and an analytic bound on the objective over the part that was not
enumerated.  Three variants exist:

* :class:`FiniteSet` - an explicit list of points (0-based indices);
* :class:`SequenceWithLimit` - ``n -> z_n`` for ``n >= 1`` plus limit points
  and a caller-declared tail bound;
* :class:`CKFamily` - the set ``{(1 - 1/n) x_n : n >= 1}`` in ``C([0, 1])``
  whose bumps ``x_n`` have unit norm and converge pointwise to ``0``.
"""
from __future__ import annotations

import json
import math
import os
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import (
    EmptySet,
    IndexOutOfRange,
    InvalidParameter,
    RepresentationMismatch,
    UnsupportedCombination,
)
from .perturbations import NormOf, OneMinusNormPlus, Shifted, Zero
from .space import Coordinates, Euclidean, GridFunction, SupNormOnK, norm

__all__ = [
    "FiniteSet",
    "SequenceWithLimit",
    "CKFamily",
    "build_ck_family",
    "load_finite_set",
    "space_of",
    "element",
    "alpha",
    "objective_tail_bound",
    "ck_profile",
]

EMPTY_TAIL = -math.inf


def space_of(v):
    if isinstance(v, Coordinates):
        return Euclidean(v.dim)
    if isinstance(v, GridFunction):
        return SupNormOnK()
    raise RepresentationMismatch(f"not a vector: {v!r}")


class FiniteSet:
    """An explicit nonempty list of points sharing one representation."""

    limit_points = ()

    def __init__(self, points: Sequence):
        points = tuple(points)
        if not points:
            raise EmptySet("a FiniteSet needs at least one point")
        space = space_of(points[0])
        for p in points:
            space.check(p)
        self.points = points
        self.space = space

    @property
    def size(self) -> int:
        return len(self.points)

    def indices(self, N: int) -> np.ndarray:
        return np.arange(min(N, self.size))

    def element(self, n: int):
        if not 0 <= n < self.size:
            raise IndexOutOfRange(f"index {n} outside [0, {self.size})")
        return self.points[n]

    @cached_property
    def _matrix(self):
        if isinstance(self.space, Euclidean):
            return np.vstack([p.values for p in self.points])
        return None

    @cached_property
    def alpha(self) -> float:
        return float(np.max(self.norms(self.space, self.indices(self.size))))

    def norms(self, space, idx) -> np.ndarray:
        if self._matrix is not None:
            return np.linalg.norm(self._matrix[idx], axis=1)
        return np.array([norm(space, self.points[i]) for i in idx], dtype=float)

    def distances(self, space, x, idx) -> np.ndarray:
        space.check(x)
        if self._matrix is not None:
            return np.linalg.norm(x.values - self._matrix[idx], axis=1)
        return np.array([norm(space, x - self.points[i]) for i in idx], dtype=float)

    def to_json(self):
        return {"variant": "FiniteSet", "points": [p.to_json() for p in self.points]}


class SequenceWithLimit:
    """``{z_n : n >= 1}`` together with its limit points.

    ``tail_bound(x, f, N)`` must bound ``||x - z_n|| - f(z_n)`` over all
    ``n > N``; it is trusted, not checked.  Only ``n <= n_max`` is ever
    enumerated.
    """

    def __init__(self, element_rule: Callable, n_max: int, limit_points: Sequence,
                 tail_bound: Callable, alpha_bound: float | None = None):
        if n_max < 1:
            raise InvalidParameter("n_max must be >= 1")
        self.element_rule = element_rule
        self.n_max = int(n_max)
        self.limit_points = tuple(limit_points)
        self.tail_bound = tail_bound
        self.alpha_bound = alpha_bound
        self.space = space_of(element_rule(1))

    size = property(lambda self: self.n_max)

    def indices(self, N: int) -> np.ndarray:
        return np.arange(1, min(N, self.n_max) + 1)

    def element(self, n: int):
        if not 1 <= n <= self.n_max:
            raise IndexOutOfRange(f"index {n} outside [1, {self.n_max}]")
        return self.element_rule(n)

    @cached_property
    def alpha(self) -> float:
        vals = list(self.norms(self.space, self.indices(self.n_max)))
        vals += [norm(self.space, p) for p in self.limit_points]
        if self.alpha_bound is not None:
            vals.append(self.alpha_bound)
        return float(max(vals))

    def norms(self, space, idx) -> np.ndarray:
        return np.array([norm(space, self.element_rule(int(i))) for i in idx], dtype=float)

    def distances(self, space, x, idx) -> np.ndarray:
        space.check(x)
        return np.array([norm(space, x - self.element_rule(int(i))) for i in idx], dtype=float)

    def to_json(self):
        return {"variant": "SequenceWithLimit", "n_max": self.n_max,
                "limit_points": [p.to_json() for p in self.limit_points]}


def ck_profile(t, n: int):
    """``x_n(t) = d(t, U_n^c) / (d(t, t_n) + d(t, U_n^c))`` on ``K = [0, 1]``.

    ``U_n = (0, 1/n)`` is the punctured ``1/n``-neighbourhood of ``y = 0`` and
    ``t_n = 1/(2n)``.
    """
    t = np.asarray(t, dtype=float)
    tn = 0.5 / n
    d_out = np.minimum(t, np.maximum(1.0 / n - t, 0.0))
    return d_out / (np.abs(t - tn) + d_out)


class CKFamily:
    """``C = {(1 - 1/n) x_n : n >= 1}`` in ``C([0, 1])``, indices ``1..n_max``.

    With ``t_n`` the midpoint of ``U_n``, ``x_n`` is exactly the hat function
    through ``(0, 0), (t_n, 1), (1/n, 0), (1, 0)``, so its breakpoint
    representation is exact.
    """

    def __init__(self, n_max: int, extra_grid_points: Sequence[float] = ()):
        self.n_max = int(n_max)
        self.extra_grid_points = tuple(float(t) for t in extra_grid_points)
        self.space = SupNormOnK()
        self.limit_points = (GridFunction.constant(0.0),)

    size = property(lambda self: self.n_max)
    alpha = 1.0

    def indices(self, N: int) -> np.ndarray:
        return np.arange(1, min(N, self.n_max) + 1)

    def grid(self, n: int) -> np.ndarray:
        return np.union1d([0.0, 0.5 / n, 1.0 / n, 1.0], self.extra_grid_points)

    def unit_element(self, n: int) -> GridFunction:
        """The bump ``x_n`` itself."""
        self._check_index(n)
        t = self.grid(n)
        return GridFunction(t, ck_profile(t, n))

    def element(self, n: int) -> GridFunction:
        self._check_index(n)
        t = self.grid(n)
        return GridFunction(t, (1.0 - 1.0 / n) * ck_profile(t, n))

    def _check_index(self, n):
        if not 1 <= n <= self.n_max:
            raise IndexOutOfRange(f"index {n} outside [1, {self.n_max}]")

    def norms(self, space, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=float)
        return 1.0 - 1.0 / idx

    def distances(self, space, x, idx, block: int = 2048) -> np.ndarray:
        """``||x - element(n)||`` for every ``n`` in ``idx``, vectorised.

        ``x - element(n)`` can only have kinks at the breakpoints of ``x`` and
        at ``0, t_n, 1/n, 1``; its sup norm is the max over those points.
        """
        space.check(x)
        if not isinstance(space, SupNormOnK):
            raise RepresentationMismatch("CKFamily lives in C([0,1])")
        idx = np.asarray(idx, dtype=float)
        T, xT = x.breakpoints, x.values
        out = np.empty(idx.size)
        for lo in range(0, idx.size, block):
            n = idx[lo:lo + block, None]
            c, tn, e = 1.0 - 1.0 / n, 0.5 / n, 1.0 / n
            hat = np.maximum(np.minimum(T / tn, (e - T) / tn), 0.0)
            at_x = np.max(np.abs(xT - c * hat), axis=1)
            at_peak = np.abs(x(tn[:, 0]) - c[:, 0])
            at_edge = np.abs(x(e[:, 0]))
            out[lo:lo + block] = np.maximum(at_x, np.maximum(at_peak, at_edge))
        return out

    def distances_by_enumeration(self, space, x, idx) -> np.ndarray:
        return np.array([norm(space, x - self.element(int(n))) for n in idx], dtype=float)

    def to_json(self):
        return {"variant": "CKFamily", "n_max": self.n_max,
                "extra_grid_points": list(self.extra_grid_points)}


def build_ck_family(n_max: int, extra_grid_points: Sequence[float] = ()) -> CKFamily:
    """Build the family and check ``||x_n|| = 1`` and ``x_n = 0`` off ``U_n``."""
    if int(n_max) != n_max or n_max < 2:
        raise InvalidParameter("n_max must be an integer >= 2")
    extra = np.asarray(extra_grid_points, dtype=float)
    if extra.size and (np.any(extra < 0.0) or np.any(extra > 1.0) or not np.all(np.isfinite(extra))):
        raise InvalidParameter("extra grid points must lie in [0, 1]")
    model = CKFamily(n_max, extra)
    for n in range(1, model.n_max + 1):
        t = model.grid(n)
        v = ck_profile(t, n)
        if np.max(np.abs(v)) != 1.0 or ck_profile(0.5 / n, n) != 1.0:
            raise InvalidParameter(f"x_{n} does not have unit norm")
        if np.any(v[(t <= 0.0) | (t >= 1.0 / n)] != 0.0):
            raise InvalidParameter(f"x_{n} does not vanish outside U_{n}")
    return model


def load_finite_set(source) -> FiniteSet:
    """Read ``{"dimension": d, "points": [[...], ...]}`` from JSON text or a path."""
    if isinstance(source, os.PathLike):
        with open(source) as fh:
            source = fh.read()
    doc = json.loads(source) if isinstance(source, (str, bytes)) else source
    try:
        d = int(doc["dimension"])
        pts = [Coordinates(p) for p in doc["points"]]
    except (KeyError, TypeError) as exc:
        raise InvalidParameter(f"malformed point-set document: {exc}") from exc
    if any(p.dim != d for p in pts):
        raise InvalidParameter(f"every point must have dimension {d}")
    return FiniteSet(pts)


def element(model, n: int):
    return model.element(n)


def alpha(model) -> float:
    return float(model.alpha)


def objective_tail_bound(model, space, f, x, N: int) -> float:
    """Upper bound on ``||x - z_n|| - f(z_n)`` over the elements after the first ``N``.

    Returns ``-inf`` when nothing is left.  Raises :class:`UnsupportedCombination`
    when no bound is registered for ``(model, f, x)``.
    """
    if N < 1:
        raise InvalidParameter("N must be >= 1")
    if isinstance(model, FiniteSet) and N >= model.size:
        return EMPTY_TAIL
    if isinstance(model, SequenceWithLimit):
        return float(model.tail_bound(x, f, N))
    if isinstance(f, Shifted):
        return objective_tail_bound(model, space, f.base, x, N) - f.a
    # f >= 0 and the triangle inequality give these for any model
    if isinstance(f, NormOf):
        return norm(space, x)
    if isinstance(f, Zero):
        return norm(space, x) + alpha(model)
    if (isinstance(model, CKFamily) and isinstance(f, OneMinusNormPlus)
            and isinstance(x, GridFunction) and np.min(x.values) >= 1.0):
        # 0 <= z < 1 <= x pointwise, so ||x - z|| <= ||x|| and f(z) > 0
        return norm(space, x)
    raise UnsupportedCombination(
        f"no tail bound registered for {type(model).__name__} with {type(f).__name__}")
