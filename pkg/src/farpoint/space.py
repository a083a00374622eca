"""Normed-space primitives: vectors, norms and norming functionals.

Two concrete spaces are modelled: Euclidean ``R^d`` and ``C(K)`` with the
sup norm on ``K = [0, 1]``.  Elements of ``C(K)`` are piecewise-linear
functions stored by their breakpoints, so the sup norm of any element (and
of any difference of elements) is an exact maximum over finitely many
breakpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateVector, InvalidParameter, RepresentationMismatch

__all__ = [
    "Coordinates",
    "GridFunction",
    "Vector",
    "Euclidean",
    "SupNormOnK",
    "NormedSpace",
    "DualCoordinates",
    "SignedPointMass",
    "Functional",
    "norm",
    "distance",
    "norming_functional",
    "apply_functional",
]


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Coordinates:
    """A point of ``R^d``."""

    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.values).ravel()
        if arr.size < 1:
            raise InvalidParameter("Coordinates need dimension >= 1")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameter("Coordinates must be finite")
        object.__setattr__(self, "values", arr)

    @property
    def dim(self) -> int:
        return self.values.size

    def _other(self, other) -> np.ndarray:
        if not isinstance(other, Coordinates):
            raise RepresentationMismatch(f"cannot combine Coordinates with {type(other).__name__}")
        if other.dim != self.dim:
            raise RepresentationMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other.values

    def __add__(self, other):
        return Coordinates(self.values + self._other(other))

    def __sub__(self, other):
        return Coordinates(self.values - self._other(other))

    def __mul__(self, a):
        return Coordinates(float(a) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return Coordinates(-self.values)

    def __eq__(self, other):
        return isinstance(other, Coordinates) and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"Coordinates({self.values.tolist()})"

    def to_json(self):
        return {"coordinates": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Piecewise-linear function on ``[0, 1]`` given by breakpoints and values."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = _frozen_array(self.breakpoints).ravel()
        v = _frozen_array(self.values).ravel()
        if t.size < 2 or t.size != v.size:
            raise InvalidParameter("need >= 2 breakpoints and one value per breakpoint")
        if t[0] != 0.0 or t[-1] != 1.0:
            raise InvalidParameter("breakpoints must start at 0 and end at 1")
        if np.any(np.diff(t) <= 0):
            raise InvalidParameter("breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise InvalidParameter("breakpoints and values must be finite")
        object.__setattr__(self, "breakpoints", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, c: float) -> "GridFunction":
        return cls([0.0, 1.0], [c, c])

    @classmethod
    def uniform(cls, values) -> "GridFunction":
        """Interpolate ``values`` placed on an equally spaced grid of ``[0, 1]``."""
        values = np.asarray(values, dtype=float).ravel()
        if values.size == 1:
            return cls.constant(float(values[0]))
        return cls(np.linspace(0.0, 1.0, values.size), values)

    def __call__(self, t):
        return np.interp(t, self.breakpoints, self.values)

    def refine(self, grid) -> "GridFunction":
        """Same function on the union of its breakpoints and ``grid``."""
        t = np.union1d(self.breakpoints, np.asarray(grid, dtype=float))
        return GridFunction(t, self(t))

    def _combine(self, other, op):
        if not isinstance(other, GridFunction):
            raise RepresentationMismatch(f"cannot combine GridFunction with {type(other).__name__}")
        if np.array_equal(self.breakpoints, other.breakpoints):
            return GridFunction(self.breakpoints, op(self.values, other.values))
        t = np.union1d(self.breakpoints, other.breakpoints)
        return GridFunction(t, op(self(t), other(t)))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, a):
        return GridFunction(self.breakpoints, float(a) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.breakpoints, -self.values)

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return False
        t = np.union1d(self.breakpoints, other.breakpoints)
        return np.array_equal(self(t), other(t))

    __hash__ = None

    def __repr__(self):
        return f"GridFunction(breakpoints={self.breakpoints.tolist()}, values={self.values.tolist()})"

    def to_json(self):
        return {"breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}


Vector = Union[Coordinates, GridFunction]


@dataclass(frozen=True)
class Euclidean:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidParameter("Euclidean dimension must be >= 1")

    def check(self, v) -> None:
        if not isinstance(v, Coordinates) or v.dim != self.d:
            raise RepresentationMismatch(f"{v!r} is not a point of R^{self.d}")

    def zero(self) -> Coordinates:
        return Coordinates(np.zeros(self.d))

    def to_json(self):
        return {"kind": "Euclidean", "d": self.d}


@dataclass(frozen=True)
class SupNormOnK:
    def check(self, v) -> None:
        if not isinstance(v, GridFunction):
            raise RepresentationMismatch(f"{v!r} is not an element of C([0,1])")

    def zero(self) -> GridFunction:
        return GridFunction.constant(0.0)

    def to_json(self):
        return {"kind": "SupNormOnK"}


NormedSpace = Union[Euclidean, SupNormOnK]


@dataclass(frozen=True, eq=False)
class DualCoordinates:
    values: np.ndarray
    dual_norm_bound: float = None

    def __post_init__(self):
        arr = _frozen_array(self.values).ravel()
        object.__setattr__(self, "values", arr)
        if self.dual_norm_bound is None:
            object.__setattr__(self, "dual_norm_bound", float(np.linalg.norm(arr)))

    def __repr__(self):
        return f"DualCoordinates({self.values.tolist()})"

    def to_json(self):
        return {"dual_coordinates": self.values.tolist(), "dual_norm_bound": self.dual_norm_bound}


@dataclass(frozen=True)
class SignedPointMass:
    """The functional ``v -> sign * v(t0)`` on ``C([0, 1])``."""

    t0: float
    sign: int
    dual_norm_bound: float = 1.0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameter("sign must be +1 or -1")
        if not 0.0 <= self.t0 <= 1.0:
            raise InvalidParameter("t0 must lie in [0, 1]")

    def to_json(self):
        return {"t0": self.t0, "sign": self.sign, "dual_norm_bound": self.dual_norm_bound}


Functional = Union[DualCoordinates, SignedPointMass]


def norm(space: NormedSpace, v: Vector) -> float:
    space.check(v)
    if isinstance(space, Euclidean):
        return float(np.linalg.norm(v.values))
    # extrema of a piecewise-linear function sit at breakpoints
    return float(np.max(np.abs(v.values)))


def distance(space: NormedSpace, u: Vector, v: Vector) -> float:
    return norm(space, u - v)


def norming_functional(space: NormedSpace, v: Vector) -> Functional:
    """Return ``g`` with ``||g|| = 1`` and ``g(v) = ||v||``.

    In ``C([0, 1])`` this is a signed point evaluation at the first breakpoint
    where ``|v|`` is maximal.
    """
    nv = norm(space, v)
    if nv == 0.0:
        raise DegenerateVector("the zero vector has no norming functional")
    if isinstance(space, Euclidean):
        return DualCoordinates(v.values / nv, dual_norm_bound=1.0)
    i = int(np.argmax(np.abs(v.values)))
    return SignedPointMass(float(v.breakpoints[i]), 1 if v.values[i] > 0 else -1)


def apply_functional(g: Functional, v: Vector) -> float:
    if isinstance(g, DualCoordinates):
        if not isinstance(v, Coordinates) or v.dim != g.values.size:
            raise RepresentationMismatch("DualCoordinates pair only with Coordinates of equal dimension")
        return float(np.dot(g.values, v.values))
    if isinstance(g, SignedPointMass):
        if not isinstance(v, GridFunction):
            raise RepresentationMismatch("SignedPointMass pairs only with GridFunction")
        return g.sign * float(v(g.t0))
    raise RepresentationMismatch(f"unknown functional {g!r}")
