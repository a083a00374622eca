"""The perturbations ``f`` subtracted inside the farthest-distance supremum.

All variants are nonnegative.  Every variant except :class:`PairIndicator`
depends on ``z`` only through ``||z||``, which lets the attainment engine
evaluate them from a vector of element norms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, RepresentationMismatch
from .space import Coordinates, norm

__all__ = [
    "Zero",
    "NormOf",
    "OneMinusNormPlus",
    "PairIndicator",
    "Shifted",
    "Perturbation",
    "perturbation_eval",
]


@dataclass(frozen=True)
class Zero:
    name = "Zero"

    def of_norm(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))

    def to_json(self):
        return {"variant": self.name}


@dataclass(frozen=True)
class NormOf:
    """``f(z) = ||z||``."""

    name = "NormOf"

    def of_norm(self, r):
        return np.asarray(r, dtype=float)

    def to_json(self):
        return {"variant": self.name}


@dataclass(frozen=True)
class OneMinusNormPlus:
    """``f(z) = max(0, 1 - ||z||)``."""

    name = "OneMinusNormPlus"

    def of_norm(self, r):
        return np.maximum(0.0, 1.0 - np.asarray(r, dtype=float))

    def to_json(self):
        return {"variant": self.name}


@dataclass(frozen=True)
class PairIndicator:
    """``f(z) = 1/k`` when the scalar ``z`` equals ``a`` or ``b``, else ``0``."""

    k: int
    a: float = 0.0
    b: float = 1.0
    name = "PairIndicator"
    of_norm = None

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidParameter("PairIndicator needs an integer k >= 1")

    def scalar(self, z: float) -> float:
        return 1.0 / self.k if z == self.a or z == self.b else 0.0

    def to_json(self):
        return {"variant": self.name, "k": self.k, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Shifted:
    """``f + a``; used to check the constant-shift normalisation."""

    base: object
    a: float
    name = "Shifted"

    @property
    def of_norm(self):
        if self.base.of_norm is None:
            return None
        return lambda r: self.base.of_norm(r) + self.a

    def to_json(self):
        return {"variant": self.name, "base": self.base.to_json(), "a": self.a}


Perturbation = (Zero, NormOf, OneMinusNormPlus, PairIndicator, Shifted)


def perturbation_eval(f, space, z) -> float:
    if isinstance(f, Shifted):
        return perturbation_eval(f.base, space, z) + f.a
    if isinstance(f, PairIndicator):
        if not isinstance(z, Coordinates) or z.dim != 1:
            raise RepresentationMismatch("PairIndicator is defined on scalars only")
        return f.scalar(float(z.values[0]))
    if not isinstance(f, Perturbation):
        raise InvalidParameter(f"unknown perturbation {f!r}")
    return float(f.of_norm(norm(space, z)))
