"""The perturbed farthest-distance value ``r(x) = sup_z ||x - z|| - f(z)``.

``eval_r`` brackets ``r(x)`` between the best value over an enumerated
prefix of ``C`` (plus its limit points) and that value combined with an
analytic tail bound.  ``classify_membership`` turns a schedule of growing
prefixes into a verdict on whether the supremum is attained, i.e. whether
``x`` belongs to ``D(C, f)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParameter, UnsupportedCombination
from .perturbations import perturbation_eval
from .sets import objective_tail_bound
from .space import norm

__all__ = [
    "AttainmentRecord",
    "Attained",
    "NotAttained",
    "Undetermined",
    "NonAttainmentCertificate",
    "DEFAULT_ETA",
    "DEFAULT_SCHEDULE",
    "objective_values",
    "limit_values",
    "eval_r",
    "argmax_set",
    "classify_membership",
    "perturbation_eval",
]

DEFAULT_ETA = 1e-9
DEFAULT_SCHEDULE = (100, 1000, 10000)


def _num(v):
    return None if v is None else float(v)


@dataclass(frozen=True)
class AttainmentRecord:
    """Bracket ``lower <= r(x) <= upper`` from the first ``prefix_size`` elements.

    ``best_index`` is the smallest index achieving ``best_value``; it is
    ``None`` when a limit point (``best_limit``) does strictly better than
    every enumerated element.
    """

    lower: float
    upper: float
    best_index: Optional[int]
    best_value: float
    prefix_size: int
    best_limit: Optional[int] = None

    def to_json(self):
        return {"lower": self.lower, "upper": _num(self.upper), "best_index": self.best_index,
                "best_value": self.best_value, "prefix_size": self.prefix_size,
                "best_limit": self.best_limit}


@dataclass(frozen=True)
class NonAttainmentCertificate:
    """Finite evidence that the supremum escapes to infinity.

    ``escape_indices`` are the prefix argmaxes along the schedule (strictly
    increasing).  ``margin = sup_limit - max(limit point values)``, where
    ``sup_limit`` is the upper end of the final bracket.
    """

    escape_indices: tuple
    sup_limit: float
    limit_point_values: tuple
    margin: float
    final_lower: float

    def to_json(self):
        return {"escape_indices": list(self.escape_indices), "sup_limit": self.sup_limit,
                "limit_point_values": [[p.to_json(), v] for p, v in self.limit_point_values],
                "margin": self.margin, "final_lower": self.final_lower}


@dataclass(frozen=True)
class Attained:
    witness: object
    value: float
    index: Optional[int] = None
    limit_index: Optional[int] = None
    kind = "Attained"

    def to_json(self):
        return {"verdict": self.kind, "witness": self.witness.to_json(), "value": self.value,
                "index": self.index, "limit_index": self.limit_index}


@dataclass(frozen=True)
class NotAttained:
    certificate: NonAttainmentCertificate
    kind = "NotAttained"

    def to_json(self):
        return {"verdict": self.kind, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class Undetermined:
    reason: str
    kind = "Undetermined"

    def to_json(self):
        return {"verdict": self.kind, "reason": self.reason}


def objective_values(space, model, f, x, N: int):
    """Indices of the first ``N`` elements and ``||x - z|| - f(z)`` on each."""
    if N < 1:
        raise InvalidParameter("N must be >= 1")
    idx = model.indices(N)
    dist = model.distances(space, x, idx)
    of_norm = getattr(f, "of_norm", None)
    if of_norm is not None:
        fvals = of_norm(model.norms(space, idx))
    else:
        fvals = np.array([perturbation_eval(f, space, model.element(int(i))) for i in idx])
    return idx, dist - fvals


def limit_values(space, model, f, x) -> np.ndarray:
    return np.array([norm(space, x - p) - perturbation_eval(f, space, p)
                     for p in model.limit_points], dtype=float)


def _record(idx, vals, lims, tail, N) -> AttainmentRecord:
    i = int(np.argmax(vals))  # first occurrence: smallest index wins ties
    best_index, best_value, best_limit = int(idx[i]), float(vals[i]), None
    if lims.size and lims.max() > best_value:
        best_limit = int(np.argmax(lims))
        best_index, best_value = None, float(lims[best_limit])
    return AttainmentRecord(lower=best_value, upper=max(best_value, tail), best_index=best_index,
                            best_value=best_value, prefix_size=int(N), best_limit=best_limit)


def eval_r(space, model, f, x, N: int) -> AttainmentRecord:
    idx, vals = objective_values(space, model, f, x, N)
    lims = limit_values(space, model, f, x)
    return _record(idx, vals, lims, objective_tail_bound(model, space, f, x, N), N)


def argmax_set(space, model, f, x, N: int, eta: float = DEFAULT_ETA):
    """Enumerated elements within ``eta`` of the prefix maximum, by index."""
    if eta <= 0:
        raise InvalidParameter("eta must be positive")
    idx, vals = objective_values(space, model, f, x, N)
    keep = np.flatnonzero(vals >= vals.max() - eta)
    return [(int(idx[k]), model.element(int(idx[k])), float(vals[k])) for k in keep]


def _scan(space, model, f, x, schedule):
    """Records for each truncation, computed from a single pass over the prefix."""
    idx, vals = objective_values(space, model, f, x, schedule[-1])
    lims = limit_values(space, model, f, x)
    records = []
    for N in schedule:
        k = min(N, idx.size)
        records.append(_record(idx[:k], vals[:k], lims,
                               objective_tail_bound(model, space, f, x, N), N))
    return records, idx, vals, lims


def _check_schedule(schedule, eta):
    schedule = tuple(int(N) for N in schedule)
    if not schedule or schedule[0] < 1 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InvalidParameter("schedule must be a strictly increasing list of N >= 1")
    if eta <= 0:
        raise InvalidParameter("eta must be positive")
    return schedule


def _verdict(model, records, idx, vals, lims, eta):
    final = records[-1]
    keys = [(r.best_index, r.best_limit) for r in records]
    stable = len(keys) < 2 or keys[-1] == keys[-2]
    if final.best_value >= final.upper - eta and stable:
        if final.best_limit is not None:
            return Attained(model.limit_points[final.best_limit], final.best_value,
                            limit_index=final.best_limit)
        return Attained(model.element(final.best_index), final.best_value, index=final.best_index)

    # prefix-only argmax, independent of limit points
    escape = []
    for r in records:
        k = min(r.prefix_size, idx.size)
        escape.append(int(idx[int(np.argmax(vals[:k]))]))
    escaping = len(escape) >= 2 and all(b > a for a, b in zip(escape, escape[1:]))
    if not escaping:
        return Undetermined("argmax neither stable at the bracket top nor escaping")
    if not lims.size:
        return Undetermined("argmax escapes but the model has no limit points to rule out")
    if lims.max() > final.lower - eta:
        return Undetermined("a limit point comes within eta of the supremum")
    if final.best_value >= final.upper - eta:
        return Undetermined("an enumerated element already reaches the upper bound")
    cert = NonAttainmentCertificate(
        escape_indices=tuple(escape),
        sup_limit=float(final.upper),
        limit_point_values=tuple(zip(model.limit_points, (float(v) for v in lims))),
        margin=float(final.upper - lims.max()),
        final_lower=float(final.lower),
    )
    return NotAttained(cert)


def classify_membership(space, model, f, x, schedule=DEFAULT_SCHEDULE, eta: float = DEFAULT_ETA):
    """Decide from finite evidence whether ``x`` lies in ``D(C, f)``.

    Never raises on missing tail bounds: those yield :class:`Undetermined`.
    """
    schedule = _check_schedule(schedule, eta)
    try:
        scan = _scan(space, model, f, x, schedule)
    except UnsupportedCombination as exc:
        return Undetermined(str(exc))
    return _verdict(model, *scan, eta)
