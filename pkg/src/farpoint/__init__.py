"""Perturbed farthest-point problems: ``r(x) = sup_{z in C} ||x - z|| - f(z)``.

The package evaluates ``r`` with rigorous brackets, decides whether the
supremum is attained, exposes the subgradient machinery behind the density
of attainment, and reproduces the classic counterexamples.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .space import (  # noqa: F401
    Coordinates, GridFunction, Euclidean, SupNormOnK, DualCoordinates, SignedPointMass,
    norm, distance, norming_functional, apply_functional,
)
from .perturbations import Zero, NormOf, OneMinusNormPlus, PairIndicator, Shifted, perturbation_eval  # noqa: F401
from .sets import (  # noqa: F401
    FiniteSet, SequenceWithLimit, CKFamily, build_ck_family, load_finite_set,
    element, alpha, objective_tail_bound,
)
from .attainment import (  # noqa: F401
    AttainmentRecord, Attained, NotAttained, Undetermined, NonAttainmentCertificate,
    eval_r, argmax_set, classify_membership,
)
from .generic import (  # noqa: F401
    SubgradientSet, FnProbeRecord, LauStepRecord, DensityProbeReport, Box, GridBall,
    subgradient_extremes, g_gap, fn_membership, lau_step, density_probe,
)
