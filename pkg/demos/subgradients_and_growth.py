"""
Subgradients, the F_n sets and one growth step in the plane
===========================================================

C = {(1, 0), (-1, 0)}.  Points on the vertical axis have two farthest
points, so r is not differentiable there and the midpoint of the two
subgradients leaves a positive gap.
"""
import numpy as np

from farpoint import Coordinates, Euclidean, FiniteSet, Zero, fn_membership, lau_step, subgradient_extremes

E = Euclidean(2)
C = FiniteSet([Coordinates((1, 0)), Coordinates((-1, 0))])
x = Coordinates((0, 1))

sub = subgradient_extremes(E, C, Zero(), x)
print("farthest points:", sub.maximizers)
print("extreme subgradients:", [g.values.round(4).tolist() for g in sub.extremes])

rec = fn_membership(E, C, Zero(), x, n=2)
print(f"x in F_2: {rec.member}, witness {rec.witness_functional.values.round(4)}, gap {rec.min_gap_found:.4f}")

# step a hair off the axis and the tie - and the gap - disappears
for x1 in (1e-1, 1e-3, 1e-6):
    print(f"  x = ({x1:g}, 1): member = {fn_membership(E, C, Zero(), Coordinates((x1, 1)), n=2).member}")

# the growth step pushes y0 away from an almost-farthest point
step = lau_step(E, C, Zero(), x, ball_radius=0.5, n=2)
print("\nlambda =", step.lam, " eps =", round(step.epsilon, 6))
print("x0 =", step.x0.values, "inside the ball:", step.checks["in_ball"])
print(f"r(x0) = {step.checks['growth_lhs']:.6f} >= {step.checks['growth_rhs']:.6f}")
print("|x0 - y0| =", np.linalg.norm(step.x0.values - x.values))
