"""
Convex objectives peak at extreme points
========================================

A dense sample of the square never beats its best vertex, and the unit ball
obeys  sup ||x - z|| + ||z|| = ||x|| + 2.
"""
from farpoint.scenarios import DistancePlusNorm, Polytope, run_ball_remark, run_extreme_points

square = Polytope([[-1, -1], [-1, 1], [1, -1], [1, 1]])
obj = DistancePlusNorm((2.0, 0.0))
for count in (100, 1_000, 100_000):
    rep = run_extreme_points(square, obj, count, seed=0)
    print(f"{count:>7} samples: vertex sup {rep.sup_over_extremes:.6f}  sample sup "
          f"{rep.sup_over_dense_sample:.6f}  gap {rep.gap:.2e}")

ball = run_ball_remark(3, [[2.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.3, -0.4, 0.0]], seed=1)
for idx, nx, expected, raw, refined, _ in ball.artifacts["ball_sup"]["rows"]:
    print(f"|x| = {nx:.2f}: expected {expected:.6f}, sphere sample {raw:.6f}, refined {refined:.6f}")
print("all checks pass:", ball.passed)
