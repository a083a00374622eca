"""
A bounded set in C([0,1]) whose perturbed farthest distance is never attained
===========================================================================

The bumps x_n are hats of height 1 supported on (0, 1/n).  We shrink them to
(1 - 1/n) x_n and subtract f(z) = (1 - ||z||)^+.  From the constant function
x = 2 the objective creeps up to ||x|| + 1 = 3 but never gets there.
"""
import numpy as np

from farpoint import GridFunction, OneMinusNormPlus, SupNormOnK, build_ck_family, classify_membership

space = SupNormOnK()
model = build_ck_family(10_000)
x = GridFunction.constant(2.0)

# f_x(z) = ||x - z|| + ||z||  (on C, f(z) = 1 - ||z||, so f_x = objective + 1)
ns = model.indices(10_000)
fx = model.distances(space, x, ns) + model.norms(space, ns)
for n in (1, 2, 10, 100, 10_000):
    print(f"n = {n:>6}   f_x(z_n) = {fx[n - 1]:.6f}   3 - 1/n = {3 - 1 / n:.6f}")

# the limit of the sequence is the zero function, where f_x is only 2
verdict = classify_membership(space, model, OneMinusNormPlus(), x, schedule=(100, 1000, 10_000))
cert = verdict.certificate
print("\nverdict:", verdict.kind)
print("argmax over growing prefixes:", cert.escape_indices)
print("f_x at the limit point:", cert.limit_point_values[0][1] + 1)
print("margin between sup and limit value:", cert.margin)

# any x within distance 1 of the constant 2 behaves the same way
wobbly = GridFunction(np.linspace(0, 1, 11), 2 + 0.8 * np.sin(np.linspace(0, 7, 11)))
print("wobbly x:", classify_membership(space, model, OneMinusNormPlus(), wobbly).kind)
