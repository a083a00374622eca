"""
How much of a region has an attained farthest point?
====================================================

For a finite set every x attains, and almost every x has a single farthest
point.  In the C([0,1]) example, samples from the ball around the constant 2
never attain.
"""
from farpoint import (Box, Coordinates, Euclidean, FiniteSet, GridBall, OneMinusNormPlus, SupNormOnK,
                      Zero, build_ck_family, density_probe)

tri = FiniteSet([Coordinates(p) for p in [(0, 0), (1, 0), (0, 1)]])
rep = density_probe(Euclidean(2), tri, Zero(), Box((-3, -3), (3, 3)), 5000, seed=0)
print("triangle:", rep.per_sample_verdicts, "unique farthest point:", rep.unique_argmax_fraction)

rep = density_probe(SupNormOnK(), build_ck_family(10_000), OneMinusNormPlus(), GridBall(), 50, seed=0)
print("C([0,1]) ball:", rep.per_sample_verdicts, "attained fraction:", rep.attained_fraction)
print(rep.to_csv().splitlines()[:3])
