"""
Swapping the perturbation: f(z) = ||z|| brings attainment back
============================================================

Same set, same x = 2, but now the perturbation is lower semicontinuous
for the weak topology.  The sup is reached at the first element, which
happens to be the zero function.
"""
from farpoint import GridFunction, NormOf, OneMinusNormPlus, SupNormOnK, build_ck_family, classify_membership

model = build_ck_family(10_000)
x = GridFunction.constant(2.0)

for f in (OneMinusNormPlus(), NormOf()):
    v = classify_membership(SupNormOnK(), model, f, x)
    print(f"{type(f).__name__:>18}: {v.kind}")
    if v.kind == "Attained":
        print(f"{'':>20}witness values {v.witness.values}, value {v.value}")
