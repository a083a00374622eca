"""
Uniformly small penalties can wipe out attainment
=================================================

On C = [0, 1], charge 1/k at the two endpoints and nothing inside.  The
distance to x wants an endpoint, which is now penalised, so no x attains -
yet f_k -> 0 uniformly and without a penalty every x attains.
"""
import numpy as np

from farpoint.scenarios import fk_supremum, run_fk_remark

for x in (-0.5, 0.5, 0.7, 1.8):
    print(f"x = {x:>4}:", "  ".join(
        f"k={k}: sup {s:.3f} {'attained' if a else 'not attained'}"
        for k in (1, 5, None) for s, a, _ in [fk_supremum(x, k)]))

rep = run_fk_remark((1, 2, 5), np.linspace(-1, 2, 101))
for a in rep.assertions:
    print(f"{'ok' if a.passed else 'FAIL'}  {a.description}: {a.observed}")
