"""
Principal eigenpair on the unit square
======================================

Compute lambda1 on a 128 x 128 grid for several p, then bound lambda2 from
above with the two-piece test function built from phi1.
"""

import math

from plapratio import ProblemParams, lambda2_upper_via_splitting, principal_eigenpair, ratio_bound
from plapratio.grid import rectangle

dom = rectangle(n=128)

for p in (1.5, 2.0, 3.0):
    pair = principal_eigenpair(dom, p)
    est = lambda2_upper_via_splitting(dom, p, pair)
    best = ratio_bound(ProblemParams(p, 2)).best
    print(f"p={p:3g}  lambda1={pair.eigenvalue:10.5f}  iterations={pair.iterations:3d}"
          f"  upper ratio={est.value / pair.eigenvalue:7.4f}  bound={best:9.4f}")

# p = 2 has closed forms: 2 pi^2 and 5 pi^2
print("2 pi^2 =", 2 * math.pi ** 2)
