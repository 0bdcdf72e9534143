"""
The one-dimensional spectrum by shooting
========================================

On an interval the p-Laplacian eigenvalues follow from a shooting method.
The first two satisfy lambda2 / lambda1 = 2^p for every p.
"""

import numpy as np

from plapratio import Interval1D, closed_form_eigenvalue, hardy_check_1d, shoot_eigenvalue

unit = Interval1D(0.0, 1.0)

for p in (1.2, 1.5, 2.0, 3.0, 5.0):
    m1 = shoot_eigenvalue(unit, p, 1)
    m2 = shoot_eigenvalue(unit, p, 2)
    print(f"p={p:4g}  lambda1={m1.lam:12.6f}  closed form={closed_form_eigenvalue(p):12.6f}"
          f"  ratio={m2.lam / m1.lam:10.6f}  2^p={2 ** p:10.6f}")

# higher modes pick up one interior zero each
for n in range(1, 5):
    mode = shoot_eigenvalue(unit, 3.0, n)
    print(f"mode {n}: {mode.zeros} interior zeros")

# the principal mode also satisfies the 1-D Hardy inequality with room to spare
mode = shoot_eigenvalue(unit, 3.0, 1)
entry = hardy_check_1d(mode.x, mode.u, 3.0)
print(f"Hardy: {entry.lhs:.4f} <= {entry.rhs:.4f}")
print("max |u| of the normalized mode:", np.max(np.abs(mode.u)))
