"""
Constants and ratio bounds across exponents
===========================================

Print the product-rule constants and the resulting upper bounds on
lambda2 / lambda1 for a few exponents and dimensions.
"""

from plapratio import NoBoundAvailableError, ProblemParams, constants_table, ratio_bound

# the rows with p < 2 and N <= p have no bound at all
print(f"{'p':>5} {'N':>2} {'m_hat':>10} {'k_hat':>10} {'best':>14}")
for p in (1.5, 2.0, 2.5, 3.0, 5.0):
    for n in (1, 2, 3):
        params = ProblemParams(p, n)
        c = constants_table(params)
        try:
            best = f"{ratio_bound(params).best:14.6g}"
        except NoBoundAvailableError:
            best = f"{'-':>14}"
        print(f"{p:5g} {n:2d} {c.m_hat:10.6g} {c.k_hat:10.6g} {best}")

# at p = 2 both branches apply; in 1-D the bound is 5 while the true ratio is 4
rb = ratio_bound(ProblemParams(2.0, 1))
print("\np = 2, N = 1:", rb.best)
