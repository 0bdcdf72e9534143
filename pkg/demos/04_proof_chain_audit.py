"""
Auditing each inequality on one instance
========================================

Every step from the split estimate down to the final bound is evaluated
on a computed eigenpair, with both sides and the slack reported.
"""

from plapratio import audit_proof_chain, lambda2_upper_via_splitting, principal_eigenpair
from plapratio.grid import rectangle

p = 3.0
dom = rectangle(n=96)
pair = principal_eigenpair(dom, p)
est = lambda2_upper_via_splitting(dom, p, pair)

# only an upper estimate of lambda2 is known here, so failures would read as inconclusive
report = audit_proof_chain(pair, est.value, p, one_sided=True)

for e in report.entries:
    if not e.preconditions_met:
        print(f"{e.name:>14}  (does not apply)")
        continue
    status = "ok" if e.satisfied else ("inconclusive" if e.inconclusive else "VIOLATED")
    print(f"{e.name:>14}  {e.lhs:14.6g} <= {e.rhs:14.6g}  slack {e.slack:12.5g}  {status}")

print("delta* per axis:", report.instance["delta_star"])
