"""Evaluate both sides of each inequality in the ratio-bound argument.

Every check produces an :class:`~plapratio.report.AuditEntry`.  Checks whose
hypotheses fail for the given (p, N) are still emitted, with
``preconditions_met=False``.

Computed eigenpairs get a 2% relative allowance on the right-hand side to
absorb discretization error; closed-form pairs (``Eigenpair.exact``) get none
beyond the 1e-6 relative tolerance.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import ProblemParams, constants_table, gamma_bound, ratio_bound
from .exceptions import NoBoundAvailableError
from .grid import Norm, shift_off_nodes, weighted_moment
from .report import (
    DISCRETIZATION_ALLOWANCE,
    AuditEntry,
    AuditReport,
    make_entry,
    skipped_entry,
)
from .solver_nd import Eigenpair, find_delta_star, split_ratios

__all__ = [
    "AuditEntry",
    "AuditReport",
    "allowance_for",
    "audit_hardy",
    "audit_moment",
    "audit_moment_origins",
    "random_origins",
    "audit_proof_chain",
]


def allowance_for(eig1: Eigenpair) -> float:
    return 0.0 if eig1.exact else DISCRETIZATION_ALLOWANCE


def audit_hardy(eig1: Eigenpair, p: float, origin=None, name="hardy") -> AuditEntry:
    """Weighted Hardy inequality int |phi/|x||^p <= (p/(N-p))^p lambda1 (needs N > p)."""
    dom = eig1.domain
    n = dom.n_dim
    if not n > p:
        return skipped_entry(name)
    origin = shift_off_nodes(dom, dom.center if origin is None else origin)
    lhs = weighted_moment(eig1.phi, p, origin, Norm.L2, -1)
    rhs = (p / (n - p)) ** p * eig1.eigenvalue
    return make_entry(name, lhs, rhs, allowance=allowance_for(eig1))


def audit_moment(eig1: Eigenpair, p: float, origin=None, name="moment") -> AuditEntry:
    """1 / int |x|^p phi^p <= (p/N)^p lambda1 (needs p >= 2)."""
    if p < 2.0:
        return skipped_entry(name)
    dom = eig1.domain
    origin = dom.center if origin is None else np.asarray(origin, dtype=float)
    moment = weighted_moment(eig1.phi, p, origin, Norm.L2, +1)
    rhs = (p / dom.n_dim) ** p * eig1.eigenvalue
    return make_entry(name, 1.0 / moment, rhs, allowance=allowance_for(eig1))


def random_origins(domain, count=3, seed=0):
    """``count`` points drawn uniformly inside the box (deterministic)."""
    rng = np.random.default_rng(seed)
    lo = np.array([e[0] for e in domain.extents])
    hi = np.array([e[1] for e in domain.extents])
    return [lo + (hi - lo) * rng.random(domain.n_dim) for _ in range(count)]


def audit_moment_origins(eig1: Eigenpair, p: float, count=3, seed=0):
    """The moment check at the domain center and at ``count`` random interior origins."""
    origins = [eig1.domain.center] + random_origins(eig1.domain, count, seed)
    return [audit_moment(eig1, p, o, name=f"moment_origin{i}") for i, o in enumerate(origins)]


def audit_proof_chain(eig1: Eigenpair, lambda2_val: float, p: float, one_sided: bool = False) -> AuditReport:
    """Audit every step from the split-ratio estimate down to the final bound.

    ``lambda2_val`` is either the exact second eigenvalue or, with
    ``one_sided=True``, an upper estimate of it; in the latter case failed
    entries that involve lambda2 are reported as inconclusive.
    """
    dom = eig1.domain
    n = dom.n_dim
    lam1 = eig1.eigenvalue
    params = ProblemParams(p, n)
    consts = constants_table(params)
    k_hat = consts.k_hat if p >= 2.0 else 1.0
    mp = consts.m_hat ** p
    gap = lambda2_val - k_hat * lam1
    allow = allowance_for(eig1)
    phi = eig1.phi

    deltas = np.array([find_delta_star(phi, p, j) for j in range(n)])
    singular_origin = shift_off_nodes(dom, deltas)

    entries = []

    def gap_entry(name, rhs):
        entries.append(make_entry(name, gap, rhs, allowance=allow, one_sided=one_sided))

    for j in range(n):
        fw, fr = split_ratios(phi, p, j, deltas[j])
        gap_entry(f"split_axis{j}", mp * max(fw, fr))

    moment_p = weighted_moment(phi, p, deltas, Norm.LP, +1)
    gap_entry("lp_moment", mp * n / moment_p)

    if p <= 2.0:
        inv_moment_p = weighted_moment(phi, p, singular_origin, Norm.LP, -1)
        moment_p_shift = weighted_moment(phi, p, singular_origin, Norm.LP, +1)
        mass = phi.integral_pow(p)
        entries.append(make_entry("cauchy_schwarz", mass * mass, moment_p_shift * inv_moment_p, allowance=allow))
    else:
        entries.append(skipped_entry("cauchy_schwarz"))

    if p <= 2.0 and n > p:
        inv_moment_2 = weighted_moment(phi, p, singular_origin, Norm.L2, -1)
        moment_p_shift = weighted_moment(phi, p, singular_origin, Norm.LP, +1)
        entries.append(make_entry("hardy_product", 1.0, moment_p_shift * inv_moment_2, allowance=allow))
        entries.append(
            make_entry("hardy_moment", 1.0, (p / (n - p)) ** p * lam1 * moment_p_shift, allowance=allow)
        )
    else:
        entries.append(skipped_entry("hardy_product"))
        entries.append(skipped_entry("hardy_moment"))

    if p >= 2.0:
        moment_2 = weighted_moment(phi, p, deltas, Norm.L2, +1)
        gap_entry("l2_moment", mp * n ** (p / 2.0) / moment_2)
    else:
        entries.append(skipped_entry("l2_moment"))

    entries.append(audit_hardy(eig1, p, singular_origin, name="hardy"))
    entries.append(audit_moment(eig1, p, deltas, name="moment"))

    # final bound, gap and ratio forms, per branch
    try:
        rb = ratio_bound(params)
    except NoBoundAvailableError:
        rb = None
    ratio = lambda2_val / lam1
    if rb is not None and rb.ratio_bound_eq7 is not None:
        entries.append(
            make_entry("gap_small_p", lambda2_val - lam1, (rb.ratio_bound_eq7 - 1.0) * lam1,
                       allowance=allow, one_sided=one_sided)
        )
        entries.append(make_entry("ratio_small_p", ratio, rb.ratio_bound_eq7, allowance=allow, one_sided=one_sided))
    else:
        entries.append(skipped_entry("gap_small_p"))
        entries.append(skipped_entry("ratio_small_p"))
    if p >= 2.0:
        gb = gamma_bound(params, lam1)
        entries.append(make_entry("gap_large_p", lambda2_val - consts.k_hat * lam1, gb.value,
                                  allowance=allow, one_sided=one_sided))
        entries.append(make_entry("ratio_large_p", ratio, rb.ratio_bound_eq9, allowance=allow, one_sided=one_sided))
    else:
        entries.append(skipped_entry("gap_large_p"))
        entries.append(skipped_entry("ratio_large_p"))

    instance = {
        "p": float(p),
        "n": n,
        "domain": dom.shape.value,
        "extents": [list(e) for e in dom.extents],
        "resolution": list(dom.resolution),
        "lambda1": lam1,
        "lambda2": lambda2_val,
        "lambda2_kind": "UPPER" if one_sided else "EXACT",
        "lambda1_kind": "EXACT" if eig1.exact else "COMPUTED",
        "m": consts.m,
        "m_hat": consts.m_hat,
        "k_hat": consts.k_hat,
        "m_max_profile": consts.m_max_profile,
        "delta_star": [float(d) for d in deltas],
        "gap": gap,
    }
    if not math.isfinite(gap):
        raise ValueError("lambda2 and lambda1 must be finite")
    return AuditReport(instance=instance, entries=entries)
