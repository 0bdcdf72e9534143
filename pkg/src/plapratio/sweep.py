"""Single-instance runs and parameter sweeps over (p, domain)."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import ProblemParams, ratio_bound
from .exceptions import InvalidParameterError, NoBoundAvailableError
from .grid import MeshedDomain, box, interval, rectangle
from .report import DISCRETIZATION_ALLOWANCE
from .solver1d import Interval1D, shoot_eigenvalue
from .solver_nd import Eigenpair, lambda2_exact_p2, lambda2_upper_via_splitting, principal_eigenpair

__all__ = [
    "DOMAINS",
    "CSV_HEADER",
    "SweepRow",
    "make_domain",
    "second_eigenvalue",
    "run_instance",
    "run_sweep",
    "rows_to_csv",
]

DOMAINS = {
    "interval": (1, lambda n: interval(0.0, 1.0, n)),
    "square": (2, lambda n: rectangle(1.0, 1.0, n)),
    "rectangle": (2, lambda n: rectangle(2.0, 1.0, n)),
    "cube": (3, lambda n: box(1.0, 1.0, 1.0, n)),
}

CSV_HEADER = [
    "p", "n", "domain", "grid", "lambda1", "lambda2", "estimate_kind", "ratio",
    "bound_eq7", "bound_eq9", "best_bound", "satisfied", "inconclusive",
]


@dataclass(frozen=True)
class SweepRow:
    """One (p, domain) instance.

    ``best_bound`` is None when no branch of the bound applies; such rows
    are neither satisfied nor falsifying.
    """

    p: float
    n_dim: int
    domain: str
    grid: int
    lambda1: float
    lambda2: float
    estimate_kind: str
    ratio: float
    bound_eq7: float | None
    bound_eq9: float | None
    best_bound: float | None
    satisfied: bool
    inconclusive: bool

    @property
    def falsifying(self) -> bool:
        return self.estimate_kind == "EXACT" and self.best_bound is not None and not self.satisfied

    @property
    def applicable(self) -> bool:
        return self.best_bound is not None

    def csv_fields(self):
        return [
            _num(self.p), str(self.n_dim), self.domain, str(self.grid),
            _num(self.lambda1), _num(self.lambda2), self.estimate_kind, _num(self.ratio),
            _num(self.bound_eq7), _num(self.bound_eq9), _num(self.best_bound),
            _bool(self.satisfied), _bool(self.inconclusive),
        ]


def _num(x):
    return "" if x is None else f"{x:.12g}"


def _bool(b):
    return "true" if b else "false"


def make_domain(label: str, grid: int) -> MeshedDomain:
    try:
        _, factory = DOMAINS[label]
    except KeyError:
        raise InvalidParameterError(f"unknown domain {label!r}; choose from {sorted(DOMAINS)}") from None
    return factory(int(grid))


def second_eigenvalue(domain: MeshedDomain, p: float, eig1: Eigenpair, axis: int = 0, tol: float = 1e-9):
    """(lambda2, kind): exact where known, otherwise the split upper estimate.

    Exact cases are 1-D intervals (shooting) and p = 2 boxes (closed form).
    """
    if domain.n_dim == 1:
        (a, b), = domain.extents
        return shoot_eigenvalue(Interval1D(a, b), p, 2, tol=tol).lam, "EXACT"
    if p == 2.0:
        return lambda2_exact_p2(domain), "EXACT"
    return lambda2_upper_via_splitting(domain, p, eig1, axis).value, "UPPER"


def run_instance(label: str, p: float, grid: int = 128, tol: float = 1e-8, max_iter: int = 20000, axis: int = 0):
    """Solve one instance; returns ``(row, eigenpair)``."""
    p = float(p)
    n_dim, _ = DOMAINS.get(label, (None, None))
    domain = make_domain(label, grid)
    eig1 = principal_eigenpair(domain, p, tol=tol, max_iter=max_iter)
    lam2, kind = second_eigenvalue(domain, p, eig1, axis)
    ratio = lam2 / eig1.eigenvalue
    try:
        rb = ratio_bound(ProblemParams(p, n_dim))
        eq7, eq9, best = rb.ratio_bound_eq7, rb.ratio_bound_eq9, rb.best
    except NoBoundAvailableError:
        eq7 = eq9 = best = None
    satisfied = best is not None and ratio <= best * (1.0 + DISCRETIZATION_ALLOWANCE)
    inconclusive = kind == "UPPER" and best is not None and not satisfied
    row = SweepRow(p, n_dim, label, int(grid), eig1.eigenvalue, lam2, kind, ratio, eq7, eq9, best,
                   bool(satisfied), bool(inconclusive))
    return row, eig1


def _row_only(args):
    return run_instance(*args)[0]


def run_sweep(p_list, domains, grid=128, tol=1e-8, max_iter=20000, n_list=None, workers=1):
    """Rows for every (p, domain) pair, in (p, n, domain) order."""
    if not p_list:
        raise InvalidParameterError("p-list is empty")
    if not domains:
        raise InvalidParameterError("domain list is empty")
    for label in domains:
        make_domain(label, 3)
    for p in p_list:
        ProblemParams(p, 1)
    jobs = [
        (label, float(p), grid, tol, max_iter)
        for p in p_list
        for label in domains
        if n_list is None or DOMAINS[label][0] in n_list
    ]
    if not jobs:
        raise InvalidParameterError("no domain matches the requested dimensions")
    jobs = sorted(set(jobs), key=lambda j: (j[1], DOMAINS[j[0]][0], j[0]))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_only, jobs))
    else:
        rows = [_row_only(j) for j in jobs]
    return sorted(rows, key=lambda r: (r.p, r.n_dim, r.domain))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()

