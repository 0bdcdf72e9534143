"""Dirichlet p-Laplacian eigenpairs and bounds on the ratio lambda2/lambda1."""

from .bounds import (
    BoundConstants,
    ProblemParams,
    RatioBound,
    Regime,
    compute_m,
    constants_table,
    large_p_check,
    gamma_bound,
    ratio_bound,
)
from .grid import MeshedDomain, Norm, ScalarField, box, interval, rayleigh, rayleigh_gradient, rectangle, weighted_moment
from .exceptions import (
    BracketNotFoundError,
    ConvergenceError,
    DegenerateSplitError,
    InternalSolverError,
    InvalidInputError,
    InvalidParameterError,
    NoBoundAvailableError,
)
from .report import AuditEntry, AuditReport
from .solver1d import (
    Interval1D,
    Mode1D,
    closed_form_eigenvalue,
    hardy_check_1d,
    pi_p,
    ratio_1d,
    shoot_eigenvalue,
)
from .solver_nd import (
    Eigenpair,
    exact_principal_p2,
    find_delta_star,
    lambda2_exact_p2,
    lambda2_upper_via_splitting,
    principal_eigenpair,
)
from .audit import audit_hardy, audit_moment, audit_proof_chain

__version__ = "0.1.0"

__all__ = [
    "BoundConstants",
    "ProblemParams",
    "RatioBound",
    "Regime",
    "compute_m",
    "constants_table",
    "large_p_check",
    "gamma_bound",
    "ratio_bound",
    "MeshedDomain",
    "Norm",
    "ScalarField",
    "box",
    "interval",
    "rayleigh",
    "rayleigh_gradient",
    "rectangle",
    "weighted_moment",
    "BracketNotFoundError",
    "ConvergenceError",
    "DegenerateSplitError",
    "InternalSolverError",
    "InvalidInputError",
    "InvalidParameterError",
    "NoBoundAvailableError",
    "AuditEntry",
    "AuditReport",
    "Interval1D",
    "Mode1D",
    "closed_form_eigenvalue",
    "hardy_check_1d",
    "pi_p",
    "ratio_1d",
    "shoot_eigenvalue",
    "Eigenpair",
    "exact_principal_p2",
    "find_delta_star",
    "lambda2_exact_p2",
    "lambda2_upper_via_splitting",
    "principal_eigenpair",
    "audit_hardy",
    "audit_moment",
    "audit_proof_chain",
]
