"""Closed-form constants and eigenvalue-ratio bounds for the Dirichlet p-Laplacian.

Everything here is a pure function of ``(p, N)`` and, for the gap bound, of
``lambda1``.  Two regimes exist, ``1 < p <= 2`` and ``p >= 2``; they overlap
at ``p = 2`` where both ratio bounds are reported.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import InvalidParameterError, NoBoundAvailableError

__all__ = [
    "Regime",
    "ProblemParams",
    "BoundConstants",
    "RatioBound",
    "GapBound",
    "LargePCheck",
    "product_rule_profile",
    "max_profile_m",
    "compute_m",
    "constants_table",
    "ratio_bound",
    "gamma_bound",
    "large_p_check",
]

_GRID_POINTS = 1024
_X_TOL = 1e-10


class Regime(str, enum.Enum):
    P_LE_2_N1 = "P_LE_2_N1"
    P_LE_2_NGE2 = "P_LE_2_NGE2"
    P_GE_2_N1 = "P_GE_2_N1"
    P_GE_2_NGE2 = "P_GE_2_NGE2"


@dataclass(frozen=True)
class ProblemParams:
    """Exponent ``p > 1`` and spatial dimension ``n_dim >= 1``."""

    p: float
    n_dim: int

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p) or p <= 1.0:
            raise InvalidParameterError(f"p must be a finite real > 1, got {self.p!r}")
        if int(self.n_dim) != self.n_dim or self.n_dim < 1:
            raise InvalidParameterError(f"n_dim must be an integer >= 1, got {self.n_dim!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n_dim", int(self.n_dim))

    @property
    def p_conj(self) -> float:
        return self.p / (self.p - 1.0)


@dataclass(frozen=True)
class BoundConstants:
    m: float
    m_hat: float
    k_hat: float
    regime: Regime
    # Raw maximization value (max f)^(1/p); differs from ``m`` when p > 2.
    m_max_profile: float = field(default=float("nan"), compare=False)


@dataclass(frozen=True)
class RatioBound:
    gamma_bound: float
    ratio_bound_eq7: float | None
    ratio_bound_eq9: float | None
    best: float
    constants: BoundConstants


@dataclass(frozen=True)
class GapBound:
    """Bound on the gap; ``gap_kind`` says which gap it controls.

    ``"lambda2 - lambda1"`` for the ``p <= 2`` branch and
    ``"lambda2 - k_hat*lambda1"`` for ``p >= 2``.
    """

    value: float
    regime: Regime
    gap_kind: str
    k_hat: float


@dataclass(frozen=True)
class LargePCheck:
    lhs: float
    rhs: float
    satisfied: bool


def product_rule_profile(x, p):
    """f(x) = (p - x) x^(p-1) + (1 - x)^p on [0, 1]."""
    x = np.asarray(x, dtype=float)
    return (p - x) * x ** (p - 1.0) + (1.0 - x) ** p


def max_profile_m(p: float) -> float:
    """Return (max_{0<=x<=1} f(x))^(1/p) for any p > 1.

    A 1024-point grid brackets the maximizer (endpoints included as
    candidates) and golden-section search refines it to 1e-10 in x.
    """
    p = float(p)
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    xs = np.linspace(0.0, 1.0, _GRID_POINTS)
    fs = product_rule_profile(xs, p)
    i = int(np.argmax(fs))
    best = float(fs[i])
    if 0 < i < _GRID_POINTS - 1:
        res = minimize_scalar(
            lambda t: -float(product_rule_profile(t, p)),
            bracket=(xs[i - 1], xs[i], xs[i + 1]),
            method="golden",
            tol=_X_TOL,
        )
        best = max(best, -float(res.fun))
    return best ** (1.0 / p)


def compute_m(p: float) -> float:
    """The constant ``m`` for ``1 < p <= 2``.

    For ``p > 2`` the tabulated value ``p - 1`` is used instead (see
    :func:`constants_table`); :func:`max_profile_m` gives the raw maximization there.
    """
    p = float(p)
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    if p > 2.0:
        raise InvalidParameterError(
            f"compute_m is defined for 1 < p <= 2 only, got p={p!r}; "
            "use constants_table for p > 2"
        )
    return max_profile_m(p)


def constants_table(params: ProblemParams) -> BoundConstants:
    """Fill ``(m, m_hat, k_hat, regime)`` from the four-row table."""
    p, n = params.p, params.n_dim
    raw = max_profile_m(p)
    if p >= 2.0:
        m = p - 1.0
        k = p ** (2.0 - p) * (p - 1.0) ** (p - 1.0)
        if n == 1:
            return BoundConstants(m, m, k, Regime.P_GE_2_N1, raw)
        m_hat = 2.0 ** ((p - 2.0) / (2.0 * p)) * (p - 1.0)
        k_hat = 2.0 ** ((p - 2.0) / 2.0) * k
        return BoundConstants(m, m_hat, k_hat, Regime.P_GE_2_NGE2, raw)
    m = raw
    if n == 1:
        return BoundConstants(m, m, 1.0, Regime.P_LE_2_N1, raw)
    m_hat = 2.0 ** ((2.0 - p) / (2.0 * p)) * m
    return BoundConstants(m, m_hat, 1.0, Regime.P_LE_2_NGE2, raw)


def _small_p_factor(p, n, c):
    # m_hat^p * N * (p/(N-p))^p
    return c.m_hat ** p * n * (p / (n - p)) ** p


def _large_p_factor(p, n, c):
    # m_hat^p * N^(-p/2) * p^p
    return c.m_hat ** p * n ** (-p / 2.0) * p ** p


def ratio_bound(params: ProblemParams) -> RatioBound:
    """Upper bounds on lambda2/lambda1 from every applicable branch.

    The ``p <= 2`` branch needs ``N > p``; the ``p >= 2`` branch has no
    extra hypothesis.  ``best`` is the smaller of the populated branches.
    ``gamma_bound`` is the gap bound at ``lambda1 = 1`` (see :func:`gamma_bound`).
    """
    p, n = params.p, params.n_dim
    c = constants_table(params)
    eq7 = eq9 = None
    if p <= 2.0 and n > p:
        # k_hat = 1 on this branch; at p = 2 the table gives 1 as well.
        eq7 = 1.0 + _small_p_factor(p, n, c)
    if p >= 2.0:
        eq9 = c.k_hat + _large_p_factor(p, n, c)
    if eq7 is None and eq9 is None:
        raise NoBoundAvailableError(
            f"no bound for p={p}, N={n}: hypothesis N > p fails and p < 2",
            hypothesis="N > p",
        )
    best = min(b for b in (eq7, eq9) if b is not None)
    return RatioBound(gamma_bound(params, 1.0).value, eq7, eq9, best, c)


def gamma_bound(params: ProblemParams, lambda1: float) -> GapBound:
    """Bound on the spectral gap for a given principal eigenvalue.

    ``p >= 2`` uses the ``lambda2 - k_hat*lambda1`` form (including p = 2);
    ``p < 2`` with ``N > p`` uses the ``lambda2 - lambda1`` form.
    """
    if not lambda1 > 0:
        raise InvalidParameterError(f"lambda1 must be > 0, got {lambda1!r}")
    p, n = params.p, params.n_dim
    c = constants_table(params)
    if p >= 2.0:
        return GapBound(_large_p_factor(p, n, c) * lambda1, c.regime, "lambda2 - k_hat*lambda1", c.k_hat)
    if n > p:
        return GapBound(_small_p_factor(p, n, c) * lambda1, c.regime, "lambda2 - lambda1", 1.0)
    raise NoBoundAvailableError(
        f"no gap bound for p={p}, N={n}: hypothesis N > p fails and p < 2",
        hypothesis="N > p",
    )


def large_p_check(params: ProblemParams, ratio: float) -> LargePCheck:
    """Finite-p instance: (1/p) * ratio^(1/p) <= m_hat / sqrt(N).

    Meant for p >= 2.  Comparison uses a 1e-9 relative tolerance.
    """
    p, n = params.p, params.n_dim
    lhs = ratio ** (1.0 / p) / p
    rhs = constants_table(params).m_hat / math.sqrt(n)
    return LargePCheck(lhs, rhs, bool(lhs <= rhs * (1.0 + 1e-9)))
