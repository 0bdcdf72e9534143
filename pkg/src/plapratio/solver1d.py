"""One-dimensional Dirichlet p-Laplacian spectrum by shooting.

The eigenproblem -(|u'|^{p-2} u')' = lam |u|^{p-2} u on (a, b) is written as
the first-order system

    u' = |v|^{q-2} v,    v' = -lam |u|^{p-2} u,    q = p/(p-1),

with v = |u'|^{p-2} u'.  It is integrated from (u, v)(a) = (0, slope) with
fixed-step RK4 and the eigenvalue is the lam for which the n-th zero of u
lands on b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .report import AuditEntry, make_entry
from .exceptions import (
    BracketNotFoundError,
    ConvergenceError,
    InvalidInputError,
    InvalidParameterError,
)

__all__ = [
    "Interval1D",
    "Mode1D",
    "pi_p",
    "closed_form_eigenvalue",
    "shoot_eigenvalue",
    "ratio_1d",
    "hardy_check_1d",
]

DEFAULT_STEPS = 4096
MAX_STEPS = 1 << 20
_MAX_BISECT = 200
_MAX_EXPAND = 40


@dataclass(frozen=True)
class Interval1D:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or not self.b > self.a:
            raise InvalidParameterError(f"need finite a < b, got ({self.a!r}, {self.b!r})")

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Mode1D:
    """A shooting eigenpair.

    ``u`` is sampled on ``x`` (``steps + 1`` points) and normalized so that
    the trapezoidal integral of |u|^p is 1.
    """

    n: int
    lam: float
    zeros: int
    x: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    steps: int = DEFAULT_STEPS


def pi_p(p: float) -> float:
    """Generalized circle constant 2*pi / (p * sin(pi/p))."""
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    return 2.0 * math.pi / (p * math.sin(math.pi / p))


def closed_form_eigenvalue(p: float, n: int = 1, length: float = 1.0) -> float:
    """(p - 1) * (n * pi_p / L)^p, used only as a cross-check."""
    return (p - 1.0) * (n * pi_p(p) / length) ** p


@numba.njit(cache=True)
def _phi(s, q):
    # |s|^{q-2} s, with value 0 at s = 0 for every q > 1
    if s == 0.0:
        return 0.0
    return math.copysign(abs(s) ** (q - 1.0), s)


@numba.njit(cache=True)
def _zero_count(lam, p, q, h, steps, slope):
    """Number of sign changes of u over the grid points x_1..x_N."""
    u = 0.0
    v = slope
    count = 0
    for _ in range(steps):
        k1u = _phi(v, q)
        k1v = -lam * _phi(u, p)
        k2u = _phi(v + 0.5 * h * k1v, q)
        k2v = -lam * _phi(u + 0.5 * h * k1u, p)
        k3u = _phi(v + 0.5 * h * k2v, q)
        k3v = -lam * _phi(u + 0.5 * h * k2u, p)
        k4u = _phi(v + h * k3v, q)
        k4v = -lam * _phi(u + h * k3u, p)
        un = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if un == 0.0 or (u != 0.0 and un * u < 0.0):
            count += 1
        u = un
    return count


@numba.njit(cache=True)
def _trajectory(lam, p, q, h, steps, slope):
    us = np.zeros(steps + 1)
    u = 0.0
    v = slope
    for i in range(steps):
        k1u = _phi(v, q)
        k1v = -lam * _phi(u, p)
        k2u = _phi(v + 0.5 * h * k1v, q)
        k2v = -lam * _phi(u + 0.5 * h * k1u, p)
        k3u = _phi(v + 0.5 * h * k2v, q)
        k3v = -lam * _phi(u + 0.5 * h * k2u, p)
        k4u = _phi(v + h * k3v, q)
        k4v = -lam * _phi(u + h * k3u, p)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        us[i + 1] = u
    return us


def _bisect(p, n, length, steps, tol, slope):
    q = p / (p - 1.0)
    h = length / steps
    guess = (n * math.pi / length) ** p * max(1.0, p - 1.0)
    lo, hi = 1e-3 * guess, 10.0 * guess

    def too_big(lam):
        return _zero_count(lam, p, q, h, steps, slope) >= n

    for _ in range(_MAX_EXPAND):
        lo_bad, hi_ok = too_big(lo), too_big(hi)
        if not lo_bad and hi_ok:
            break
        if lo_bad:
            lo /= 10.0
        if not hi_ok:
            hi *= 10.0
    else:
        raise BracketNotFoundError(f"no bracket for mode {n} at p={p} after {_MAX_EXPAND} expansions")

    for _ in range(_MAX_BISECT):
        if hi - lo <= tol * hi:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if too_big(mid):
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(f"bisection did not reach tol={tol} for mode {n} at p={p}", best=0.5 * (lo + hi))


def shoot_eigenvalue(
    interval: Interval1D,
    p: float,
    n: int = 1,
    tol: float = 1e-9,
    steps: int = DEFAULT_STEPS,
    slope: float = 1.0,
    max_steps: int = MAX_STEPS,
) -> Mode1D:
    """The n-th Dirichlet eigenvalue of the p-Laplacian on ``interval``.

    The step count starts at ``steps`` and doubles until two successive
    eigenvalues differ by less than ``tol`` relatively.
    """
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"mode index must be an integer >= 1, got {n!r}")
    if not tol > 0:
        raise InvalidParameterError(f"tol must be > 0, got {tol!r}")
    if steps < DEFAULT_STEPS:
        raise InvalidParameterError(f"at least {DEFAULT_STEPS} steps are required, got {steps}")
    if slope == 0.0:
        raise InvalidParameterError("initial slope must be nonzero")
    p, n, length = float(p), int(n), interval.length

    # bisection is tighter than the refinement test so it does not dominate
    lam = _bisect(p, n, length, steps, 0.1 * tol, slope)
    while True:
        if 2 * steps > max_steps:
            raise ConvergenceError(
                f"step doubling did not settle within {max_steps} steps (p={p}, n={n})", best=lam
            )
        steps *= 2
        new = _bisect(p, n, length, steps, 0.1 * tol, slope)
        settled = abs(new - lam) < tol * new
        lam = new
        if settled:
            break

    q = p / (p - 1.0)
    h = length / steps
    u = _trajectory(lam, p, q, h, steps, slope)
    x = interval.a + h * np.arange(steps + 1)
    interior = u[1:-1]
    zeros = int(np.count_nonzero(interior[1:] * interior[:-1] < 0) + np.count_nonzero(interior == 0.0))
    w = np.abs(u) ** p
    norm = (h * (w.sum() - 0.5 * (w[0] + w[-1]))) ** (1.0 / p)
    return Mode1D(n=n, lam=lam, zeros=zeros, x=x, u=u / norm, steps=steps)


def ratio_1d(p: float) -> float:
    """lambda2 / lambda1 on any interval: exactly 2^p."""
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    return 2.0 ** p


def hardy_check_1d(x, u, p: float, allowance: float = 0.0) -> AuditEntry:
    """Compare int |u/x|^p with (p/(p-1))^p int |u'|^p on (0, L).

    ``x`` must start at 0 and ``u`` must vanish at both ends.  Both integrals
    use the composite midpoint rule with a linear interpolant of ``u``.
    """
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if x.ndim != 1 or x.shape != u.shape or x.size < 3:
        raise InvalidInputError("x and u must be 1-D arrays of equal length >= 3")
    if np.any(np.diff(x) <= 0):
        raise InvalidInputError("x must be strictly increasing")
    if abs(x[0]) > 1e-14 * max(1.0, abs(x[-1])):
        raise InvalidInputError("the sampled interval must start at the origin")
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        raise InvalidInputError("field is identically zero")
    if abs(u[0]) > 1e-8 * scale or abs(u[-1]) > 1e-8 * scale:
        raise InvalidInputError("field must vanish at both endpoints")
    dx = np.diff(x)
    xm = 0.5 * (x[1:] + x[:-1])
    um = 0.5 * (u[1:] + u[:-1])
    du = np.diff(u) / dx
    lhs = float(np.sum(np.abs(um / xm) ** p * dx))
    rhs = float((p / (p - 1.0)) ** p * np.sum(np.abs(du) ** p * dx))
    return make_entry("hardy_1d", lhs, rhs, allowance=allowance)
