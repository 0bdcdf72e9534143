"""Principal eigenpairs on grids and a two-piece upper estimate for lambda2."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .exceptions import (
    ConvergenceError,
    DegenerateSplitError,
    InternalSolverError,
    InvalidInputError,
    InvalidParameterError,
)
from .grid import MeshedDomain, ScalarField, p_laplacian, rayleigh, field_to_text, field_from_text

__all__ = [
    "Eigenpair",
    "SplitEstimate",
    "Endpoint",
    "principal_eigenpair",
    "exact_principal_p2",
    "lambda2_exact_p2",
    "split_ratios",
    "find_delta_star",
    "split_test_functions",
    "lambda2_upper_via_splitting",
    "eigenpair_to_text",
    "eigenpair_from_text",
]

_ARMIJO = 1e-4
_MIN_STEP = 2.0 ** -40
_WINDOW = 10
_REG_START = 1e-3
_REG_MIN = 1e-6
_REG_MAX = 1.0


@dataclass
class Eigenpair:
    """Principal eigenpair with ``phi > 0`` and nodal ``sum phi^p * vol = 1``.

    ``exact`` marks pairs sampled from a closed form rather than computed.
    """

    eigenvalue: float
    phi: ScalarField
    residual: float
    iterations: int
    p: float = 2.0
    exact: bool = False
    history: list = field(default_factory=list, repr=False)

    @property
    def domain(self) -> MeshedDomain:
        return self.phi.domain


class Endpoint(str, enum.Enum):
    OMEGA = "OMEGA"
    COMPLEMENT = "COMPLEMENT"


@dataclass(frozen=True)
class SplitEstimate:
    """Upper estimate of lambda2 from the family phi*(x_j - delta)*(a chi_w + b chi_rest).

    ``numerators``/``denominators`` hold the two pieces' energy and mass,
    so the mixed quotient (a t + b (1-t)) / (c t + d (1-t)) can be rebuilt.
    """

    value: float
    delta: float
    endpoint: Endpoint
    axis: int
    numerators: tuple
    denominators: tuple

    def mixed_quotient(self, t):
        (a, b), (c, d) = self.numerators, self.denominators
        t = np.asarray(t, dtype=float)
        return (a * t + b * (1.0 - t)) / (c * t + d * (1.0 - t))


def _difference_ops(domain: MeshedDomain):
    """Sparse maps from interior nodes to per-axis cell differences."""
    ops = []
    for k in range(domain.n_dim):
        factors = []
        for j, n in enumerate(domain.resolution):
            if j == k:
                h = domain.spacing[k]
                f = sp.diags([np.full(n, 1.0 / h), np.full(n, -1.0 / h)], [0, -1], shape=(n + 1, n))
            else:
                f = sp.eye(n + 1, n, k=-1)
            factors.append(f)
        op = factors[0]
        for f in factors[1:]:
            op = sp.kron(op, f)
        ops.append(op.tocsr())
    return ops


def _weighted_stiffness(ops, weights, vol):
    w = sp.diags(weights.ravel() * vol)
    return sum((d.T @ w @ d) for d in ops).tocsc()


def _cell_grad_sq(ops, u):
    return sum((d @ u) ** 2 for d in ops)


def _initial_guess(domain: MeshedDomain) -> np.ndarray:
    vals = np.ones(domain.resolution)
    for k, (lo, hi) in enumerate(domain.extents):
        shape = [1] * domain.n_dim
        shape[k] = -1
        vals = vals * np.sin(math.pi * (domain.axis_nodes(k) - lo) / (hi - lo)).reshape(shape)
    return vals


def principal_eigenpair(
    domain: MeshedDomain,
    p: float,
    tol: float = 1e-8,
    max_iter: int = 20000,
    initial: np.ndarray | None = None,
) -> Eigenpair:
    """Minimize the discrete Rayleigh quotient over positive fields.

    Each step moves along the gradient preconditioned by the weighted
    stiffness matrix with cell weights |grad u|^{p-2} (regularized), so at
    p = 2 a unit step is one inverse-iteration step.  Steps are chosen by
    Armijo backtracking halving from 1, and the iterate is rescaled to
    unit p-mass after every step.  The loop stops once the quotient moves
    by less than ``tol`` (relative) over 10 iterations.
    """
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    if not tol > 0:
        raise InvalidParameterError(f"tol must be > 0, got {tol!r}")
    if any(n < 3 for n in domain.resolution):
        raise InvalidParameterError("the solver needs at least 3 interior nodes per axis")

    vol = domain.volume
    ops = _difference_ops(domain)
    shape = domain.resolution

    def normalize(v):
        return v / (np.sum(np.abs(v) ** p) * vol) ** (1.0 / p)

    def quotient(v):
        return float(np.sum(_cell_grad_sq(ops, v) ** (0.5 * p)) * vol / (np.sum(np.abs(v) ** p) * vol))

    u = normalize((_initial_guess(domain) if initial is None else np.asarray(initial, float)).ravel())
    r = quotient(u)
    history = [r]
    converged = False
    reg = _REG_START
    it = 0
    for it in range(1, max_iter + 1):
        fld = ScalarField(domain, u.reshape(shape))
        resid = p_laplacian(fld, p).ravel() - r * vol * np.sign(u) * np.abs(u) ** (p - 1.0)
        grad = p * resid  # gradient of the quotient at unit p-mass
        g2 = _cell_grad_sq(ops, u)
        scale2 = float(np.mean(g2))

        while True:
            if p == 2.0:
                weights = np.ones_like(g2)
            elif reg is None:
                weights = None
            else:
                weights = (g2 + reg * reg * scale2) ** (0.5 * p - 1.0)
            if weights is None:
                direction = -grad
            else:
                direction = -splu(_weighted_stiffness(ops, weights, vol)).solve(resid)
            slope = float(grad @ direction)
            step = _armijo(quotient, u, r, direction, slope) if slope < 0 else None
            if step is not None or reg is None or p == 2.0:
                break
            # stiffen the metric, then fall back to plain steepest descent
            reg = reg * 10.0 if reg < _REG_MAX else None
        if step is None:
            # no decrease available at working precision
            converged = True
            break
        if reg is not None:
            reg = max(reg * 0.5, _REG_MIN) if step == 1.0 else min(reg * 10.0, _REG_MAX)
        else:
            reg = _REG_MAX
        trial = u + step * direction
        r = quotient(trial)
        u = normalize(trial)
        history.append(r)
        if len(history) > _WINDOW and abs(history[-1 - _WINDOW] - r) < tol * r:
            converged = True
            break

    phi = ScalarField(domain, u.reshape(shape))
    residual = float(np.linalg.norm(_rayleigh_grad_flat(phi, p, r, vol)))
    pair = Eigenpair(r, phi, residual, it, p=float(p), history=history)
    if not converged:
        raise ConvergenceError(f"no convergence in {max_iter} iterations (p={p})", best=pair)
    if np.any(phi.values <= 0.0):
        raise InternalSolverError("principal eigenfunction has non-positive nodes")
    return pair


def _armijo(quotient, u, r, direction, slope):
    """Largest step 2^-k <= 1 with sufficient decrease, or None."""
    step = 1.0
    while step >= _MIN_STEP:
        if quotient(u + step * direction) <= r + _ARMIJO * step * slope:
            return step
        step *= 0.5
    return None


def _rayleigh_grad_flat(phi, p, r, vol):
    u = phi.values.ravel()
    return p * (p_laplacian(phi, p).ravel() - r * vol * np.sign(u) * np.abs(u) ** (p - 1.0))


def exact_principal_p2(domain: MeshedDomain) -> Eigenpair:
    """Separable p = 2 principal pair: product of half-period sines, sum of (pi/L_i)^2."""
    phi = ScalarField(domain, _initial_guess(domain)).normalized(2.0)
    lam = sum((math.pi / length) ** 2 for length in domain.lengths)
    return Eigenpair(lam, phi, 0.0, 0, p=2.0, exact=True)


def lambda2_exact_p2(domain: MeshedDomain) -> float:
    """Second Dirichlet Laplacian eigenvalue of the box (continuum value).

    The lowest non-ground mode raises a single index from 1 to 2, along the
    longest side.
    """
    base = sum((math.pi / length) ** 2 for length in domain.lengths)
    return base + 3.0 * (math.pi / max(domain.lengths)) ** 2


def split_ratios(phi: ScalarField, p: float, axis: int, delta: float):
    """(F_w, F_rest) with F = sum phi^p / sum phi^p |x_j - delta|^p per region.

    A region with no nodes gives +inf.
    """
    dom = phi.domain
    xj = dom.axis_nodes(axis)
    w = np.abs(phi.values) ** p
    other = tuple(k for k in range(dom.n_dim) if k != axis)
    mass = w.sum(axis=other) if other else w
    dist = np.abs(xj - delta) ** p
    left = xj < delta
    out = []
    for sel in (left, ~left):
        den = float(np.sum(mass[sel] * dist[sel]))
        num = float(np.sum(mass[sel]))
        out.append(num / den if den > 0 else math.inf)
    return tuple(out)


def find_delta_star(phi: ScalarField, p: float, axis: int = 0, xtol: float = 1e-12) -> float:
    """Split coordinate where both region ratios agree, by bisection."""
    dom = phi.domain
    if not 0 <= axis < dom.n_dim:
        raise InvalidParameterError(f"axis {axis} out of range for {dom.n_dim}-D domain")
    xs = dom.axis_nodes(axis)
    h = dom.spacing[axis]

    def balance(d):
        fw, fr = split_ratios(phi, p, axis, d)
        return fw - fr

    lo, hi = xs[0] + 0.5 * h, xs[-1] - 0.5 * h
    if not (balance(lo) > 0 and balance(hi) < 0):
        raise DegenerateSplitError(f"balance function has no sign change along axis {axis}")
    length = dom.lengths[axis]
    while hi - lo > xtol * length:
        mid = 0.5 * (lo + hi)
        b = balance(mid)
        if b == 0:
            return float(mid)
        if b > 0:
            lo = mid
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def split_test_functions(phi: ScalarField, axis: int, delta: float):
    """The two pieces phi*(x_j - delta) restricted to {x_j < delta} and its complement."""
    dom = phi.domain
    shape = [1] * dom.n_dim
    shape[axis] = -1
    xj = dom.axis_nodes(axis).reshape(shape)
    g = phi.values * (xj - delta)
    left = np.broadcast_to(xj < delta, dom.resolution)
    return ScalarField(dom, np.where(left, g, 0.0)), ScalarField(dom, np.where(left, 0.0, g))


def lambda2_upper_via_splitting(domain: MeshedDomain, p: float, eig1: Eigenpair, axis: int = 0) -> SplitEstimate:
    """Larger of the two endpoint Rayleigh quotients of the genus-2 family."""
    if eig1.domain != domain:
        raise InvalidInputError("eigenpair was computed on a different domain")
    delta = find_delta_star(eig1.phi, p, axis)
    pieces = split_test_functions(eig1.phi, axis, delta)
    nums, dens = [], []
    for piece in pieces:
        dens.append(piece.integral_pow(p))
        nums.append(rayleigh(piece, p) * dens[-1])
    quotients = [n / d for n, d in zip(nums, dens)]
    i = int(np.argmax(quotients))
    return SplitEstimate(
        value=quotients[i],
        delta=delta,
        endpoint=(Endpoint.OMEGA, Endpoint.COMPLEMENT)[i],
        axis=axis,
        numerators=tuple(nums),
        denominators=tuple(dens),
    )


def eigenpair_to_text(pair: Eigenpair) -> str:
    """Metadata line followed by the field snapshot."""
    meta = (
        f"p={pair.p!r} lambda={pair.eigenvalue!r} "
        f"residual={pair.residual!r} iterations={pair.iterations}"
    )
    return meta + "\n" + field_to_text(pair.phi)


def eigenpair_from_text(text: str) -> Eigenpair:
    first, _, rest = text.partition("\n")
    try:
        meta = dict(item.split("=", 1) for item in first.split())
        return Eigenpair(
            eigenvalue=float(meta["lambda"]),
            phi=field_from_text(rest),
            residual=float(meta["residual"]),
            iterations=int(meta["iterations"]),
            p=float(meta["p"]),
        )
    except (KeyError, ValueError) as exc:
        raise InvalidInputError(f"bad eigenpair header: {first!r}") from exc
