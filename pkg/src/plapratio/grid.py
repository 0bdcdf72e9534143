"""Box-shaped grids in N <= 3 dimensions and the discrete Rayleigh quotient.

Nodes sit at ``low + h * (i + 1)`` for ``i = 0 .. n-1`` along each axis, with
``h = (high - low) / (n + 1)``.  Boundary nodes are implicit zeros.

The gradient lives on cells: for every multi-index in ``0 .. n`` per axis the
forward difference ``(U[i + e_k] - U[i]) / h_k`` along each axis k is taken
over the zero-padded array.  The numerator of the quotient sums
``|grad|_2^p * cell volume`` over those cells, the denominator sums
``|u|^p * node volume`` over interior nodes.  At p = 2 this is the usual
(2N+1)-point stencil energy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, InvalidParameterError

__all__ = [
    "Shape",
    "Norm",
    "MeshedDomain",
    "ScalarField",
    "interval",
    "rectangle",
    "box",
    "rayleigh",
    "rayleigh_gradient",
    "p_laplacian",
    "weighted_moment",
    "point_norm",
    "origin_on_node",
    "shift_off_nodes",
    "field_to_text",
    "field_from_text",
    "save_field",
    "load_field",
]

_SKIP_GRAD = 1e-12


class Shape(str, enum.Enum):
    INTERVAL = "INTERVAL"
    RECTANGLE = "RECTANGLE"
    BOX = "BOX"


class Norm(str, enum.Enum):
    L2 = "L2"
    LP = "LP"


_SHAPES = {1: Shape.INTERVAL, 2: Shape.RECTANGLE, 3: Shape.BOX}


@dataclass(frozen=True)
class MeshedDomain:
    extents: tuple
    resolution: tuple

    def __post_init__(self):
        ext = tuple((float(lo), float(hi)) for lo, hi in self.extents)
        res = tuple(int(r) for r in self.resolution)
        if len(ext) not in _SHAPES:
            raise InvalidParameterError(f"only 1, 2 or 3 dimensions are supported, got {len(ext)}")
        if len(res) != len(ext):
            raise InvalidParameterError("extents and resolution must have the same length")
        for lo, hi in ext:
            if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
                raise InvalidParameterError(f"degenerate extent ({lo}, {hi})")
        if any(r < 1 for r in res):
            raise InvalidParameterError(f"need at least 1 interior node per axis, got {res}")
        object.__setattr__(self, "extents", ext)
        object.__setattr__(self, "resolution", res)

    @property
    def n_dim(self) -> int:
        return len(self.extents)

    @property
    def shape(self) -> Shape:
        return _SHAPES[self.n_dim]

    @property
    def spacing(self) -> tuple:
        return tuple((hi - lo) / (n + 1) for (lo, hi), n in zip(self.extents, self.resolution))

    @property
    def lengths(self) -> tuple:
        return tuple(hi - lo for lo, hi in self.extents)

    @property
    def center(self) -> np.ndarray:
        return np.array([0.5 * (lo + hi) for lo, hi in self.extents])

    @property
    def volume(self) -> float:
        """Volume of one node/cell."""
        return float(np.prod(self.spacing))

    def axis_nodes(self, k: int) -> np.ndarray:
        lo, _ = self.extents[k]
        return lo + self.spacing[k] * np.arange(1, self.resolution[k] + 1)

    def coordinates(self):
        """Per-axis coordinate arrays broadcastable against a field."""
        return np.meshgrid(*[self.axis_nodes(k) for k in range(self.n_dim)], indexing="ij", sparse=True)

    def sample(self, func) -> "ScalarField":
        """Field with values ``func(x_0, ..., x_{N-1})`` at interior nodes."""
        vals = np.broadcast_to(func(*self.coordinates()), self.resolution)
        return ScalarField(self, vals)


def interval(a=0.0, b=1.0, n=128) -> MeshedDomain:
    return MeshedDomain(((a, b),), (n,))


def rectangle(lx=1.0, ly=1.0, n=128, origin=(0.0, 0.0)) -> MeshedDomain:
    nx, ny = (n, n) if np.isscalar(n) else n
    x0, y0 = origin
    return MeshedDomain(((x0, x0 + lx), (y0, y0 + ly)), (nx, ny))


def box(lx=1.0, ly=1.0, lz=1.0, n=32, origin=(0.0, 0.0, 0.0)) -> MeshedDomain:
    ns = (n, n, n) if np.isscalar(n) else n
    return MeshedDomain(tuple((o, o + l) for o, l in zip(origin, (lx, ly, lz))), ns)


class ScalarField:
    """Nodal values on the interior of a :class:`MeshedDomain` (read-only)."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: MeshedDomain, values):
        vals = np.array(values, dtype=float)
        if vals.shape != domain.resolution:
            raise InvalidInputError(f"values of shape {vals.shape} do not match resolution {domain.resolution}")
        if not np.all(np.isfinite(vals)):
            raise InvalidInputError("field values must be finite")
        vals.setflags(write=False)
        self.domain = domain
        self.values = vals

    def __repr__(self):
        return f"ScalarField({self.domain.shape.value}, resolution={self.domain.resolution})"

    def with_values(self, values) -> "ScalarField":
        return ScalarField(self.domain, values)

    def __mul__(self, c):
        return ScalarField(self.domain, self.values * c)

    __rmul__ = __mul__

    def integral_pow(self, p: float) -> float:
        """Nodal quadrature of |u|^p."""
        return float(np.sum(np.abs(self.values) ** p) * self.domain.volume)

    def normalized(self, p: float) -> "ScalarField":
        """Copy rescaled so that the nodal integral of |u|^p is 1."""
        s = self.integral_pow(p)
        if s == 0.0:
            raise InvalidInputError("cannot normalize an identically zero field")
        return ScalarField(self.domain, self.values / s ** (1.0 / p))


def _cell_differences(values, spacing):
    padded = np.pad(values, 1)
    cells = tuple(slice(0, n + 1) for n in values.shape)
    base = padded[cells]
    diffs = []
    for k, h in enumerate(spacing):
        shifted = tuple(slice(1, n + 2) if j == k else slice(0, n + 1) for j, n in enumerate(values.shape))
        diffs.append((padded[shifted] - base) / h)
    return diffs


def _energy(values, spacing, p):
    diffs = _cell_differences(values, spacing)
    g2 = sum(d * d for d in diffs)
    return float(np.sum(g2 ** (0.5 * p)) * np.prod(spacing)), diffs, g2


def _denominator(values, spacing, p):
    return float(np.sum(np.abs(values) ** p) * np.prod(spacing))


def rayleigh(field: ScalarField, p: float) -> float:
    """Discrete Rayleigh quotient  sum |grad u|^p / sum |u|^p."""
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    h = field.domain.spacing
    den = _denominator(field.values, h, p)
    if den == 0.0:
        raise InvalidInputError("Rayleigh quotient of the zero field is undefined")
    num, _, _ = _energy(field.values, h, p)
    return num / den


def _flux_divergence(values, spacing, p, weights_from):
    """Adjoint of the cell difference map applied to weighted fluxes."""
    diffs = _cell_differences(values, spacing)
    g2 = sum(d * d for d in diffs)
    w = weights_from(g2)
    out = np.zeros(tuple(n + 2 for n in values.shape))
    cells = tuple(slice(0, n + 1) for n in values.shape)
    for k, (d, h) in enumerate(zip(diffs, spacing)):
        flux = w * d / h
        shifted = tuple(slice(1, n + 2) if j == k else slice(0, n + 1) for j, n in enumerate(values.shape))
        out[shifted] += flux
        out[cells] -= flux
    interior = tuple(slice(1, n + 1) for n in values.shape)
    return out[interior]


def _p_weights(p):
    def weights(g2):
        if p == 2.0:
            return np.ones_like(g2)
        w = np.zeros_like(g2)
        mask = g2 > _SKIP_GRAD ** 2
        w[mask] = g2[mask] ** (0.5 * p - 1.0)
        return w

    return weights


def p_laplacian(field: ScalarField, p: float) -> np.ndarray:
    """Discrete -div(|grad u|^{p-2} grad u), scaled by the cell volume.

    Equals (1/p) times the nodal gradient of the energy sum.  Cells with
    |grad u| below 1e-12 contribute nothing (degenerate / singular cases).
    """
    h = field.domain.spacing
    return _flux_divergence(field.values, h, p, _p_weights(p)) * np.prod(h)


def rayleigh_gradient(field: ScalarField, p: float) -> ScalarField:
    """Nodal gradient of :func:`rayleigh` with respect to the field values."""
    if not p > 1.0:
        raise InvalidParameterError(f"p must be > 1, got {p!r}")
    u = field.values
    h = field.domain.spacing
    den = _denominator(u, h, p)
    if den == 0.0:
        raise InvalidInputError("Rayleigh quotient of the zero field is undefined")
    num, _, _ = _energy(u, h, p)
    r = num / den
    d_num = p * p_laplacian(field, p)
    d_den = p * np.sign(u) * np.abs(u) ** (p - 1.0) * np.prod(h)
    return ScalarField(field.domain, (d_num - r * d_den) / den)


def point_norm(x, p: float, norm: Norm, axis=-1):
    """Euclidean or l_p norm of points along ``axis``."""
    x = np.abs(np.asarray(x, dtype=float))
    if Norm(norm) is Norm.L2:
        return np.sqrt(np.sum(x * x, axis=axis))
    return np.sum(x ** p, axis=axis) ** (1.0 / p)


def origin_on_node(domain: MeshedDomain, origin, rtol=1e-9) -> bool:
    """True when ``origin`` coincides with an interior node."""
    origin = np.asarray(origin, dtype=float)
    for k in range(domain.n_dim):
        lo, _ = domain.extents[k]
        h = domain.spacing[k]
        t = (origin[k] - lo) / h
        i = round(t)
        if abs(t - i) > rtol or not 1 <= i <= domain.resolution[k]:
            return False
    return True


def shift_off_nodes(domain: MeshedDomain, origin) -> np.ndarray:
    """Move ``origin`` by h/2 along each axis where it sits on a node plane."""
    origin = np.array(origin, dtype=float)
    if not origin_on_node(domain, origin):
        return origin
    for k in range(domain.n_dim):
        lo, _ = domain.extents[k]
        h = domain.spacing[k]
        t = (origin[k] - lo) / h
        if abs(t - round(t)) <= 1e-9:
            origin[k] += 0.5 * h
    return origin


def weighted_moment(field: ScalarField, p: float, origin, norm=Norm.L2, sign=+1) -> float:
    """Nodal quadrature of |u|^p * ||x - origin||^(sign * p).

    ``sign`` is +1 for the growing weight and -1 for the singular one; the
    singular weight requires ``origin`` off the nodes.
    """
    dom = field.domain
    origin = np.asarray(origin, dtype=float).reshape(-1)
    if origin.size != dom.n_dim:
        raise InvalidInputError(f"origin must have {dom.n_dim} coordinates")
    if sign not in (1, -1):
        raise InvalidParameterError("sign must be +1 or -1")
    if sign < 0 and origin_on_node(dom, origin):
        raise InvalidInputError("singular weight with origin on a grid node")
    offsets = [c - o for c, o in zip(dom.coordinates(), origin)]
    rel = np.stack(np.broadcast_arrays(*offsets), axis=-1)
    r = point_norm(rel, p, norm)
    return float(np.sum(np.abs(field.values) ** p * r ** (sign * p)) * dom.volume)


def field_to_text(field: ScalarField) -> str:
    """One header line, then one value per line in row-major order."""
    dom = field.domain
    ext = ",".join(f"{lo!r}:{hi!r}" for lo, hi in dom.extents)
    res = ",".join(str(n) for n in dom.resolution)
    lines = [f"{dom.shape.value} {ext} {res}"]
    lines.extend(f"{v:.17g}" for v in field.values.ravel(order="C"))
    return "\n".join(lines) + "\n"


def field_from_text(text: str) -> ScalarField:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInputError("empty field snapshot")
    try:
        shape, ext, res = lines[0].split()
        extents = tuple(tuple(float(v) for v in pair.split(":")) for pair in ext.split(","))
        resolution = tuple(int(v) for v in res.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"bad snapshot header: {lines[0]!r}") from exc
    dom = MeshedDomain(extents, resolution)
    if dom.shape.value != shape:
        raise InvalidInputError(f"header shape {shape} does not match {len(extents)} extents")
    values = np.array([float(v) for v in lines[1:]])
    if values.size != math.prod(resolution):
        raise InvalidInputError(f"expected {math.prod(resolution)} values, got {values.size}")
    return ScalarField(dom, values.reshape(resolution))


def save_field(field: ScalarField, path) -> None:
    with open(path, "w") as fh:
        fh.write(field_to_text(field))


def load_field(path) -> ScalarField:
    with open(path) as fh:
        return field_from_text(fh.read())
