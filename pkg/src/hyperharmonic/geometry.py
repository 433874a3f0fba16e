"""Upper-half-space models of hyperbolic space and the discrete tension field.

The source space is the set {x in R^m : x^m > 0} with metric
(dx^1^2 + ... + dx^m^2) / (x^m)^2, and likewise the target with y^n.
Maps are sampled on tensor-product slab grids; all differential
operators use second-order central differences with a one-node margin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _stencils
from .errors import GridError, PositivityError
from .validation import (check_array_finite, check_int, check_point,
                         check_same_dim, check_scalar)

POSITIVITY_FLOOR = 1e-12


@dataclass(frozen=True)
class ModelDims:
    """Source and target dimensions (both at least 2)."""

    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "m", check_int(self.m, "m", min_value=2))
        object.__setattr__(self, "n", check_int(self.n, "n", min_value=2))


@dataclass(frozen=True)
class HalfSpacePoint:
    """A point of a half-space model; the last coordinate is the height."""

    coords: tuple

    def __init__(self, coords):
        arr = check_point(coords)
        object.__setattr__(self, "coords", tuple(arr))

    @property
    def array(self):
        return np.asarray(self.coords, dtype=float)

    @property
    def dim(self):
        return len(self.coords)

    @property
    def height(self):
        return self.coords[-1]


def hyperbolic_distance(p, q):
    """Distance between two points of the same half-space model.

    Uses the closed form arccosh(1 + |p-q|^2 / (2 p_h q_h)), evaluated
    through log1p so that nearby points keep full relative accuracy.
    """
    pa = p.array if isinstance(p, HalfSpacePoint) else check_point(p, name="p")
    qa = q.array if isinstance(q, HalfSpacePoint) else check_point(q, name="q")
    check_same_dim(pa, qa)
    t = np.dot(pa - qa, pa - qa) / (2.0 * pa[-1] * qa[-1])
    return float(np.log1p(t + np.sqrt(t * (t + 2.0))))


def distance_field(u_values, v_values):
    """Pointwise target-space distance between two stacked map samples.

    Both arrays have component axis last; the last component is the
    target height and must be positive.
    """
    u = np.asarray(u_values, dtype=float)
    v = np.asarray(v_values, dtype=float)
    if u.shape != v.shape:
        raise GridError(f"field shapes differ: {u.shape} vs {v.shape}")
    t = ((u - v) ** 2).sum(axis=-1) / (2.0 * u[..., -1] * v[..., -1])
    return np.log1p(t + np.sqrt(t * (t + 2.0)))


@dataclass(frozen=True)
class SlabGrid:
    """Tensor-product grid on [-X, X]^(m-1) x [floor, ceiling].

    The last axis is the height axis.  Node coordinates are exactly the
    entries of :attr:`axes`, so they are reproducible from indices.
    """

    dims: ModelDims
    lateral_extent: float
    floor: float
    ceiling: float
    counts: tuple

    def __post_init__(self):
        check_scalar(self.lateral_extent, "lateral_extent", min_value=0.0, include_min=False)
        floor = check_scalar(self.floor, "floor", min_value=0.0, include_min=False)
        ceiling = check_scalar(self.ceiling, "ceiling", min_value=floor, include_min=False)
        counts = tuple(check_int(c, "counts", min_value=2) for c in self.counts)
        if len(counts) != self.dims.m:
            raise GridError(f"need {self.dims.m} axis counts, got {len(counts)}")
        object.__setattr__(self, "floor", floor)
        object.__setattr__(self, "ceiling", ceiling)
        object.__setattr__(self, "counts", counts)

    @property
    def shape(self):
        return self.counts

    @property
    def m(self):
        return self.dims.m

    @property
    def n(self):
        return self.dims.n

    @cached_property
    def axes(self):
        lat = [np.linspace(-self.lateral_extent, self.lateral_extent, c)
               for c in self.counts[:-1]]
        return lat + [np.linspace(self.floor, self.ceiling, self.counts[-1])]

    @cached_property
    def spacings(self):
        out = [2.0 * self.lateral_extent / (c - 1) for c in self.counts[:-1]]
        out.append((self.ceiling - self.floor) / (self.counts[-1] - 1))
        return tuple(out)

    @property
    def heights(self):
        return self.axes[-1]

    def heights_broadcast(self, margin=0):
        """Height of every node, shaped for broadcasting over the grid core."""
        h = self.heights if margin == 0 else self.heights[margin:-margin]
        return h.reshape((1,) * (self.m - 1) + (-1,))

    def node_coords(self, index):
        return np.array([ax[i] for ax, i in zip(self.axes, index)])

    def meshgrid(self):
        return np.meshgrid(*self.axes, indexing="ij", sparse=True)

    def boundary_mask(self):
        mask = np.zeros(self.shape, dtype=bool)
        for ax in range(self.m):
            sl0 = [slice(None)] * self.m
            sl0[ax] = 0
            mask[tuple(sl0)] = True
            sl0[ax] = -1
            mask[tuple(sl0)] = True
        return mask

    def interior_shape(self, margin=1):
        return tuple(c - 2 * margin for c in self.counts)

    def require_stencil(self, margin=1):
        if min(self.counts) < 2 * margin + 1:
            raise GridError(
                f"grid {self.counts} too small for a stencil with margin {margin}")

    def with_floor(self, new_floor):
        """Same lateral layout and node counts over [new_floor, ceiling]."""
        return SlabGrid(self.dims, self.lateral_extent, new_floor,
                        self.ceiling, self.counts)

    def refined(self):
        """Node-nested refinement: every spacing halves."""
        return SlabGrid(self.dims, self.lateral_extent, self.floor,
                        self.ceiling, tuple(2 * c - 1 for c in self.counts))

    def cache_key(self):
        return (self.dims.m, self.dims.n, self.lateral_extent, self.floor,
                self.ceiling, self.counts)


@dataclass
class MapField:
    """A grid-sampled map into the target half-space.

    ``values`` has shape ``grid.shape + (n,)``; the last component is
    the target height and must stay strictly positive everywhere.
    """

    grid: SlabGrid
    values: np.ndarray

    def __post_init__(self):
        vals = check_array_finite(self.values, "values")
        expected = self.grid.shape + (self.grid.n,)
        if vals.shape != expected:
            raise GridError(f"values shape {vals.shape}, expected {expected}")
        hmin = vals[..., -1].min()
        if hmin <= 0.0:
            idx = np.unravel_index(np.argmin(vals[..., -1]), self.grid.shape)
            raise PositivityError(
                f"target height {hmin} <= 0 at node {idx}")
        self.values = vals

    @property
    def n(self):
        return self.grid.n

    def component(self, s):
        return self.values[..., s]

    @property
    def target_height(self):
        return self.values[..., -1]

    def copy(self):
        return MapField(self.grid, self.values.copy())


@dataclass
class TensionField:
    """Tension evaluated on the one-node interior core of a grid."""

    grid: SlabGrid
    values: np.ndarray  # shape grid.interior_shape() + (n,)

    @property
    def sup_norm_squared(self):
        return float((self.values ** 2).sum(axis=-1).max())


def laplace_beltrami_scalar(field, grid):
    """Hyperbolic Laplacian of a scalar grid function, on the interior core.

    For the half-space metric this is
    (x^m)^2 * [euclidean_laplacian(w) - ((m-2)/x^m) dw/dx^m].
    """
    grid.require_stencil(1)
    w = check_array_finite(field, "field")
    if w.shape != grid.shape:
        raise GridError(f"field shape {w.shape}, expected {grid.shape}")
    m = grid.m
    lap0 = _stencils.euclidean_laplacian(w, grid.spacings)
    x = grid.heights_broadcast(margin=1)
    out = lap0
    if m != 2:
        dm = _stencils.central_diff(w, m - 1, grid.spacings[-1])
        out = out - (m - 2) / x * dm
    return x * x * out


def tension_field(u):
    """Discrete tension of a sampled map between half-space models.

    Central differences on the one-node interior.  The harmonic-map
    operator for these conformal metrics reads, per target component,

      tau^a = (x^m)^2 [ lap0 y^a - ((m-2)/x^m) d_m y^a
                        - (2/y^n) <grad0 y^a, grad0 y^n> ],  a < n,
      tau^n = (x^m)^2 [ lap0 y^n - ((m-2)/x^m) d_m y^n
                        + (1/y^n) (sum_a |grad0 y^a|^2 - |grad0 y^n|^2) ].
    """
    grid = u.grid
    grid.require_stencil(1)
    m, n = grid.m, grid.n
    vals = u.values
    hmin = vals[..., -1].min()
    if hmin < POSITIVITY_FLOOR:
        idx = np.unravel_index(np.argmin(vals[..., -1]), grid.shape)
        raise PositivityError(
            f"target height {hmin:.3e} below positivity floor at node {idx}")

    sp = grid.spacings
    lap0 = _stencils.euclidean_laplacian(vals, sp, ndim=m)
    grads = _stencils.gradient(vals, sp, ndim=m)  # list over axes, shape core+(n,)
    dm = grads[m - 1]
    yn = _stencils.shrink(vals, 1, ndim=m)[..., -1]
    x = grid.heights_broadcast(margin=1)
    x2 = x * x

    cross = sum(g[..., :-1] * g[..., -1:] for g in grads)     # <grad y^a, grad y^n>
    sq = sum(g * g for g in grads)                            # |grad y^s|^2 per component
    energy_gap = sq[..., :-1].sum(axis=-1) - sq[..., -1]

    tau = np.empty(lap0.shape)
    drift = lap0 if m == 2 else lap0 - (m - 2) / x[..., None] * dm
    tau[..., :-1] = x2[..., None] * (drift[..., :-1] - 2.0 / yn[..., None] * cross)
    tau[..., -1] = x2 * (drift[..., -1] + energy_gap / yn)
    return TensionField(grid, tau)


def tension_norm(tau, u):
    """Squared target-metric norm of the tension, nodewise: sum_s tau_s^2 / (y^n)^2."""
    if tau.grid is not u.grid and tau.grid != u.grid:
        raise GridError("tension and map live on different grids")
    yn = _stencils.shrink(u.values, 1, ndim=u.grid.m)[..., -1]
    return (tau.values ** 2).sum(axis=-1) / (yn * yn)


def sup_tension_norm(u):
    """Sup over interior nodes of the (unsquared) target-metric tension norm."""
    t = tension_field(u)
    return float(np.sqrt(tension_norm(t, u).max()))
