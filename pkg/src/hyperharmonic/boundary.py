"""Ideal-boundary data and moduli of continuity.

A boundary map sends R^(m-1) (the ideal boundary of the source) into
R^(n-1) (the finite part of the target's ideal boundary).  Its modulus
of continuity g(r) is the sup of |f(y') - f(x')| over pairs at distance
at most r; everything downstream (the comparison functions, the initial
maps) is driven by g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.stats import qmc
from sklearn.base import BaseEstimator

from .errors import ConfigError
from .geometry import ModelDims
from .quadrature import DEFAULT_TOL, adaptive_quad
from .validation import check_int, check_scalar

_DIVERGENCE_RATIO = 0.95
_DIVERGENCE_RUN = 20
_MAX_PANELS = 220


@dataclass
class ModulusOfContinuity:
    """A nondecreasing bound g on boundary oscillation at scale r.

    Parameters
    ----------
    func : callable
        Vectorized g(r) for r > 0; must handle np.inf (returns the cap).
    bound : float
        K = sup g.
    deriv : callable, optional
        g'(r) almost everywhere, when the family provides it.
    holder : (L, beta), optional
        Certificate that g(r) <= L r^beta for r <= 1.
    kinks : tuple of float
        Radii where g or g' has a kink; quadratures split there.
    support_radius : float
        g(r) == bound for every r >= this value (0 for constant moduli,
        inf when g keeps growing towards the cap).
    """

    func: Callable[[np.ndarray], np.ndarray]
    bound: float
    deriv: Optional[Callable[[np.ndarray], np.ndarray]] = None
    holder: Optional[tuple] = None
    kinks: tuple = ()
    support_radius: float = np.inf
    label: str = "modulus"
    _integrability: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.bound = check_scalar(self.bound, "bound", min_value=0.0)

    def __call__(self, r):
        return self.func(np.asarray(r, dtype=float))

    def derivative(self, r):
        if self.deriv is None:
            raise ValueError(f"{self.label} has no derivative available")
        return self.deriv(np.asarray(r, dtype=float))

    @property
    def has_derivative(self):
        return self.deriv is not None

    @property
    def is_constant(self):
        return self.support_radius == 0.0


@dataclass(frozen=True)
class IntegrabilityResult:
    """Outcome of the dyadic test for the integral of g(t)/t over (0, 1]."""

    finite: bool
    value: Optional[float]
    panels: int
    reason: str

    def __bool__(self):
        return self.finite


def integrability_check(modulus, tol=1e-8):
    """Decide whether the integral of g(t)/t over (0, 1] converges.

    The interval splits into dyadic panels [2^-k-1, 2^-k].  For a
    nondecreasing g the panel contributions are themselves nonincreasing;
    the integral is declared divergent when they fail to decay
    geometrically (ratio above 0.95) over 20 consecutive panels, and
    finite once the geometric tail estimate drops below ``tol``.
    """
    tol = check_scalar(tol, "tol", min_value=0.0, include_min=False)
    g = modulus.func
    total = 0.0
    prev = None
    bad_run = 0
    hi = 1.0
    for k in range(_MAX_PANELS):
        lo = hi / 2.0
        contrib = adaptive_quad(lambda t: g(t) / t, lo, hi,
                                tol=tol * 2.0 ** (-k - 3),
                                points=modulus.kinks)
        total += contrib
        if contrib <= 0.0:
            # g vanishes at 2^-k and is nondecreasing: the whole tail is 0
            return IntegrabilityResult(True, total, k + 1,
                                       "modulus vanishes near 0")
        if prev is not None and prev > 0.0:
            ratio = contrib / prev
            bad_run = bad_run + 1 if ratio >= _DIVERGENCE_RATIO else 0
            if bad_run >= _DIVERGENCE_RUN:
                return IntegrabilityResult(
                    False, None, k + 1,
                    f"dyadic contributions stopped decaying geometrically "
                    f"({bad_run} consecutive panels with ratio >= {_DIVERGENCE_RATIO})")
            if ratio < _DIVERGENCE_RATIO:
                tail = contrib * ratio / (1.0 - ratio)
                if tail < tol:
                    return IntegrabilityResult(True, total + tail, k + 1,
                                               "geometric tail below tolerance")
        prev = contrib
        hi = lo
    return IntegrabilityResult(False, None, _MAX_PANELS,
                               "no geometric decay within the panel budget")


def cached_integrability(modulus, tol=1e-8):
    if modulus._integrability is None:
        modulus._integrability = integrability_check(modulus, tol=tol)
    return modulus._integrability


def holder_modulus(L, beta, cap, label=None):
    """g(r) = min(L r^beta, cap), with its exact derivative and certificate."""
    L = check_scalar(L, "L", min_value=0.0, include_min=False)
    beta = check_scalar(beta, "beta", min_value=0.0, include_min=False, max_value=1.0)
    cap = check_scalar(cap, "cap", min_value=0.0, include_min=False)
    crossover = (cap / L) ** (1.0 / beta)

    def g(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(invalid="ignore"):
            return np.where(r >= crossover, cap, L * np.power(np.maximum(r, 0.0), beta))

    def gprime(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = L * beta * np.power(r, beta - 1.0)
        return np.where((r > 0) & (r < crossover), val, 0.0)

    return ModulusOfContinuity(
        func=g, bound=cap, deriv=gprime, holder=(L, beta),
        kinks=(crossover,), support_radius=crossover,
        label=label or f"holder(L={L}, beta={beta}, cap={cap})")


def constant_modulus(K, label=None):
    """g identically K; the degenerate modulus of a jump (or of constants, K=0)."""
    K = check_scalar(K, "K", min_value=0.0)

    def g(r):
        return np.full_like(np.asarray(r, dtype=float), K)

    def gprime(r):
        return np.zeros_like(np.asarray(r, dtype=float))

    return ModulusOfContinuity(func=g, bound=K, deriv=gprime, holder=None,
                               kinks=(), support_radius=0.0,
                               label=label or f"constant({K})")


@dataclass
class BoundaryMap:
    """Bounded, uniformly continuous (up to built-in exceptions) boundary data.

    ``func`` is vectorized: it maps an array of points with shape
    (..., m-1) to values of shape (..., n-1).
    """

    dims: ModelDims
    func: Callable[[np.ndarray], np.ndarray]
    bound: float                  # sup over components of |f^a|
    osc_bound: float              # sup |f(y') - f(x')|
    family_tag: Optional[str] = None
    params: dict = field(default_factory=dict)
    kinks: tuple = ()             # lateral positions (per-axis) where f is not smooth

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        if pts.shape[-1] != self.dims.m - 1:
            raise ConfigError(
                f"boundary points must have {self.dims.m - 1} coordinates, "
                f"got {pts.shape[-1]}")
        out = np.asarray(self.func(pts), dtype=float)
        expected = pts.shape[:-1] + (self.dims.n - 1,)
        if out.shape != expected:
            raise ConfigError(f"boundary map returned shape {out.shape}, "
                              f"expected {expected}")
        return out

    def cache_key(self):
        if self.family_tag is None:
            return None
        return (self.family_tag, tuple(sorted(self.params.items())),
                self.dims.m, self.dims.n)


def estimate_modulus(f, radii, samples=4096, window=None, seed=0):
    """Sampled lower envelope of the modulus of continuity of ``f``.

    Quasi-random pairs (x', y') with |x'-y'| <= r are drawn inside a
    window of the given radius (default: 10 times the largest test
    radius, at least 10).  Sampling can only under-estimate a sup, so
    the result lower-bounds the true modulus; monotonicity in r is
    enforced by a running maximum.
    """
    radii = np.asarray(list(radii), dtype=float)
    if radii.size == 0:
        raise ValueError("radii must be non-empty")
    if np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be positive and increasing")
    samples = check_int(samples, "samples", min_value=1000)
    d = f.dims.m - 1
    if window is None:
        window = 10.0 * max(1.0, float(radii.max()))

    sobol = qmc.Sobol(d=2 * d + 1, scramble=True, seed=seed)
    u = sobol.random(samples)
    base = (2.0 * u[:, :d] - 1.0) * window
    direction = 2.0 * u[:, d:2 * d] - 1.0
    norms = np.linalg.norm(direction, axis=1)
    norms[norms == 0.0] = 1.0
    direction /= norms[:, None]
    # half the pairs sit exactly at distance r, half strictly inside
    t = np.where(np.arange(samples) % 2 == 0, 1.0, u[:, -1])

    values = np.empty_like(radii)
    running = 0.0
    fx = f(base)
    for i, r in enumerate(radii):
        fy = f(base + (r * t)[:, None] * direction)
        diffs = np.linalg.norm(fy - fx, axis=-1)
        running = max(running, float(diffs.max()))
        values[i] = running

    grid_r = np.concatenate([[0.0], radii])
    grid_g = np.concatenate([[0.0], values])
    cap = float(values[-1])

    def g(r):
        return np.interp(np.asarray(r, dtype=float), grid_r, grid_g,
                         left=0.0, right=cap)

    return ModulusOfContinuity(func=g, bound=cap, deriv=None, holder=None,
                               kinks=tuple(radii), support_radius=np.inf,
                               label=f"sampled({f.family_tag or 'custom'})")


class ModulusEstimator(BaseEstimator):
    """Estimator wrapper around :func:`estimate_modulus`.

    Parameters mirror the function; ``fit`` stores the sampled modulus
    in ``modulus_`` and the per-radius envelope in ``values_``.
    """

    def __init__(self, radii=(0.1, 0.25, 0.5, 1.0, 2.0), samples=4096,
                 window=None, seed=0):
        self.radii = radii
        self.samples = samples
        self.window = window
        self.seed = seed

    def fit(self, X, y=None):
        if not isinstance(X, BoundaryMap):
            raise TypeError("X must be a BoundaryMap")
        self.modulus_ = estimate_modulus(X, self.radii, samples=self.samples,
                                         window=self.window, seed=self.seed)
        self.radii_ = np.asarray(list(self.radii), dtype=float)
        self.values_ = self.modulus_(self.radii_)
        return self

    def transform(self, r):
        if not hasattr(self, "modulus_"):
            raise RuntimeError("ModulusEstimator is not fitted")
        return self.modulus_(r)


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------

def _component_stack(pts, first_component):
    """Place values in component 0 and zeros elsewhere."""
    out = np.zeros(pts.shape[:-1] + (0,))
    return out  # placeholder, replaced below


def _embed(values, pts, n_components):
    out = np.zeros(values.shape + (n_components,))
    out[..., 0] = values
    return out


def family_constant(dims, value=0.5):
    value = check_scalar(value, "value")

    def f(pts):
        return np.full(pts.shape[:-1] + (dims.n - 1,), value)

    bmap = BoundaryMap(dims, f, bound=abs(value), osc_bound=0.0,
                       family_tag="constant", params={"value": value})
    return bmap, constant_modulus(0.0, label="constant-data")


def family_heaviside(dims, height=1.0):
    """A jump of the given height across {y^1 = 0}: not uniformly continuous."""
    height = check_scalar(height, "height", min_value=0.0, include_min=False)

    def f(pts):
        return _embed(np.where(pts[..., 0] > 0.0, height, 0.0), pts, dims.n - 1)

    bmap = BoundaryMap(dims, f, bound=height, osc_bound=height,
                       family_tag="heaviside", params={"height": height},
                       kinks=(0.0,))
    return bmap, constant_modulus(height, label="heaviside")


def family_ramp(dims):
    """y^1 clamped to [0, 1]; exact modulus min(r, 1)."""

    def f(pts):
        return _embed(np.clip(pts[..., 0], 0.0, 1.0), pts, dims.n - 1)

    bmap = BoundaryMap(dims, f, bound=1.0, osc_bound=1.0,
                       family_tag="ramp", params={}, kinks=(0.0, 1.0))
    return bmap, holder_modulus(1.0, 1.0, 1.0, label="ramp")


def family_cosine(dims, amplitude=1.0):
    """amplitude * cos(y^1); exact modulus A*min(2 sin(r/2), 2) up to r = pi."""
    A = check_scalar(amplitude, "amplitude", min_value=0.0, include_min=False)

    def f(pts):
        return _embed(A * np.cos(pts[..., 0]), pts, dims.n - 1)

    def g(r):
        r = np.asarray(r, dtype=float)
        return A * np.where(r >= np.pi, 2.0, 2.0 * np.sin(np.minimum(r, np.pi) / 2.0))

    def gprime(r):
        r = np.asarray(r, dtype=float)
        return np.where((r > 0) & (r < np.pi), A * np.cos(r / 2.0), 0.0)

    modulus = ModulusOfContinuity(func=g, bound=2.0 * A, deriv=gprime,
                                  holder=(A, 1.0), kinks=(np.pi,),
                                  support_radius=np.pi, label="cosine")
    bmap = BoundaryMap(dims, f, bound=A, osc_bound=2.0 * A,
                       family_tag="cosine", params={"amplitude": A})
    return bmap, modulus


def family_holder_bump(dims, amplitude=1.0, beta=0.5, radius=1.0):
    """A * (1 - |y|/radius)_+^beta: compactly supported, exactly beta-Hoelder.

    The modulus is A * min((r/radius)^beta, 1), i.e. holder_modulus with
    L = A / radius^beta and cap A.
    """
    A = check_scalar(amplitude, "amplitude", min_value=0.0, include_min=False)
    beta = check_scalar(beta, "beta", min_value=0.0, include_min=False, max_value=1.0)
    radius = check_scalar(radius, "radius", min_value=0.0, include_min=False)

    def f(pts):
        rr = np.linalg.norm(pts, axis=-1)
        return _embed(A * np.maximum(0.0, 1.0 - rr / radius) ** beta, pts, dims.n - 1)

    modulus = holder_modulus(A / radius ** beta, beta, A, label="holder_bump")
    bmap = BoundaryMap(dims, f, bound=A, osc_bound=A,
                       family_tag="holder_bump",
                       params={"amplitude": A, "beta": beta, "radius": radius},
                       kinks=(-radius, 0.0, radius))
    return bmap, modulus


FAMILIES = {
    "constant": (family_constant, {"value": 0.5}),
    "heaviside": (family_heaviside, {"height": 1.0}),
    "ramp": (family_ramp, {}),
    "cosine": (family_cosine, {"amplitude": 1.0}),
    "holder_bump": (family_holder_bump, {"amplitude": 1.0, "beta": 0.5, "radius": 1.0}),
}


def make_family(name, dims, **params):
    """Instantiate a built-in family by name; returns (BoundaryMap, modulus)."""
    if name not in FAMILIES:
        raise ConfigError(f"unknown boundary family {name!r}; "
                          f"available: {sorted(FAMILIES)}")
    builder, defaults = FAMILIES[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise ConfigError(f"family {name!r} does not take parameters {sorted(unknown)}")
    merged = {**defaults, **params}
    return builder(dims, **merged)
