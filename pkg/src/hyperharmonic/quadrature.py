"""Thin wrapper around adaptive Gauss-Kronrod quadrature.

All improper integrals in this package are first mapped to finite
intervals (arctan substitutions, dyadic splits), so only the finite-
interval routine is exposed.  The wrapper enforces the package-wide
contract that a quadrature either meets its absolute tolerance or raises
:class:`~hyperharmonic.errors.QuadratureError`.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError

DEFAULT_TOL = 1e-8

# scipy's hard cap on subdivisions per call; generous for 1-d kernels
_LIMIT = 400


def adaptive_quad(func, a, b, *, tol=DEFAULT_TOL, points=None):
    """Integrate ``func`` over the finite interval [a, b].

    Parameters
    ----------
    func : callable
        Scalar integrand.
    a, b : float
        Finite endpoints, a <= b.
    tol : float
        Absolute error target.
    points : sequence of float, optional
        Interior breakpoints (kinks of the integrand); points outside
        (a, b) are discarded.

    Returns
    -------
    float
        The integral, with estimated absolute error <= tol.
    """
    if b < a:
        raise ValueError(f"empty interval [{a}, {b}]")
    if b == a:
        return 0.0
    if points is not None:
        points = sorted(p for p in points if a < p < b)
        if not points:
            points = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        value, abserr = quad(func, a, b, points=points,
                             epsabs=0.5 * tol, epsrel=1e-12, limit=_LIMIT)
    if not np.isfinite(value) or abserr > tol:
        raise QuadratureError(
            f"quadrature on [{a}, {b}] reached error {abserr:.3e} "
            f"above tolerance {tol:.3e}")
    return value
