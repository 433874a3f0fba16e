"""Second-order central-difference stencils on tensor-product grids.

All helpers take an array sampled on the full grid and return values on
a trimmed core, shrinking the array by ``margin`` nodes on every face of
the axes that were differenced.  Shapes are the caller's contract; no
grid objects appear at this level.
"""

from __future__ import annotations

import numpy as np


def shrink(arr, margin, ndim=None):
    """View of ``arr`` with ``margin`` nodes removed from each face.

    Only the first ``ndim`` axes are trimmed (trailing component axes,
    if any, are kept whole).
    """
    if margin == 0:
        return arr
    ndim = arr.ndim if ndim is None else ndim
    sl = (slice(margin, -margin),) * ndim + (slice(None),) * (arr.ndim - ndim)
    return arr[sl]


def _shifted(arr, axis, shift, ndim):
    """Core of ``arr`` (one-node margin on the first ndim axes), displaced
    by ``shift`` nodes along ``axis``."""
    sl = []
    for ax in range(arr.ndim):
        if ax >= ndim:
            sl.append(slice(None))
        elif ax == axis:
            sl.append(slice(1 + shift, arr.shape[ax] - 1 + shift or None))
        else:
            sl.append(slice(1, -1))
    return arr[tuple(sl)]


def central_diff(arr, axis, h, ndim=None):
    """First derivative along ``axis`` on the one-node core."""
    ndim = arr.ndim if ndim is None else ndim
    return (_shifted(arr, axis, +1, ndim) - _shifted(arr, axis, -1, ndim)) / (2.0 * h)


def second_diff(arr, axis, h, ndim=None):
    """Second derivative along ``axis`` on the one-node core."""
    ndim = arr.ndim if ndim is None else ndim
    return (_shifted(arr, axis, +1, ndim)
            - 2.0 * _shifted(arr, axis, 0, ndim)
            + _shifted(arr, axis, -1, ndim)) / (h * h)


def euclidean_laplacian(arr, spacings, ndim=None):
    """Sum of per-axis second differences on the one-node core."""
    ndim = len(spacings) if ndim is None else ndim
    out = second_diff(arr, 0, spacings[0], ndim)
    for ax in range(1, ndim):
        out = out + second_diff(arr, ax, spacings[ax], ndim)
    return out


def gradient(arr, spacings, ndim=None):
    """List of per-axis first derivatives on the one-node core."""
    ndim = len(spacings) if ndim is None else ndim
    return [central_diff(arr, ax, spacings[ax], ndim) for ax in range(ndim)]
