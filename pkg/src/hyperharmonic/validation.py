"""Input validation helpers, in the spirit of sklearn's ``check_*`` utilities."""

from __future__ import annotations

import numbers

import numpy as np

from .errors import DimensionMismatchError, PositivityError


def check_scalar(value, name, *, min_value=None, max_value=None,
                 include_min=True, include_max=True):
    """Validate a real scalar and return it as a float."""
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if min_value is not None:
        if include_min and value < min_value:
            raise ValueError(f"{name} must be >= {min_value}, got {value}")
        if not include_min and value <= min_value:
            raise ValueError(f"{name} must be > {min_value}, got {value}")
    if max_value is not None:
        if include_max and value > max_value:
            raise ValueError(f"{name} must be <= {max_value}, got {value}")
        if not include_max and value >= max_value:
            raise ValueError(f"{name} must be < {max_value}, got {value}")
    return value


def check_int(value, name, *, min_value=None):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if min_value is not None and value < min_value:
        raise ValueError(f"{name} must be >= {min_value}, got {value}")
    return value


def check_point(coords, *, name="point"):
    """Coerce to a finite 1-d float array with a strictly positive last entry."""
    arr = np.asarray(coords, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError(f"{name} must be a 1-d vector of length >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite coordinates")
    if arr[-1] <= 0.0:
        raise PositivityError(f"{name} must have a positive last coordinate, got {arr[-1]}")
    return arr


def check_same_dim(a, b, *, names=("p", "q")):
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"{names[0]} and {names[1]} have different dimensions: "
            f"{a.shape} vs {b.shape}")


def check_decreasing(seq, name):
    seq = [check_scalar(v, f"{name}[{i}]", min_value=0.0, include_min=False)
           for i, v in enumerate(seq)]
    if any(b >= a for a, b in zip(seq, seq[1:])):
        raise ValueError(f"{name} must be strictly decreasing, got {seq}")
    return tuple(seq)


def check_array_finite(arr, name):
    arr = np.asarray(arr, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr
