"""Input validation shared by the estimators and the CLI."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.utils import check_array

from .algebra import IntMatrix2, RationalVec2
from .exceptions import NonRational


def check_points(X) -> np.ndarray:
    """Coerce torus points to a float array of shape ``(n, 2)``, reduced mod 1."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    arr = check_array(arr, dtype=float, ensure_2d=True)
    if arr.shape[1] != 2:
        raise ValueError(f"points must have 2 coordinates, got shape {arr.shape}")
    return np.mod(arr, 1.0)


def check_matrix(m) -> IntMatrix2:
    if isinstance(m, IntMatrix2):
        return m
    if isinstance(m, str):
        return IntMatrix2.parse(m)
    flat = np.asarray(m, dtype=object).reshape(-1).tolist()
    return IntMatrix2(*flat)


def check_system(f):
    for attr in ("kind", "params", "jacobian", "inverse"):
        if not hasattr(f, attr):
            raise TypeError(f"{f!r} is not a torus map descriptor")
    return f


def _rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise NonRational(f"{v!r} is not an exact rational; pass int, Fraction or 'p/q'")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            raise NonRational(f"cannot parse {v!r} as a rational") from None
    raise NonRational(f"{v!r} is not an exact rational")


def check_rational_point(p) -> RationalVec2:
    if isinstance(p, RationalVec2):
        return p
    x, y = p
    return RationalVec2(_rational(x), _rational(y))
