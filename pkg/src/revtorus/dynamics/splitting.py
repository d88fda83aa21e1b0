"""Finite-time Oseledets directions and m-domination."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import check_points, check_system
from ..exceptions import NoConvergence
from . import _kernels
from .lyapunov import assert_reversible_pair

__all__ = [
    "SplittingEstimate",
    "OseledetsEstimator",
    "oseledets_directions",
    "check_splitting_swap",
    "domination_check",
    "reflected_domination_ratio",
    "line_angle",
    "direction_angle",
]

CAUCHY_TOL = 1e-9
MAX_ITER = 10_000
MIN_ITER = 32
# E^u and E^s closer than this (as lines) do not form a splitting
DEGENERATE_GAP = 1e-6


def line_angle(u, v) -> float:
    """Angle in ``[0, pi/2]`` between the lines spanned by ``u`` and ``v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cross = abs(u[0] * v[1] - u[1] * v[0])
    dot = abs(u @ v)
    return float(np.arctan2(cross, dot))


def direction_angle(v) -> float:
    """Angle of the line through ``v``, in ``[0, pi)``."""
    return float(np.arctan2(v[1], v[0]) % np.pi)


def oseledets_directions(f, p, n: int = MAX_ITER, tol: float = CAUCHY_TOL) -> tuple:
    """Unit vectors spanning ``(E^u_p, E^s_p)``.

    Raises NoConvergence when either direction fails the angular Cauchy
    test within ``n`` steps, or when the two coincide (no splitting, e.g.
    a shear).
    """
    check_system(f)
    x, y = check_points(p)[0]
    res = _kernels.oseledets(f.kind, f.params, float(x), float(y), int(n), float(tol), MIN_ITER)
    eu, es = res[0:2].copy(), res[2:4].copy()
    if res[4] < 0 or res[5] < 0:
        raise NoConvergence(f"Oseledets directions of {f!r} at {(x, y)} did not converge in {n} steps")
    if line_angle(eu, es) < DEGENERATE_GAP:
        raise NoConvergence(f"E^u and E^s coincide for {f!r} at {(x, y)}")
    return eu, es


class OseledetsEstimator(TransformerMixin, BaseEstimator):
    """Maps each point to the angles of its ``(E^u, E^s)`` lines in ``[0, pi)``.

    Points without a converged splitting get ``nan`` in both columns.
    """

    def __init__(self, system=None, max_iter=MAX_ITER, tol=CAUCHY_TOL):
        self.system = system
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y=None):
        check_system(self.system)
        check_points(X)
        self.n_features_in_ = 2
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        P = check_points(X)
        out = np.full((len(P), 2), np.nan)
        for i, p in enumerate(P):
            try:
                eu, es = oseledets_directions(self.system, p, self.max_iter, self.tol)
            except NoConvergence:
                continue
            out[i] = direction_angle(eu), direction_angle(es)
        return out


def _reversor_jacobian(r, p) -> np.ndarray:
    return np.asarray(r.jacobian(np.asarray(p, dtype=float)), dtype=float)


def check_splitting_swap(f, r, p, n: int = MAX_ITER) -> float:
    """Largest of ``angle(DR_p E^u_p, E^s_Rp)`` and ``angle(DR_p E^s_p, E^u_Rp)``."""
    assert_reversible_pair(f, r)
    p = check_points(p)[0]
    rp = r(p)
    eu, es = oseledets_directions(f, p, n)
    eu_r, es_r = oseledets_directions(f, rp, n)
    dr = _reversor_jacobian(r, p)
    return max(line_angle(dr @ eu, es_r), line_angle(dr @ es, eu_r))


@dataclass(frozen=True)
class SplittingEstimate:
    e_u_angle: float
    e_s_angle: float
    m: int
    ratio: float
    orbit_length: int
    dominated: bool

    def to_json(self) -> dict:
        return {
            "e_u_angle": self.e_u_angle,
            "e_s_angle": self.e_s_angle,
            "m": self.m,
            "ratio": self.ratio,
            "orbit_length": self.orbit_length,
            "dominated": self.dominated,
        }


def _orbit(f, p, m: int) -> list:
    pts = [np.asarray(p, dtype=float)]
    for _ in range(m):
        pts.append(f(pts[-1]))
    return pts


def _ratio(f, p, eu, m: int, es_end=None) -> float:
    """``||Df^m|E^s_p|| * ||Df^-m|E^u_{f^m p}||``.

    Both factors are computed along expanding directions, which keeps the
    float error relative: ``||Df^m|E^u_p||`` forward from ``p`` and
    ``||Df^-m|E^s_{f^m p}||`` backward from the end of the orbit.
    """
    pts = _orbit(f, p, m)
    w = np.asarray(eu, dtype=float)
    grow_u = 1.0
    for q in pts[:-1]:
        w = f.jacobian(q) @ w
        n = float(np.hypot(*w))
        grow_u *= n
        w /= n
    if es_end is None:
        es_end = oseledets_directions(f, pts[-1])[1] if m else None
    grow_s = 1.0
    if m:
        w = np.asarray(es_end, dtype=float)
        for q in reversed(pts[:-1]):
            w = np.linalg.solve(f.jacobian(q), w)
            n = float(np.hypot(*w))
            grow_s *= n
            w /= n
    return 1.0 / (grow_u * grow_s)


def domination_check(f, p, m: int, orbit_length: int = 1) -> SplittingEstimate:
    """Worst domination ratio over ``orbit_length`` points of the orbit of ``p``.

    The splitting is m-dominated when the ratio is at most 1/2. ``m = 0``
    is accepted and always gives ratio 1.
    """
    if m < 0 or orbit_length < 1:
        raise ValueError("need m >= 0 and orbit_length >= 1")
    q = check_points(p)[0]
    eu0, es0 = oseledets_directions(f, q)
    worst = 0.0
    for i in range(orbit_length):
        eu = eu0 if i == 0 else oseledets_directions(f, q)[0]
        worst = max(worst, _ratio(f, q, eu, m))
        q = f(q)
    return SplittingEstimate(
        e_u_angle=direction_angle(eu0),
        e_s_angle=direction_angle(es0),
        m=m,
        ratio=worst,
        orbit_length=orbit_length,
        dominated=worst <= 0.5,
    )


def reflected_domination_ratio(f, r, p, m: int) -> float:
    """Domination ratio at ``R(p)`` for the bundles carried over by ``DR_p``.

    Uses ``E^u_Rp = DR_p E^s_p`` and, at the far end of the orbit,
    ``E^s_{f^m R p} = DR E^u_{f^-m p}``. For linear maps the result equals
    the ratio at ``p``; in general it matches the ratio at ``f^-m(p)`` up
    to the distortion of ``DR``.
    """
    assert_reversible_pair(f, r)
    p = check_points(p)[0]
    _, es = oseledets_directions(f, p)
    eu_r = _reversor_jacobian(r, p) @ es
    eu_r /= np.hypot(*eu_r)
    if m == 0:
        return 1.0
    # E^s at f^m(R p) = R(f^-m p) is carried over from E^u at f^-m(p)
    back = p
    for _ in range(m):
        back = f.inverse(back)
    es_end = _reversor_jacobian(r, back) @ oseledets_directions(f, back)[0]
    return _ratio(f, r(p), eu_r, m, es_end / np.hypot(*es_end))
