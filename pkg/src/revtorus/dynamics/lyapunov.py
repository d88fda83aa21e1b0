"""Upper Lyapunov exponent estimators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_random_state
from sklearn.utils.validation import check_is_fitted

from .._validation import check_points, check_system
from ..exceptions import NotAReversiblePair
from . import _kernels
from .maps import check_reversibility

__all__ = [
    "LyapunovEstimate",
    "LyapunovEstimator",
    "IntegratedExponent",
    "lyapunov_plus",
    "check_exponent_symmetry",
    "exponent_symmetry",
    "integrated_exponent_estimate",
    "assert_reversible_pair",
]

# residual above which (f, R) is not treated as a reversible pair
PAIR_TOL = 1e-8


@dataclass(frozen=True)
class LyapunovEstimate:
    lambda_plus: float
    n: int
    transient: int
    renorm_interval: int
    initial_point: tuple
    initial_vector: tuple
    rng_seed: object

    def to_json(self) -> dict:
        return {
            "lambda_plus": self.lambda_plus,
            "n": self.n,
            "transient": self.transient,
            "renorm_interval": self.renorm_interval,
            "initial_point": list(self.initial_point),
            "initial_vector": list(self.initial_vector),
            "rng_seed": self.rng_seed,
        }


class LyapunovEstimator(TransformerMixin, BaseEstimator):
    """Finite-time upper Lyapunov exponent at each input point.

    A random unit tangent vector (one per point, drawn from
    ``random_state``) is pushed along the orbit and renormalized after
    every step; the exponent is the mean log growth over ``n_iter`` steps
    after ``transient`` discarded steps.

    Parameters
    ----------
    system : ToralAutomorphism or StandardMap
    n_iter : int
    transient : int
    random_state : int, Generator or None

    Examples
    --------
    >>> from revtorus import IntMatrix2
    >>> from revtorus.dynamics import ToralAutomorphism
    >>> est = LyapunovEstimator(ToralAutomorphism(IntMatrix2(2, 1, 1, 1)), n_iter=2000)
    >>> round(float(est.fit_transform([[0.1, 0.2]])[0, 0]), 3)
    0.962
    """

    def __init__(self, system=None, n_iter=100_000, transient=0, random_state=0):
        self.system = system
        self.n_iter = n_iter
        self.transient = transient
        self.random_state = random_state

    def fit(self, X, y=None):
        check_system(self.system)
        if self.n_iter < 1:
            raise ValueError("n_iter must be >= 1")
        if self.transient < 0:
            raise ValueError("transient must be >= 0")
        check_points(X)
        self.n_features_in_ = 2
        return self

    def _vectors(self, n_points: int) -> np.ndarray:
        rng = check_random_state(self.random_state)
        theta = rng.uniform(0.0, np.pi, size=n_points)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)

    def _run(self, P: np.ndarray, V: np.ndarray) -> np.ndarray:
        f = self.system
        return _kernels.lyapunov_batch(
            f.kind,
            f.params,
            np.ascontiguousarray(P[:, 0]),
            np.ascontiguousarray(P[:, 1]),
            np.ascontiguousarray(V[:, 0]),
            np.ascontiguousarray(V[:, 1]),
            int(self.n_iter),
            int(self.transient),
        )

    def estimate(self, X) -> np.ndarray:
        """Exponents as a flat array, one per point."""
        check_is_fitted(self, "n_features_in_")
        P = check_points(X)
        return self._run(P, self._vectors(len(P)))

    def transform(self, X) -> np.ndarray:
        return self.estimate(X).reshape(-1, 1)

    def estimate_one(self, p) -> LyapunovEstimate:
        check_is_fitted(self, "n_features_in_")
        P = check_points(p)[:1]
        V = self._vectors(1)
        lam = float(self._run(P, V)[0])
        seed = self.random_state if isinstance(self.random_state, (int, type(None))) else repr(self.random_state)
        return LyapunovEstimate(
            lambda_plus=lam,
            n=int(self.n_iter),
            transient=int(self.transient),
            renorm_interval=1,
            initial_point=tuple(float(v) for v in P[0]),
            initial_vector=tuple(float(v) for v in V[0]),
            rng_seed=seed,
        )


def lyapunov_plus(f, p, n: int = 100_000, transient: int = 0, seed=0) -> LyapunovEstimate:
    return LyapunovEstimator(f, n_iter=n, transient=transient, random_state=seed).fit([p]).estimate_one(p)


def assert_reversible_pair(f, r, samples: int = 256, seed: int = 0) -> None:
    res = check_reversibility(f, r, samples=samples, seed=seed)
    if res.max > PAIR_TOL:
        raise NotAReversiblePair(f"{r!r} does not reverse {f!r} (residual {res.max:.3g})")


def exponent_symmetry(f, r, points, n: int = 100_000, transient: int = 0, seed=0) -> np.ndarray:
    """``|lambda+(p) - lambda+(R p)|`` for each point.

    ``p`` and ``R(p)`` get independent random tangent vectors, so agreement
    is not an artifact of running the same computation twice.
    """
    assert_reversible_pair(f, r)
    P = check_points(points)
    est = LyapunovEstimator(f, n_iter=n, transient=transient, random_state=seed).fit(P)
    both = np.vstack([P, r(P)])
    lam = est._run(both, est._vectors(len(both)))
    return np.abs(lam[: len(P)] - lam[len(P):])


def check_exponent_symmetry(f, r, p, n: int = 100_000, transient: int = 0, seed=0) -> float:
    return float(exponent_symmetry(f, r, [p], n=n, transient=transient, seed=seed)[0])


@dataclass(frozen=True)
class IntegratedExponent:
    """Grid estimate of ``inf_n (1/n) * mean_x log ||Df^n_x||``."""

    value: float
    per_n: dict
    monotone: bool
    grid_resolution: int

    def __float__(self) -> float:
        return self.value

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "per_n": {str(k): v for k, v in self.per_n.items()},
            "monotone_non_increasing": self.monotone,
            "grid_resolution": self.grid_resolution,
        }


def integrated_exponent_estimate(f, grid_resolution: int, n_list) -> IntegratedExponent:
    """Minimum over ``n_list`` of the grid-averaged ``(1/n) log ||Df^n||``.

    The grid uses cell centres ``((i + 1/2)/G, (j + 1/2)/G)``.
    ``monotone`` reports whether the averages are non-increasing in ``n``.
    """
    check_system(f)
    ns = sorted(set(int(n) for n in n_list))
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    if not ns or ns[0] < 1:
        raise ValueError("n_list must hold positive integers")
    g = (np.arange(grid_resolution) + 0.5) / grid_resolution
    xs, ys = (a.ravel() for a in np.meshgrid(g, g, indexing="ij"))
    growth = _kernels.log_norm_growth(f.kind, f.params, xs.copy(), ys.copy(), ns[-1])
    per_n = {n: float(growth[:, n - 1].mean() / n) for n in ns}
    values = [per_n[n] for n in ns]
    monotone = all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    return IntegratedExponent(min(values), per_n, monotone, grid_resolution)
