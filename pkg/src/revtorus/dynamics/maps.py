"""Area-preserving maps of the torus and their reversors.

Points are float arrays whose last axis has length 2; a single point may be
passed as a pair. Every map reduces its output mod 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra import IntMatrix2, is_involution, mat_inv, unimodular
from ..exceptions import NotInvolution, TrivialInvolution
from ..involutions import GENERIC, LOWER, UPPER, classify_involution, fixed_line
from . import _kernels

__all__ = [
    "ToralAutomorphism",
    "StandardMap",
    "LinearInvolution",
    "StandardReversor",
    "FixedSet",
    "ReversibilityResidual",
    "torus_distance",
    "apply",
    "apply_inverse",
    "jacobian",
    "check_reversibility",
    "fix_set",
    "map_from_json",
    "reversor_from_json",
]

TWO_PI = 2.0 * math.pi


def _points(p) -> np.ndarray:
    return np.asarray(p, dtype=float)


def _mat_apply(m: np.ndarray, p: np.ndarray) -> np.ndarray:
    return np.mod(p @ m.T, 1.0)


def torus_distance(p, q) -> np.ndarray:
    """Max of the coordinatewise circle distances."""
    delta = np.abs(_points(p) - _points(q)) % 1.0
    return np.minimum(delta, 1.0 - delta).max(axis=-1)


class _Linear:
    kind = _kernels.LINEAR

    def __init__(self, matrix: IntMatrix2):
        self.matrix = matrix
        self._m = np.array(matrix.rows(), dtype=float)
        self._minv = np.array(mat_inv(matrix).rows(), dtype=float)
        self.params = np.array(matrix.as_tuple(), dtype=float)

    def __call__(self, p):
        return _mat_apply(self._m, _points(p))

    def jacobian(self, p):
        p = _points(p)
        return np.broadcast_to(self._m, p.shape[:-1] + (2, 2)).copy()

    def __eq__(self, other):
        return type(self) is type(other) and self.matrix == other.matrix

    def __hash__(self):
        return hash((type(self).__name__, self.matrix))


class ToralAutomorphism(_Linear):
    """The torus map induced by a unimodular integer matrix."""

    def __init__(self, matrix: IntMatrix2):
        super().__init__(unimodular(matrix))

    def inverse(self, p):
        return _mat_apply(self._minv, _points(p))

    def to_json(self) -> dict:
        return {"kind": "ToralAutomorphism", "matrix": self.matrix.to_json()}

    def __repr__(self):
        return f"ToralAutomorphism({self.matrix})"


class LinearInvolution(_Linear):
    def __init__(self, matrix: IntMatrix2):
        if not is_involution(matrix):
            raise NotInvolution(f"{matrix} does not square to the identity")
        super().__init__(matrix)

    def to_json(self) -> dict:
        return {"kind": "LinearInvolution", "matrix": self.matrix.to_json()}

    def __repr__(self):
        return f"LinearInvolution({self.matrix})"


class StandardMap:
    """``(x, y) -> (x + y', y')`` with ``y' = y - sigma/(2 pi) sin(2 pi x)``."""

    kind = _kernels.STANDARD

    def __init__(self, sigma: float):
        self.sigma = float(sigma)
        self.params = np.array([self.sigma, 0.0, 0.0, 0.0])

    def __call__(self, p):
        p = _points(p)
        x, y = p[..., 0], p[..., 1]
        y1 = y - self.sigma / TWO_PI * np.sin(TWO_PI * x)
        return np.mod(np.stack([x + y1, y1], axis=-1), 1.0)

    def inverse(self, p):
        p = _points(p)
        x0 = p[..., 0] - p[..., 1]
        y0 = p[..., 1] + self.sigma / TWO_PI * np.sin(TWO_PI * x0)
        return np.mod(np.stack([x0, y0], axis=-1), 1.0)

    def jacobian(self, p):
        p = _points(p)
        g = self.sigma * np.cos(TWO_PI * p[..., 0])
        one = np.ones_like(g)
        return np.stack([np.stack([1.0 - g, one], -1), np.stack([-g, one], -1)], -2)

    def to_json(self) -> dict:
        return {"kind": "StandardMap", "sigma": self.sigma}

    def __eq__(self, other):
        return type(self) is type(other) and self.sigma == other.sigma

    def __hash__(self):
        return hash(("StandardMap", self.sigma))

    def __repr__(self):
        return f"StandardMap(sigma={self.sigma})"


class StandardReversor:
    """``(x, y) -> (-x, y - sigma/(2 pi) sin(2 pi x))``, reverses ``StandardMap(sigma)``."""

    kind = _kernels.STANDARD

    def __init__(self, sigma: float):
        self.sigma = float(sigma)

    def __call__(self, p):
        p = _points(p)
        x, y = p[..., 0], p[..., 1]
        return np.mod(np.stack([-x, y - self.sigma / TWO_PI * np.sin(TWO_PI * x)], axis=-1), 1.0)

    def jacobian(self, p):
        p = _points(p)
        g = self.sigma * np.cos(TWO_PI * p[..., 0])
        zero, one = np.zeros_like(g), np.ones_like(g)
        return np.stack([np.stack([-one, zero], -1), np.stack([-g, one], -1)], -2)

    def to_json(self) -> dict:
        return {"kind": "StandardReversor", "sigma": self.sigma}

    def __repr__(self):
        return f"StandardReversor(sigma={self.sigma})"


def map_from_json(obj: dict):
    if obj["kind"] == "ToralAutomorphism":
        return ToralAutomorphism(IntMatrix2.from_json(obj["matrix"]))
    if obj["kind"] == "StandardMap":
        return StandardMap(obj["sigma"])
    raise ValueError(f"unknown map kind {obj['kind']!r}")


def reversor_from_json(obj: dict):
    if obj["kind"] == "LinearInvolution":
        return LinearInvolution(IntMatrix2.from_json(obj["matrix"]))
    if obj["kind"] == "StandardReversor":
        return StandardReversor(obj["sigma"])
    raise ValueError(f"unknown reversor kind {obj['kind']!r}")


def apply(f, p):
    return f(p)


def apply_inverse(f, p):
    return f.inverse(p)


def jacobian(f, p):
    return f.jacobian(p)


@dataclass(frozen=True)
class ReversibilityResidual:
    reversal: float
    involution: float
    samples: int
    seed: int

    @property
    def max(self) -> float:
        return max(self.reversal, self.involution)

    def to_json(self) -> dict:
        return {
            "reversal": self.reversal,
            "involution": self.involution,
            "samples": self.samples,
            "seed": self.seed,
        }


def check_reversibility(f, r, samples: int = 10_000, seed: int = 0) -> ReversibilityResidual:
    """Largest sampled ``d(R f p, f^-1 R p)`` and ``d(R R p, p)``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    pts = np.random.default_rng(seed).random((samples, 2))
    rp = r(pts)
    reversal = torus_distance(r(f(pts)), f.inverse(rp)).max()
    involution = torus_distance(r(rp), pts).max()
    return ReversibilityResidual(float(reversal), float(involution), samples, seed)


@dataclass(frozen=True)
class FixedSet:
    """Fix(R) as a union of closed curves ``q*x - p*y = c (mod 1)``.

    Each component is ``(direction, offset)``: the curve through the
    rational point ``offset`` in the integer direction ``(p, q)``.
    """

    components: tuple

    def equations(self) -> list:
        out = []
        for (p, q), (ox, oy) in self.components:
            cx, cy, c = q, -p, Fraction(q) * ox - Fraction(p) * oy
            if cx < 0 or (cx == 0 and cy < 0):
                cx, cy, c = -cx, -cy, -c
            out.append(f"{_linear_form(cx, cy)} = {c % 1}")
        return out

    def contains(self, point, tol: float = 1e-12) -> bool:
        x, y = (float(v) for v in point)
        for (p, q), (ox, oy) in self.components:
            val = (q * (x - float(ox)) - p * (y - float(oy))) % 1.0
            if min(val, 1.0 - val) < tol:
                return True
        return False

    def to_json(self) -> dict:
        return {
            "components": [
                {"direction": [str(v) for v in d], "offset": [str(v) for v in o]}
                for d, o in self.components
            ],
            "equations": self.equations(),
        }


def _linear_form(cx: int, cy: int) -> str:
    terms = []
    for coeff, var in ((cx, "x"), (cy, "y")):
        if coeff == 0:
            continue
        mag = "" if abs(coeff) == 1 else str(abs(coeff))
        sign = "-" if coeff < 0 else "+"
        terms.append((sign, f"{mag}{var}"))
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, term in terms[1:]:
        text += f" {sign} {term}"
    return text


def fix_set(r) -> FixedSet:
    """Fixed curves of a nontrivial reversor on the torus.

    For a linear involution with +1 direction ``v`` and -1 direction ``w``,
    the solutions of ``A x = x (mod 1)`` are ``s*v + (k/2)*w``; they form one
    closed geodesic when ``det(v, w)`` is even and two parallel ones
    (through 0 and ``w/2``) when it is odd.
    """
    if isinstance(r, StandardReversor):
        zero, half = Fraction(0), Fraction(1, 2)
        return FixedSet((((0, 1), (zero, zero)), ((0, 1), (half, zero))))
    cls = classify_involution(r.matrix)
    if cls.branch not in (LOWER, UPPER, GENERIC):
        raise TrivialInvolution(f"{r.matrix} is {cls.branch}")
    line = fixed_line(r.matrix)
    v, w = line.direction, line.reflected
    comps = [(v, (Fraction(0), Fraction(0)))]
    if (v[0] * w[1] - v[1] * w[0]) % 2:
        comps.append((v, (Fraction(w[0], 2) % 1, Fraction(w[1], 2) % 1)))
    return FixedSet(tuple(comps))
