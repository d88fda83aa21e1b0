"""Linear involutions of the 2-torus.

Every ``A`` in GL(2, Z) with ``A @ A = Id`` is either ``+-Id`` or has trace 0
and determinant -1. The nontrivial ones fall into three families::

    LowerTriangular(e, g) = ( e   0 ;  g  -e )
    UpperTriangular(e, b) = ( e   b ;  0  -e )
    Generic(a, b)         = ( a   b ; (1 - a^2)/b  -a )    with b | 1 - a^2

A matrix that fits more than one template is reported under the first
match in the order lower, upper, generic. So ``diag(1, -1)`` is
``LowerTriangular(+1, 0)`` and ``(1, 5; 0, -1)`` is ``UpperTriangular``
even though the generic formula with ``a = 1`` also produces it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    IDENTITY,
    IntMatrix2,
    is_hyperbolic,
    is_involution,
    reversibility_check,
)
from .exceptions import NotInvolution, TrivialInvolution

__all__ = [
    "InvolutionClass",
    "FixedLine",
    "classify_involution",
    "reconstruct",
    "enumerate_involutions",
    "fixed_line",
    "construct_reversible_anosov",
]

TRIVIAL_PLUS = "TrivialPlus"
TRIVIAL_MINUS = "TrivialMinus"
LOWER = "LowerTriangular"
UPPER = "UpperTriangular"
GENERIC = "Generic"
BRANCHES = (TRIVIAL_PLUS, TRIVIAL_MINUS, LOWER, UPPER, GENERIC)


@dataclass(frozen=True)
class InvolutionClass:
    branch: str
    sign: Optional[int] = None
    gamma: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.branch in (LOWER, UPPER):
            if self.sign not in (1, -1):
                raise ValueError("triangular branches need sign +1 or -1")
            param = self.gamma if self.branch == LOWER else self.beta
            if param is None:
                raise ValueError(f"{self.branch} needs its off-diagonal parameter")
        if self.branch == GENERIC:
            if self.alpha is None or not self.beta:
                raise ValueError("Generic needs alpha and a nonzero beta")
            if (1 - self.alpha**2) % self.beta:
                raise ValueError(f"beta={self.beta} does not divide 1 - alpha^2")

    @property
    def params(self) -> dict:
        if self.branch == LOWER:
            return {"sign": self.sign, "gamma": self.gamma}
        if self.branch == UPPER:
            return {"sign": self.sign, "beta": self.beta}
        if self.branch == GENERIC:
            return {"alpha": self.alpha, "beta": self.beta}
        return {}

    def to_json(self) -> dict:
        return {"branch": self.branch, "params": {k: str(v) for k, v in self.params.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "InvolutionClass":
        params = {k: int(v) for k, v in obj.get("params", {}).items()}
        return cls(obj["branch"], **params)

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.branch}({inner})" if inner else self.branch


def classify_involution(a: IntMatrix2) -> InvolutionClass:
    if not is_involution(a):
        raise NotInvolution(f"{a} does not square to the identity")
    if a == IDENTITY:
        return InvolutionClass(TRIVIAL_PLUS)
    if a == -IDENTITY:
        return InvolutionClass(TRIVIAL_MINUS)
    # Nontrivial involutions have d = -a; b = 0 forces a = +-1, same for c.
    if a.b == 0:
        return InvolutionClass(LOWER, sign=a.a, gamma=a.c)
    if a.c == 0:
        return InvolutionClass(UPPER, sign=a.a, beta=a.b)
    return InvolutionClass(GENERIC, alpha=a.a, beta=a.b)


def reconstruct(cls: InvolutionClass) -> IntMatrix2:
    if cls.branch == TRIVIAL_PLUS:
        return IDENTITY
    if cls.branch == TRIVIAL_MINUS:
        return -IDENTITY
    if cls.branch == LOWER:
        return IntMatrix2(cls.sign, 0, cls.gamma, -cls.sign)
    if cls.branch == UPPER:
        return IntMatrix2(cls.sign, cls.beta, 0, -cls.sign)
    alpha, beta = cls.alpha, cls.beta
    return IntMatrix2(alpha, beta, (1 - alpha * alpha) // beta, -alpha)


def enumerate_involutions(bound: int) -> list:
    """All involutions with every entry in ``[-bound, bound]``, sorted.

    Uses the structure ``A = +-Id`` or ``(trace 0, det -1)`` to avoid the
    ``(2*bound+1)**4`` scan.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    found = {IDENTITY, -IDENTITY}
    for a in range(-bound, bound + 1):
        rest = 1 - a * a  # = b * c
        for b in range(-bound, bound + 1):
            if b == 0:
                if rest == 0:
                    found.update(IntMatrix2(a, 0, c, -a) for c in range(-bound, bound + 1))
                continue
            if rest % b == 0 and abs(rest // b) <= bound:
                found.add(IntMatrix2(a, b, rest // b, -a))
    return sorted(found, key=IntMatrix2.as_tuple)


def _primitive(p: int, q: int) -> tuple:
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return p, q


def _kernel_direction(m: IntMatrix2) -> tuple:
    # m has rank 1 here; pick a nonzero row (r1, r2), kernel is (-r2, r1).
    r1, r2 = (m.a, m.b) if (m.a, m.b) != (0, 0) else (m.c, m.d)
    return _primitive(-r2, r1)


@dataclass(frozen=True)
class FixedLine:
    """Eigenline of ``A`` for eigenvalue +1, through the origin.

    ``direction`` is primitive with its first nonzero coordinate positive;
    ``reflected`` spans the -1 eigenline.
    """

    direction: tuple
    reflected: tuple

    def to_json(self) -> dict:
        return {
            "direction": [str(v) for v in self.direction],
            "reflected": [str(v) for v in self.reflected],
        }


def fixed_line(a: IntMatrix2) -> FixedLine:
    cls = classify_involution(a)
    if cls.branch in (TRIVIAL_PLUS, TRIVIAL_MINUS):
        raise TrivialInvolution(f"{a} is {cls.branch}; its fixed set is not a line")
    plus = IntMatrix2(a.a - 1, a.b, a.c, a.d - 1)
    minus = IntMatrix2(a.a + 1, a.b, a.c, a.d + 1)
    return FixedLine(_kernel_direction(plus), _kernel_direction(minus))


def _lower_recipe(sign: int, gamma: int) -> IntMatrix2:
    if gamma == 0:
        return IntMatrix2(3, 4, 2, 3)
    if sign == 1:
        return IntMatrix2(gamma, 1, 2 * gamma * gamma - 1, 2 * gamma)
    return IntMatrix2(gamma, -1, 1 - 2 * gamma * gamma, 2 * gamma)


def construct_reversible_anosov(a: IntMatrix2) -> IntMatrix2:
    """An orientation-preserving hyperbolic ``L`` reversed by ``a``.

    Triangular involutions use explicit one-parameter recipes (transposed
    for the upper family). Generic ``(alpha, beta)`` uses
    ``(alpha, beta; (alpha^2 - 1)/beta, alpha)``, hyperbolic whenever
    ``|alpha| >= 2``. The swap-type involutions with ``alpha = 0`` (only
    ``beta = +-1`` is possible) need their own choice.
    """
    cls = classify_involution(a)
    if cls.branch in (TRIVIAL_PLUS, TRIVIAL_MINUS):
        raise TrivialInvolution(
            f"{a} is {cls.branch}; no hyperbolic toral automorphism is reversed by +-Id"
        )
    if cls.branch == LOWER:
        result = _lower_recipe(cls.sign, cls.gamma)
    elif cls.branch == UPPER:
        result = _lower_recipe(cls.sign, cls.beta).T
    elif cls.alpha == 0:
        # A = (0, s; s, 0) reverses L iff c = -b.
        s = cls.beta
        result = IntMatrix2(3, s, -s, 0)
    else:
        alpha, beta = cls.alpha, cls.beta
        result = IntMatrix2(alpha, beta, (alpha * alpha - 1) // beta, alpha)
    assert result.det == 1 and is_hyperbolic(result) and reversibility_check(a, result), (a, result)
    return result
