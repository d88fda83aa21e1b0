"""Exact rational orbits of toral automorphisms and (R, f)-freeness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .._validation import check_rational_point
from ..algebra import IntMatrix2, RationalVec2, is_involution, mat_inv, unimodular
from ..exceptions import NotInvolution

__all__ = ["FreeVerdict", "rf_free_test", "rational_orbit"]


def _step(m: IntMatrix2, p: RationalVec2) -> RationalVec2:
    return RationalVec2(*m.apply(p)).mod1()


def rational_orbit(m: IntMatrix2, p, max_steps: Optional[int] = None) -> list:
    """The full periodic orbit of a rational point, starting at ``p mod 1``.

    A point with common denominator ``q`` has period at most ``q**2``.
    """
    p = check_rational_point(p).mod1()
    q = math.lcm(p.x.denominator, p.y.denominator)
    cap = q * q if max_steps is None else min(max_steps, q * q)
    orbit = [p]
    cur = _step(m, p)
    while cur != p and len(orbit) < cap:
        orbit.append(cur)
        cur = _step(m, cur)
    return orbit


@dataclass(frozen=True)
class FreeVerdict:
    """``index`` is the smallest ``|i|`` with ``f^i(p) = R(p)``, or None.

    ``conclusive`` is True when the horizon covered the whole period, so a
    ``Free`` verdict holds for the entire orbit.
    """

    free: bool
    index: Optional[int]
    period: Optional[int]
    conclusive: bool

    def __str__(self) -> str:
        return "Free" if self.free else f"NotFreeAt({self.index})"

    def to_json(self) -> dict:
        return {
            "verdict": str(self),
            "free": self.free,
            "index": self.index,
            "period": self.period,
            "conclusive": self.conclusive,
        }


def rf_free_test(m: IntMatrix2, a: IntMatrix2, p, horizon: int) -> FreeVerdict:
    """Is the f-orbit of ``p`` (R, f)-free, for ``f = m`` and ``R = a`` mod 1?

    The orbit is free exactly when ``R(p)`` is not on it. Iterates
    ``f^i(p)`` for ``|i| <= horizon`` are compared with ``R(p)`` in exact
    arithmetic.
    """
    m = unimodular(m)
    if not is_involution(a):
        raise NotInvolution(f"{a} does not square to the identity")
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    p = check_rational_point(p).mod1()
    target = RationalVec2(*a.apply(p)).mod1()
    orbit = rational_orbit(m, p, max_steps=horizon + 1)
    period = len(orbit) if _step(m, orbit[-1]) == p else None
    if period is not None:
        hits = [i for k in range(period) if orbit[k] == target for i in (k, k - period)]
    else:
        back = [p]
        inv = mat_inv(m)
        while len(back) <= horizon:
            back.append(_step(inv, back[-1]))
        hits = [k for k, pt in enumerate(orbit) if pt == target]
        hits += [-k for k, pt in enumerate(back) if pt == target]
    hits = [i for i in hits if abs(i) <= horizon]
    if hits:
        best = min(hits, key=lambda i: (abs(i), i < 0))
        return FreeVerdict(False, best, period, True)
    return FreeVerdict(True, None, period, period is not None)
