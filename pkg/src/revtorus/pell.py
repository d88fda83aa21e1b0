"""Generalized Pell equation ``x^2 - D*y^2 = N`` over the integers.

All sign regimes of ``D`` are handled:

* ``D < 0``: an ellipse, finitely many points, enumerated directly.
* ``D = 0`` or ``D = k^2``: the form factors; either finitely many points
  (divisor pairs of ``N``) or a union of rational lines.
* ``D > 0`` nonsquare: solutions split into finitely many orbits under
  multiplication by the fundamental unit ``t + u*sqrt(D)``. One canonical
  representative per orbit is found by a bounded search (Nagell's bounds),
  and each orbit is materialized on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .algebra import is_perfect_square
from .exceptions import LimitZero, SquareOrNonpositive

__all__ = [
    "PellProblem",
    "PellSolution",
    "PellSolutionSet",
    "ContinuedFractionExpansion",
    "cf_sqrt",
    "convergents",
    "fundamental_unit",
    "solve_pell",
    "brute_force_pell",
]

EMPTY = "Empty"
FINITE = "Finite"
INFINITE_CLASSES = "InfiniteClasses"
DEGENERATE_LINES = "DegenerateLines"


@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int

    def residual(self, x: int, y: int) -> int:
        return x * x - self.D * y * y - self.N

    def equation(self) -> str:
        """ASCII rendering, e.g. ``x^2+3y^2=36`` or ``x^2=64``."""
        D = self.D
        if D == 0:
            middle = ""
        elif D == 1:
            middle = "-y^2"
        elif D == -1:
            middle = "+y^2"
        elif D > 0:
            middle = f"-{D}y^2"
        else:
            middle = f"+{-D}y^2"
        return f"x^2{middle}={self.N}"

    def to_json(self) -> dict:
        return {"D": str(self.D), "N": str(self.N)}


@dataclass(frozen=True, order=True)
class PellSolution:
    x: int
    y: int

    def to_json(self) -> list:
        return [str(self.x), str(self.y)]


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    a0: int
    period: tuple

    def terms(self) -> Iterator[int]:
        yield self.a0
        while True:
            yield from self.period


def cf_sqrt(D: int) -> ContinuedFractionExpansion:
    """Periodic continued fraction of ``sqrt(D)`` for nonsquare ``D > 0``."""
    if D <= 0 or is_perfect_square(D):
        raise SquareOrNonpositive(f"D={D} must be a positive nonsquare")
    a0 = math.isqrt(D)
    m, q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = q * a - m
        q = (D - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    return ContinuedFractionExpansion(a0, tuple(period))


def convergents(expansion: ContinuedFractionExpansion, count: int) -> list:
    """First ``count`` convergents ``(p_k, q_k)``."""
    out = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    terms = expansion.terms()
    for _ in range(count):
        a = next(terms)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return out


def fundamental_unit(D: int) -> tuple:
    """Minimal ``(t, u)``, ``u > 0``, with ``t^2 - D*u^2 = 1``."""
    expansion = cf_sqrt(D)
    r = len(expansion.period)
    # Odd period: the first period end gives norm -1, its square is the unit.
    index = r - 1 if r % 2 == 0 else 2 * r - 1
    t, u = convergents(expansion, index + 1)[index]
    assert t * t - D * u * u == 1
    return t, u


def _unit_step(D: int, unit: tuple, x: int, y: int, k: int) -> tuple:
    t, u = unit
    if k > 0:
        return t * x + D * u * y, u * x + t * y
    return t * x - D * u * y, -u * x + t * y


def _class_key(sol: tuple) -> tuple:
    x, y = sol
    return (abs(y), y < 0, abs(x), x < 0)


def _canonical(D: int, unit: tuple, x: int, y: int) -> tuple:
    """Orbit representative minimizing ``(|y|, y<0, |x|, x<0)``.

    ``|y|`` is unimodal along a unit orbit (a |sinh| or cosh profile in the
    exponent), so walking downhill and then inspecting both neighbours of
    the bottom finds the global minimum.
    """
    cur = (x, y)
    for direction in (1, -1):
        while True:
            nxt = _unit_step(D, unit, *cur, direction)
            if abs(nxt[1]) < abs(cur[1]):
                cur = nxt
            else:
                break
    candidates = [cur, _unit_step(D, unit, *cur, 1), _unit_step(D, unit, *cur, -1)]
    return min(candidates, key=_class_key)


@dataclass(frozen=True)
class PellSolutionSet:
    """Result of :func:`solve_pell`.

    ``solutions`` holds what was materialized: everything for ``Finite``, and
    up to ``limit`` members of each orbit for ``InfiniteClasses``.
    ``lines`` (``DegenerateLines`` only) are triples ``(p, q, r)`` meaning
    ``p*x + q*y = r``.
    """

    problem: PellProblem
    kind: str
    solutions: tuple = ()
    fundamental_unit: Optional[tuple] = None
    class_representatives: tuple = ()
    lines: tuple = ()
    limit: Optional[int] = None
    classes: tuple = field(default=(), repr=False)

    @property
    def is_infinite(self) -> bool:
        return self.kind in (INFINITE_CLASSES, DEGENERATE_LINES)

    def orbit(self, rep: PellSolution) -> Iterator[PellSolution]:
        """Unit orbit of ``rep`` in the order k = 0, 1, -1, 2, -2, ..."""
        if self.kind != INFINITE_CLASSES:
            raise ValueError("orbits exist only for InfiniteClasses")
        D, unit = self.problem.D, self.fundamental_unit
        yield rep
        up = down = (rep.x, rep.y)
        while True:
            up = _unit_step(D, unit, *up, 1)
            yield PellSolution(*up)
            down = _unit_step(D, unit, *down, -1)
            yield PellSolution(*down)

    def within(self, bound: int) -> set:
        """Every solution with ``|x|, |y| <= bound`` (exact and complete)."""
        ok = lambda s: abs(s.x) <= bound and abs(s.y) <= bound  # noqa: E731
        if self.kind in (EMPTY, FINITE):
            return {s for s in self.solutions if ok(s)}
        out = set()
        if self.kind == DEGENERATE_LINES:
            for p, q, r in self.lines:
                # every line here has p = 1: x = r - q*y
                for y in range(-bound, bound + 1):
                    x = r - q * y
                    if abs(x) <= bound:
                        out.add(PellSolution(x, y))
            return out
        D, unit = self.problem.D, self.fundamental_unit
        for rep in self.class_representatives:
            if ok(rep):
                out.add(rep)
            for direction in (1, -1):
                cur = (rep.x, rep.y)
                while True:
                    cur = _unit_step(D, unit, *cur, direction)
                    # past the canonical rep |y| only grows
                    if abs(cur[1]) > bound:
                        break
                    if abs(cur[0]) <= bound:
                        out.add(PellSolution(*cur))
        return out

    def to_json(self) -> dict:
        out = {"kind": self.kind, "problem": self.problem.to_json()}
        if self.kind == FINITE:
            out["count"] = len(self.solutions)
            out["solutions"] = [s.to_json() for s in self.solutions]
        elif self.kind == INFINITE_CLASSES:
            out["fundamental_unit"] = [str(v) for v in self.fundamental_unit]
            out["class_representatives"] = [s.to_json() for s in self.class_representatives]
            out["limit"] = self.limit
            out["classes"] = [[s.to_json() for s in cls] for cls in self.classes]
        elif self.kind == DEGENERATE_LINES:
            out["lines"] = [[str(v) for v in line] for line in self.lines]
        return out


def _emit(problem: PellProblem, x: int, y: int) -> PellSolution:
    if problem.residual(x, y) != 0:
        raise AssertionError(f"({x}, {y}) does not solve {problem.equation()}")
    return PellSolution(x, y)


def _finite(problem: PellProblem, points) -> PellSolutionSet:
    sols = tuple(sorted({_emit(problem, x, y) for x, y in points}))
    return PellSolutionSet(problem, FINITE if sols else EMPTY, solutions=sols)


def _signed_divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    divs = set(small) | {n // d for d in small}
    return sorted(divs | {-d for d in divs})


def solve_pell(problem: PellProblem, limit: int = 10) -> PellSolutionSet:
    if limit < 1:
        raise LimitZero("limit must be at least 1")
    D, N = problem.D, problem.N

    if D < 0:
        if N < 0:
            return PellSolutionSet(problem, EMPTY)
        points = []
        ymax = math.isqrt(N // -D)
        for y in range(-ymax, ymax + 1):
            rest = N + D * y * y
            if is_perfect_square(rest):
                r = math.isqrt(rest)
                points += [(r, y), (-r, y)]
        return _finite(problem, points)

    if is_perfect_square(D):
        k = math.isqrt(D)
        if N == 0:
            lines = {(1, -k, 0), (1, k, 0)}
            return PellSolutionSet(problem, DEGENERATE_LINES, lines=tuple(sorted(lines)))
        if k == 0:
            if not is_perfect_square(N):
                return PellSolutionSet(problem, EMPTY)
            r = math.isqrt(N)
            lines = {(1, 0, r), (1, 0, -r)}
            return PellSolutionSet(problem, DEGENERATE_LINES, lines=tuple(sorted(lines)))
        # (x - k y)(x + k y) = N
        points = []
        for d1 in _signed_divisors(N):
            d2 = N // d1
            if (d1 + d2) % 2 == 0 and (d2 - d1) % (2 * k) == 0:
                points.append(((d1 + d2) // 2, (d2 - d1) // (2 * k)))
        return _finite(problem, points)

    if N == 0:
        return _finite(problem, [(0, 0)])

    unit = fundamental_unit(D)
    t, u = unit
    # Nagell: every orbit has a member with y in [ylo, yhi].
    if N > 0:
        ylo, yhi = 0, math.isqrt(N * (t - 1) // (2 * D)) + 1
    else:
        ylo = math.isqrt(-N // D)
        yhi = math.isqrt(-N * (t + 1) // (2 * D)) + 1
    reps = set()
    for y in range(ylo, yhi + 1):
        rest = N + D * y * y
        if rest >= 0 and is_perfect_square(rest):
            r = math.isqrt(rest)
            for x in {r, -r}:
                for sx, sy in ((x, y), (-x, -y)):
                    reps.add(_canonical(D, unit, sx, sy))
    if not reps:
        return PellSolutionSet(problem, EMPTY, fundamental_unit=unit)
    reps = tuple(sorted((_emit(problem, *r) for r in reps), key=lambda s: _class_key((s.x, s.y))))
    base = PellSolutionSet(problem, INFINITE_CLASSES, fundamental_unit=unit, class_representatives=reps)
    classes = []
    for rep in reps:
        members = []
        for sol in base.orbit(rep):
            members.append(_emit(problem, sol.x, sol.y))
            if len(members) >= limit:
                break
        classes.append(tuple(members))
    flat = tuple(s for cls in classes for s in cls)
    return PellSolutionSet(
        problem,
        INFINITE_CLASSES,
        solutions=flat,
        fundamental_unit=unit,
        class_representatives=reps,
        limit=limit,
        classes=tuple(classes),
    )


def brute_force_pell(problem: PellProblem, bound: int) -> list:
    """All solutions with ``|x|, |y| <= bound`` by scanning ``y``.

    Deliberately independent of :func:`solve_pell`; used as its oracle.
    """
    D, N = problem.D, problem.N
    out = set()
    for y in range(-bound, bound + 1):
        rest = N + D * y * y
        if rest < 0:
            continue
        r = math.isqrt(rest)
        if r * r == rest and r <= bound:
            out.add(PellSolution(r, y))
            out.add(PellSolution(-r, y))
    return sorted(out)
