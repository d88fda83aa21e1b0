"""Exact 2x2 integer matrix arithmetic and reversibility predicates.

Entries are Python ints, so there is no overflow: Pell units and long
centralizer orbits grow past 64 bits quickly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exceptions import NonUnimodular, PreconditionViolated

__all__ = [
    "IntMatrix2",
    "RationalVec2",
    "IDENTITY",
    "unimodular",
    "det",
    "mat_mul",
    "mat_inv",
    "mat_pow",
    "is_involution",
    "is_hyperbolic",
    "reversibility_check",
    "derivative_constraint_check",
    "is_perfect_square",
]


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value.strip())
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    raise TypeError(f"expected an integer entry, got {value!r}")


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major 2x2 integer matrix ``(a, b; c, d)``.

    No determinant constraint is imposed here; use :func:`unimodular` where
    ``|det| = 1`` is required.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _as_int(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "IntMatrix2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def parse(cls, text: str) -> "IntMatrix2":
        """Parse ``"a,b,c,d"`` (row-major). Entries may be arbitrarily long."""
        parts = [p for p in text.replace(";", ",").split(",")]
        if len(parts) != 4:
            raise ValueError(f"matrix must have four comma-separated integers, got {text!r}")
        try:
            return cls(*(int(p.strip()) for p in parts))
        except ValueError:
            raise ValueError(f"matrix entries must be integers, got {text!r}") from None

    @classmethod
    def from_json(cls, obj) -> "IntMatrix2":
        return cls.from_rows([[_as_int(v) for v in row] for row in obj])

    def to_json(self) -> list:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def T(self) -> "IntMatrix2":
        return IntMatrix2(self.a, self.c, self.b, self.d)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "IntMatrix2":
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def apply(self, v):
        """Multiply a column vector ``(x, y)``; works for ints and Fractions."""
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})"


IDENTITY = IntMatrix2(1, 0, 0, 1)


def unimodular(*entries) -> IntMatrix2:
    """Build a matrix and insist on ``det = +-1``.

    Accepts either four entries or a single existing matrix.
    """
    m = entries[0] if len(entries) == 1 and isinstance(entries[0], IntMatrix2) else IntMatrix2(*entries)
    if abs(m.det) != 1:
        raise NonUnimodular(f"{m} has determinant {m.det}, expected +1 or -1")
    return m


def det(m: IntMatrix2) -> int:
    return m.det


def mat_mul(m: IntMatrix2, n: IntMatrix2) -> IntMatrix2:
    return m @ n


def mat_inv(m: IntMatrix2) -> IntMatrix2:
    """Exact inverse ``sign(det) * adj(m)``."""
    s = m.det
    if abs(s) != 1:
        raise NonUnimodular(f"{m} has determinant {s}; no integer inverse")
    return IntMatrix2(s * m.d, -s * m.b, -s * m.c, s * m.a)


def mat_pow(m: IntMatrix2, n: int) -> IntMatrix2:
    """Integer power; negative exponents go through :func:`mat_inv`."""
    if n < 0:
        m, n = mat_inv(m), -n
    result = IDENTITY
    while n:
        if n & 1:
            result = result @ m
        m = m @ m
        n >>= 1
    return result


def is_involution(a: IntMatrix2) -> bool:
    return a @ a == IDENTITY


def is_hyperbolic(m: IntMatrix2) -> bool:
    """Hyperbolicity of a unimodular integer matrix.

    det = +1: ``trace**2 - 4 > 0``; det = -1: ``trace**2 + 4`` not a perfect
    square (an exact integer test, no floating point).
    """
    s = m.det
    if abs(s) != 1:
        raise NonUnimodular(f"{m} has determinant {s}")
    t = m.trace
    if s == 1:
        return t * t - 4 > 0
    return not is_perfect_square(t * t + 4)


def reversibility_check(a: IntMatrix2, m: IntMatrix2) -> bool:
    """True iff ``a @ m == inv(m) @ a`` exactly."""
    if not is_involution(a):
        raise PreconditionViolated(f"{a} is not an involution (A @ A != Id)")
    if abs(m.det) != 1:
        raise PreconditionViolated(f"{m} is not unimodular (det = {m.det})")
    return a @ m == mat_inv(m) @ a


# Rational 2x2 matrices are kept as plain 4-tuples of Fractions; they only
# appear in the derivative constraint check.
RationalMatrixLike = Union[IntMatrix2, Sequence]


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _as_rational_matrix(m: RationalMatrixLike) -> tuple:
    if isinstance(m, IntMatrix2):
        return tuple(Fraction(v) for v in m.as_tuple())
    flat: list = []
    for item in m:
        if isinstance(item, (list, tuple)):
            flat.extend(item)
        else:
            flat.append(item)
    if len(flat) != 4:
        raise ValueError(f"expected a 2x2 matrix, got {m!r}")
    return tuple(_as_fraction(v) for v in flat)


def _rmul(p: tuple, q: tuple) -> tuple:
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _rinv(p: tuple) -> tuple:
    a, b, c, d = p
    s = a * d - b * c
    if abs(s) != 1:
        raise NonUnimodular(f"rational matrix {p} has determinant {s}")
    return (d / s, -b / s, -c / s, a / s)


def derivative_constraint_check(
    dr_at_fp: RationalMatrixLike,
    df_at_p: RationalMatrixLike,
    dr_at_p: RationalMatrixLike,
    df_at_rp: RationalMatrixLike,
) -> bool:
    """Pointwise derivative condition forced on an R-reversible map.

    Differentiating ``R o g = g^-1 o R`` at ``p`` gives
    ``DR_{g(p)} Dg_p = (Dg_{R(p)})^-1 DR_p``. Returns whether the supplied
    (exact rational, ``|det| = 1``) matrices satisfy it.
    """
    mats = [_as_rational_matrix(m) for m in (dr_at_fp, df_at_p, dr_at_p, df_at_rp)]
    for m in mats:
        s = m[0] * m[3] - m[1] * m[2]
        if abs(s) != 1:
            raise NonUnimodular(f"rational matrix {m} has determinant {s}")
    r_fp, f_p, r_p, f_rp = mats
    return _rmul(r_fp, f_p) == _rmul(_rinv(f_rp), r_p)


@dataclass(frozen=True)
class RationalVec2:
    """Exact point of R^2 (or of the torus after :meth:`mod1`)."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def mod1(self) -> "RationalVec2":
        return RationalVec2(self.x % 1, self.y % 1)

    def __iter__(self) -> Iterable[Fraction]:
        yield self.x
        yield self.y

    def to_json(self) -> list:
        return [str(self.x), str(self.y)]

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"
