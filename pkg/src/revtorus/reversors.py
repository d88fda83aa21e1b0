"""Linear involutions reversing a hyperbolic toral automorphism.

For ``L = (a, b; c, d)`` the triangular involutions are solved in closed
form (a single divisibility test each). Generic involutions
``(alpha, beta; (1-alpha^2)/beta, -alpha)`` reversing ``L`` are the
integer points of a conic; the substitution
``x = 2*b*alpha + s*beta, y = beta`` with ``s = d - a`` (``a + d`` when
``det L = -1``) turns it into ``x^2 - D*y^2 = 4*b^2``. Those points are
found twice: from the Pell orbits, and by a bounded scan over
``(alpha, beta)``. Each reported involution records which route found it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import (
    IntMatrix2,
    is_hyperbolic,
    is_involution,
    mat_inv,
    mat_pow,
    reversibility_check,
)
from .exceptions import NonUnimodular, NotHyperbolic, NotReversor, WrongOrientation
from .involutions import GENERIC, LOWER, UPPER, classify_involution
from .pell import PellProblem, PellSolution, PellSolutionSet, solve_pell

__all__ = [
    "TriangularReversor",
    "GenericReversor",
    "ObstructionRecord",
    "ReversorReport",
    "find_reversors",
    "pell_problem_for",
    "pell_to_involution",
    "orientation_reversing_obstruction",
    "r_centralizer_orbit",
    "TRIANGULAR_SLOTS",
]

# Column order of the reversor table: (branch, sign).
TRIANGULAR_SLOTS = ((LOWER, 1), (UPPER, 1), (LOWER, -1), (UPPER, -1))

PELL = "pell"
SCAN = "scan"


@dataclass(frozen=True)
class TriangularReversor:
    branch: str
    sign: int
    gamma: int

    @property
    def matrix(self) -> IntMatrix2:
        if self.branch == LOWER:
            return IntMatrix2(self.sign, 0, self.gamma, -self.sign)
        return IntMatrix2(self.sign, self.gamma, 0, -self.sign)

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "sign": self.sign,
            "gamma": str(self.gamma),
            "matrix": self.matrix.to_json(),
        }


@dataclass(frozen=True)
class GenericReversor:
    matrix: IntMatrix2
    methods: frozenset

    @property
    def alpha(self) -> int:
        return self.matrix.a

    @property
    def beta(self) -> int:
        return self.matrix.b

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "found_by": sorted(self.methods),
        }


@dataclass(frozen=True)
class ObstructionRecord:
    """Why no linear involution reverses an orientation-reversing ``L``.

    For a generic involution the reversing equation ``A L = L^-1 A``
    reduces to three polynomial constraints ``E1 = E2 = E3 = 0`` in
    ``(alpha, beta)``, and

        beta*(a + d) = alpha*E3 + (1 - alpha^2)*E1 - beta*E2

    identically, so any solution has ``beta*(a+d) = 0``: impossible since
    ``beta != 0`` and hyperbolicity forces ``a + d != 0``. Triangular
    involutions force ``b = 0`` (lower) or ``c = 0`` (upper), both excluded
    for hyperbolic ``L``. :meth:`verify` re-checks every step exactly.
    """

    matrix: IntMatrix2
    constraint1: str
    constraint2: str
    constraint3: str
    conclusion: str
    certificate: str
    triangular: str
    verdict: str

    def _polys(self, alpha: int, beta: int) -> tuple:
        a, b, c, d = self.matrix.as_tuple()
        e1 = alpha * b + beta * d
        e2 = alpha * beta * c - a * (1 - alpha * alpha)
        e3 = b * alpha * alpha + alpha * beta * (a + d) + beta * beta * c - b
        return e1, e2, e3

    def verify(self) -> bool:
        a, b, c, d = self.matrix.as_tuple()
        if self.matrix.det != -1 or a + d == 0 or b == 0 or c == 0:
            return False
        linv = mat_inv(self.matrix)
        # Degrees are <= 3 in alpha and <= 2 in beta, so agreement on a
        # 5x5 grid is a polynomial identity.
        for alpha in range(-2, 3):
            for beta in range(-2, 3):
                e1, e2, e3 = self._polys(alpha, beta)
                if beta * (a + d) != alpha * e3 + (1 - alpha * alpha) * e1 - beta * e2:
                    return False
                if beta == 0:
                    continue
                # beta * (A L - L^-1 A) == [[E3, 2 beta E1], [-2 E2, -E3]]
                gam = Fraction(1 - alpha * alpha, beta)
                A = (Fraction(alpha), Fraction(beta), gam, Fraction(-alpha))
                L = tuple(Fraction(v) for v in self.matrix.as_tuple())
                Li = tuple(Fraction(v) for v in linv.as_tuple())
                lhs = _fmul(A, L)
                rhs = _fmul(Li, A)
                diff = tuple(beta * (p - q) for p, q in zip(lhs, rhs))
                if diff != (e3, 2 * beta * e1, -2 * e2, -e3):
                    return False
        # Triangular families: the off-diagonal entry of A L - L^-1 A.
        for sign in (1, -1):
            for g in range(-2, 3):
                lower = IntMatrix2(sign, 0, g, -sign)
                upper = IntMatrix2(sign, g, 0, -sign)
                if (lower @ self.matrix).b - (linv @ lower).b != 2 * sign * b:
                    return False
                if (upper @ self.matrix).c - (linv @ upper).c != -2 * sign * c:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "constraint1": self.constraint1,
            "constraint2": self.constraint2,
            "constraint3": self.constraint3,
            "conclusion": self.conclusion,
            "certificate": self.certificate,
            "triangular": self.triangular,
            "verdict": self.verdict,
            "verified": self.verify(),
        }


def _fmul(p, q):
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@dataclass(frozen=True)
class ReversorReport:
    matrix: IntMatrix2
    orientation: str
    triangular_solutions: tuple
    generic_solutions: tuple
    pell_problem: PellProblem
    pell_solutions: PellSolutionSet
    conic_discriminant: int
    truncated: bool
    limits: dict
    obstruction: Optional[ObstructionRecord] = None
    cross_check: dict = field(default_factory=dict)

    def triangular_cells(self) -> list:
        """One entry per table column: the gamma, or None when no solution."""
        found = {(t.branch, t.sign): t.gamma for t in self.triangular_solutions}
        return [found.get(slot) for slot in TRIANGULAR_SLOTS]

    @property
    def involutions(self) -> list:
        return [t.matrix for t in self.triangular_solutions] + [g.matrix for g in self.generic_solutions]

    def to_json(self) -> dict:
        out = {
            "matrix": self.matrix.to_json(),
            "orientation": self.orientation,
            "triangular_solutions": [t.to_json() for t in self.triangular_solutions],
            "generic_solutions": [g.to_json() for g in self.generic_solutions],
            "truncated": self.truncated,
            "limits": self.limits,
            "pell_problem": self.pell_problem.to_json(),
            "pell_kind": self.pell_solutions.kind,
            "conic_discriminant": str(self.conic_discriminant),
            "cross_check": self.cross_check,
        }
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        return out


def _check_hyperbolic(m: IntMatrix2) -> None:
    if abs(m.det) != 1:
        raise NonUnimodular(f"{m} has determinant {m.det}")
    if not is_hyperbolic(m):
        raise NotHyperbolic(f"{m} is not hyperbolic")


def _shift(m: IntMatrix2) -> int:
    return m.d - m.a if m.det == 1 else m.a + m.d


def pell_problem_for(m: IntMatrix2) -> PellProblem:
    """The Pell equation whose solutions parametrize generic reversors."""
    a, b, c, d = m.as_tuple()
    D = (a + d) ** 2 - 4 if m.det == 1 else (a - d) ** 2 - 4
    return PellProblem(D, 4 * b * b)


def pell_to_involution(m: IntMatrix2, s: PellSolution) -> Optional[IntMatrix2]:
    """Undo ``x = 2*b*alpha + shift*beta, y = beta``; keep only valid reversors."""
    b = m.b
    beta = s.y
    num = s.x - _shift(m) * beta
    if beta == 0 or b == 0 or num % (2 * b):
        return None
    alpha = num // (2 * b)
    if (1 - alpha * alpha) % beta:
        return None
    a = IntMatrix2(alpha, beta, (1 - alpha * alpha) // beta, -alpha)
    return a if reversibility_check(a, m) else None


def _triangular(m: IntMatrix2) -> list:
    a, b, c, d = m.as_tuple()
    out = []
    for branch, sign in TRIANGULAR_SLOTS:
        coeff = b if branch == LOWER else c
        target = (d - a) if sign == 1 else (a - d)
        if coeff and target % coeff == 0:
            t = TriangularReversor(branch, sign, target // coeff)
            if reversibility_check(t.matrix, m):
                out.append(t)
    return out


def _scan(m: IntMatrix2, bound: int) -> set:
    found = set()
    for alpha in range(-bound, bound + 1):
        rest = 1 - alpha * alpha
        for beta in range(-bound, bound + 1):
            if beta == 0 or rest % beta:
                continue
            a = IntMatrix2(alpha, beta, rest // beta, -alpha)
            if reversibility_check(a, m):
                found.add(a)
    return found


def _pell_route(m: IntMatrix2, pell: PellSolutionSet, bound: int) -> set:
    candidates = set(pell.solutions)
    if pell.kind != "Empty":
        # enough to cover every |alpha|, |beta| <= bound
        xbound = (2 * abs(m.b) + abs(_shift(m))) * bound
        candidates |= pell.within(xbound)
    found = set()
    for s in candidates:
        a = pell_to_involution(m, s)
        if a is not None:
            found.add(a)
    return found


def orientation_reversing_obstruction(m: IntMatrix2) -> ObstructionRecord:
    if abs(m.det) != 1:
        raise NonUnimodular(f"{m} has determinant {m.det}")
    if m.det == 1:
        raise WrongOrientation(f"{m} preserves orientation (det = 1)")
    if not is_hyperbolic(m):
        raise NotHyperbolic(f"{m} is not hyperbolic")
    a, b, c, d = m.as_tuple()
    tr = a + d
    record = ObstructionRecord(
        matrix=m,
        constraint1=f"E1: alpha*b + beta*d = {b}*alpha + {d}*beta = 0",
        constraint2=f"E2: alpha*beta*c - a*(1 - alpha^2) = {c}*alpha*beta - {a}*(1 - alpha^2) = 0",
        constraint3=(
            "E3: b*alpha^2 + alpha*beta*(a + d) + beta^2*c - b = "
            f"{b}*alpha^2 + {tr}*alpha*beta + {c}*beta^2 - {b} = 0"
        ),
        conclusion=f"beta*(a + d) = {tr}*beta = 0",
        certificate="beta*(a + d) = alpha*E3 + (1 - alpha^2)*E1 - beta*E2",
        triangular=(
            f"lower-triangular reversors force b = 0 (b = {b}); "
            f"upper-triangular reversors force c = 0 (c = {c})"
        ),
        verdict="empty" if tr != 0 else "inconclusive",
    )
    return record


def find_reversors(
    m: IntMatrix2,
    alpha_beta_bound: int = 50,
    pell_class_limit: int = 20,
) -> ReversorReport:
    """Every linear involution reversing ``m``, with provenance.

    Triangular solutions are exact. Generic solutions form an infinite
    family when nonempty; the listing covers each Pell orbit up to
    ``pell_class_limit`` members plus everything with
    ``|alpha|, |beta| <= alpha_beta_bound``.
    """
    _check_hyperbolic(m)
    problem = pell_problem_for(m)
    pell = solve_pell(problem, limit=pell_class_limit)
    from_pell = _pell_route(m, pell, alpha_beta_bound)
    from_scan = _scan(m, alpha_beta_bound)
    limits = {"alpha_beta_bound": alpha_beta_bound, "pell_class_limit": pell_class_limit}

    if m.det == -1:
        obstruction = orientation_reversing_obstruction(m)
        cross = {"pell_found": len(from_pell), "scan_found": len(from_scan), "certificate_verified": obstruction.verify()}
        if from_pell or from_scan or not cross["certificate_verified"]:
            raise AssertionError(f"orientation-reversing obstruction contradicted for {m}: {cross}")
        return ReversorReport(
            matrix=m,
            orientation="reversing",
            triangular_solutions=(),
            generic_solutions=(),
            pell_problem=problem,
            pell_solutions=pell,
            conic_discriminant=problem.D,
            truncated=False,
            limits=limits,
            obstruction=obstruction,
            cross_check=cross,
        )

    triangular = _triangular(m)
    generic = []
    for a in from_pell | from_scan:
        # alpha = +-1 gives c = 0: already listed as upper triangular
        if classify_involution(a).branch != GENERIC:
            continue
        methods = frozenset(name for name, pool in ((PELL, from_pell), (SCAN, from_scan)) if a in pool)
        generic.append(GenericReversor(a, methods))
    generic.sort(key=lambda g: (max(abs(v) for v in g.matrix.as_tuple()), g.matrix.as_tuple()))
    for a in [t.matrix for t in triangular] + [g.matrix for g in generic]:
        assert reversibility_check(a, m), a
    return ReversorReport(
        matrix=m,
        orientation="preserving",
        triangular_solutions=tuple(triangular),
        generic_solutions=tuple(generic),
        pell_problem=problem,
        pell_solutions=pell,
        conic_discriminant=problem.D,
        truncated=pell.is_infinite,
        limits=limits,
        cross_check={"pell_found": len(from_pell), "scan_found": len(from_scan)},
    )


def r_centralizer_orbit(a: IntMatrix2, m: IntMatrix2, n_range: Iterable[int]) -> list:
    """Involutions ``a @ m**n`` for ``n`` in ``n_range``; each one reverses ``m``."""
    if not (is_involution(a) and abs(m.det) == 1 and reversibility_check(a, m)):
        raise NotReversor(f"{a} does not reverse {m}")
    out = []
    for n in n_range:
        r = a @ mat_pow(m, n)
        assert is_involution(r) and reversibility_check(r, m), (n, r)
        out.append(r)
    if len(set(out)) != len(out):
        raise AssertionError("r-centralizer orbit repeats; m has finite order")
    return out
