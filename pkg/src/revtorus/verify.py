"""Named invariant suites. Each property reports pass/fail with a short detail."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    IDENTITY,
    IntMatrix2,
    derivative_constraint_check,
    is_hyperbolic,
    is_involution,
    mat_inv,
    mat_mul,
    reversibility_check,
)
from .involutions import (
    classify_involution,
    construct_reversible_anosov,
    enumerate_involutions,
    fixed_line,
    reconstruct,
)
from .pell import PellProblem, brute_force_pell, fundamental_unit, solve_pell
from .reversors import find_reversors, orientation_reversing_obstruction, r_centralizer_orbit
from .tables import (
    orientation_reversing_table,
    reversor_table,
)

__all__ = ["PropertyResult", "SUITES", "run_suite", "suite_names", "LINEAR_PAIRS"]

# (L, A) with A reversing L
LINEAR_PAIRS = (
    (IntMatrix2(2, 1, 3, 2), IntMatrix2(2, 1, -3, -2)),
    (IntMatrix2(2, 1, 1, 1), IntMatrix2(5, 3, -8, -5)),
    (IntMatrix2(3, 4, 2, 3), IntMatrix2(1, 0, 0, -1)),
)


@dataclass(frozen=True)
class PropertyResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "property": self.name, "passed": self.passed, "detail": self.detail}


def _unimodular_sample(rng: random.Random, size: int, spread: int) -> IntMatrix2:
    # products of elementary shears stay in SL(2, Z)
    m = IDENTITY
    for _ in range(size):
        k = rng.randint(-spread, spread)
        m = m @ (IntMatrix2(1, k, 0, 1) if rng.random() < 0.5 else IntMatrix2(1, 0, k, 1))
    return m


def _exact_algebra(seed: int):
    rng = random.Random(seed)
    ok = all(
        mat_mul(m, mat_inv(m)) == IDENTITY for m in (_unimodular_sample(rng, 6, 10**6) for _ in range(500))
    )
    yield "inverse", ok, "500 random products of shears"
    pairs = [(a, m) for m, a in LINEAR_PAIRS]
    yield "reverses-inverse", all(reversibility_check(a, mat_inv(m)) for a, m in pairs), ""
    yield "conjugation-form", all(a @ m @ a == mat_inv(m) for a, m in pairs), "A L A = L^-1"


def _classification(seed: int):
    invs = enumerate_involutions(50)
    yield "enumeration-size", len(invs) > 0, f"{len(invs)} involutions with |entries| <= 50"
    dets = all(a.det == -1 or a in (IDENTITY, -IDENTITY) for a in invs)
    yield "det-minus-one-or-trivial", dets, ""
    yield "round-trip", all(reconstruct(classify_involution(a)) == a for a in invs), ""
    nontrivial = [a for a in invs if a not in (IDENTITY, -IDENTITY)]
    fixed = all(a.apply(fixed_line(a).direction) == fixed_line(a).direction for a in nontrivial)
    yield "fixed-line-is-fixed", fixed, ""


def _involutions_up_to(bound: int):
    for a in enumerate_involutions(bound):
        if a in (IDENTITY, -IDENTITY):
            continue
        cls = classify_involution(a)
        params = [v for v in (cls.gamma, cls.alpha, cls.beta) if v is not None]
        if all(abs(v) <= bound for v in params):
            yield a


def _find_l(seed: int):
    bad = []
    count = 0
    for a in _involutions_up_to(20):
        count += 1
        m = construct_reversible_anosov(a)
        if not (m.det == 1 and is_hyperbolic(m) and reversibility_check(a, m)):
            bad.append(str(a))
    yield "constructor-soundness", not bad, f"{count} involutions; failures: {bad[:3]}"


def _pell(seed: int):
    bad = []
    for D in range(-12, 13):
        for N in range(-40, 41):
            if N == 0:
                continue
            prob = PellProblem(D, N)
            got = solve_pell(prob).within(200)
            want = set(brute_force_pell(prob, 200))
            if got != want:
                bad.append((D, N))
    yield "oracle-agreement", not bad, f"|D| <= 12, |N| <= 40, box 200; mismatches {bad[:3]}"
    for D in (2, 5, 12, 396):
        t, u = fundamental_unit(D)
        minimal = all(not (x * x - D * y * y == 1) for y in range(1, u) for x in [math.isqrt(1 + D * y * y)])
        yield f"unit-D{D}", t * t - D * u * u == 1 and minimal, f"({t},{u})"


TABLE_ONE = [
    ["(2,1;3,2)", "g=0", "g=0", "g=0", "g=0", "Example: (2,1;-3,-2)"],
    ["(2,1;1,1)", "g=-1", "g=-1", "g=1", "g=1", "Example: (5,3;-8,-5)"],
    ["(4,9;7,16)", "-", "-", "-", "-", "-"],
]
TABLE_TWO = [
    ["(2,3;1,1)", "-3", "x^2+3y^2=36", "6", "Ellipse", "-"],
    ["(3,4;1,1)", "0", "x^2=64", "inf", "Two vertical lines", "-"],
    ["(4,5;1,1)", "5", "x^2-5y^2=100", "inf", "Hyperbola", "-"],
]


def _tables(seed: int):
    got = reversor_table()
    for want_row, got_row in zip(TABLE_ONE, got):
        yield f"row-{want_row[0]}", want_row == got_row, " | ".join(got_row)
    got = orientation_reversing_table()
    for want_row, got_row in zip(TABLE_TWO, got):
        yield f"row-{want_row[0]}", want_row == got_row, " | ".join(got_row)


def _orientation_reversing(seed: int):
    mats = [IntMatrix2(2, 3, 1, 1), IntMatrix2(3, 4, 1, 1), IntMatrix2(4, 5, 1, 1), IntMatrix2(1, 1, 1, 0)]
    for m in mats:
        rec = orientation_reversing_obstruction(m)
        rep = find_reversors(m, alpha_beta_bound=20)
        yield f"certificate-{m}", rec.verify() and rec.verdict == "empty", rec.conclusion
        yield f"empty-{m}", not rep.involutions, ""


def _centralizer(seed: int):
    a, m = IntMatrix2(2, 1, -3, -2), IntMatrix2(2, 1, 3, 2)
    orbit = r_centralizer_orbit(a, m, range(-5, 6))
    ok = len(set(orbit)) == 11 and all(is_involution(r) and reversibility_check(r, m) for r in orbit)
    yield "orbit-11-distinct", ok, f"{len(set(orbit))} distinct"


def _nofranks(seed: int):
    a = IntMatrix2(1, 0, 0, -1)

    def pair(eta):
        s = 1 + Fraction(eta)
        return (s, 0, Fraction(eta), -1 / s), (s, 0, 0, -1 / s)

    for eta in (Fraction(1, 10), Fraction(1, 2), Fraction(3)):
        lp, lfp = pair(eta)
        yield f"reject-eta-{eta}", not derivative_constraint_check(a, lp, a, lfp), ""
    lp, lfp = pair(0)
    yield "accept-eta-0", derivative_constraint_check(a, lp, a, lfp), ""


def _reversibility(seed: int):
    from .dynamics import LinearInvolution, StandardMap, StandardReversor, ToralAutomorphism, check_reversibility

    for sigma in (0.5, 1.0, 6.0):
        res = check_reversibility(StandardMap(sigma), StandardReversor(sigma), samples=10_000, seed=seed)
        ok = res.reversal < 1e-10 and res.involution < 1e-12
        yield f"standard-map-{sigma}", ok, f"reversal {res.reversal:.2e}, involution {res.involution:.2e}"
    for m, a in LINEAR_PAIRS:
        res = check_reversibility(ToralAutomorphism(m), LinearInvolution(a), samples=10_000, seed=seed)
        yield f"linear-{m}", res.max < 1e-9, f"{res.max:.2e}"


def _eigvecs(m: IntMatrix2):
    a, b, c, d = (float(v) for v in m.as_tuple())
    tr = a + d
    disc = math.sqrt(tr * tr - 4.0 * (a * d - b * c))
    lu = (tr + disc) / 2 if tr > 0 else (tr - disc) / 2
    ls = (a * d - b * c) / lu
    # (b, lambda - a) is an eigenvector whenever b != 0
    vu = np.array([b, lu - a])
    vs = np.array([b, ls - a])
    return vu / np.linalg.norm(vu), vs / np.linalg.norm(vs), abs(lu)


def _lemma_rigidity(seed: int, n: int = 10_000, points: int = 50):
    from .dynamics import LinearInvolution, ToralAutomorphism, check_splitting_swap, exponent_symmetry, line_angle

    pts = np.random.default_rng(seed).random((points, 2))
    for m, a in LINEAR_PAIRS:
        f, r = ToralAutomorphism(m), LinearInvolution(a)
        diff = exponent_symmetry(f, r, pts, n=n, seed=seed).max()
        yield f"exponent-symmetry-{m}", diff < 5e-3, f"max diff {diff:.2e} (n={n}, {points} points)"
        vu, vs, _ = _eigvecs(m)
        A = np.array(a.rows(), dtype=float)
        angle = max(line_angle(A @ vu, vs), line_angle(A @ vs, vu))
        yield f"eigenvector-swap-{m}", angle < 1e-8, f"{angle:.2e}"
        swap = check_splitting_swap(f, r, pts[0])
        yield f"oseledets-swap-{m}", swap < 1e-8, f"{swap:.2e}"


def domination_threshold(lam: float) -> int:
    """Smallest m with ``lam**(-2m) <= 1/2``."""
    return max(0, math.ceil(math.log(2.0) / (2.0 * math.log(lam)) - 1e-12))


def _domination(seed: int):
    from .dynamics import LinearInvolution, ToralAutomorphism, domination_check, reflected_domination_ratio

    p = np.random.default_rng(seed).random(2)
    for m, a in LINEAR_PAIRS:
        f, r = ToralAutomorphism(m), LinearInvolution(a)
        _, _, lam = _eigvecs(m)
        mstar = domination_threshold(lam)
        worst, flips, refl = 0.0, True, 0.0
        for k in range(0, 11):
            est = domination_check(f, p, k)
            if k >= 1:
                worst = max(worst, abs(est.ratio - lam ** (-2 * k)) / lam ** (-2 * k))
                refl = max(refl, abs(reflected_domination_ratio(f, r, p, k) - est.ratio) / est.ratio)
            flips &= est.dominated == (k >= mstar)
        yield f"ratio-{m}", worst < 1e-9, f"max relative error {worst:.2e}"
        yield f"threshold-{m}", flips, f"dominated from m={mstar}"
        yield f"reflected-{m}", refl < 1e-9, f"max relative error {refl:.2e}"


SUITES = {
    "exact-algebra": _exact_algebra,
    "classification": _classification,
    "find-l": _find_l,
    "pell": _pell,
    "tables": _tables,
    "orientation-reversing": _orientation_reversing,
    "centralizer": _centralizer,
    "nofranks": _nofranks,
    "reversibility": _reversibility,
    "lemma-rigidity": _lemma_rigidity,
    "domination": _domination,
}


def suite_names() -> list:
    return list(SUITES) + ["all"]


def run_suite(name: str, seed: int = 0) -> list:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        if suite not in SUITES:
            raise KeyError(suite)
        try:
            for prop, passed, detail in SUITES[suite](seed):
                out.append(PropertyResult(suite, prop, bool(passed), detail))
        except Exception as exc:  # a crash is a failed property, not a lost report
            out.append(PropertyResult(suite, "completed", False, f"{type(exc).__name__}: {exc}"))
    return out
