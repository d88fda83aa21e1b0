"""One test per acceptance criterion, each with its wall-time budget."""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from revtorus import (
    IntMatrix2,
    PellProblem,
    brute_force_pell,
    construct_reversible_anosov,
    derivative_constraint_check,
    find_reversors,
    fundamental_unit,
    is_hyperbolic,
    is_involution,
    orientation_reversing_obstruction,
    reversibility_check,
    r_centralizer_orbit,
    solve_pell,
)
from revtorus.dynamics import (
    LinearInvolution,
    StandardMap,
    StandardReversor,
    ToralAutomorphism,
    check_reversibility,
    domination_check,
    exponent_symmetry,
    line_angle,
    lyapunov_plus,
    reflected_domination_ratio,
)
from revtorus.tables import orientation_reversing_table, reversor_table

M = IntMatrix2
criterion = pytest.mark.criterion

# (L, A) with A reversing L
PAIRS = [
    (M(2, 1, 3, 2), M(2, 1, -3, -2)),
    (M(2, 1, 1, 1), M(5, 3, -8, -5)),
    (M(3, 4, 2, 3), M(1, 0, 0, -1)),
]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def eigen(m):
    a, b, c, d = (float(v) for v in m.as_tuple())
    w, v = np.linalg.eig(np.array([[a, b], [c, d]]))
    order = np.argsort(-np.abs(w))
    return abs(w[order[0]]), v[:, order[0]], v[:, order[1]]


@criterion(1, "table reproduction")
def test_table_reproduction():
    with budget(1.0):
        one = find_reversors(M(2, 1, 3, 2))
        two = find_reversors(M(2, 1, 1, 1))
        three = find_reversors(M(4, 9, 7, 16))
        table = reversor_table()
    assert one.triangular_cells() == [0, 0, 0, 0]
    assert M(2, 1, -3, -2) in [g.matrix for g in one.generic_solutions]
    assert two.triangular_cells() == [-1, -1, 1, 1]
    assert M(5, 3, -8, -5) in [g.matrix for g in two.generic_solutions]
    assert three.triangular_cells() == [None] * 4 and three.involutions == []
    assert table == [
        ["(2,1;3,2)", "g=0", "g=0", "g=0", "g=0", "Example: (2,1;-3,-2)"],
        ["(2,1;1,1)", "g=-1", "g=-1", "g=1", "g=1", "Example: (5,3;-8,-5)"],
        ["(4,9;7,16)", "-", "-", "-", "-", "-"],
    ]


@criterion(2, "orientation-reversing table")
def test_orientation_reversing_table():
    expected = {
        M(2, 3, 1, 1): (-3, "x^2+3y^2=36", "Finite", 6),
        M(3, 4, 1, 1): (0, "x^2=64", "DegenerateLines", None),
        M(4, 5, 1, 1): (5, "x^2-5y^2=100", "InfiniteClasses", None),
    }
    with budget(1.0):
        reports = {m: find_reversors(m) for m in expected}
        certs = {m: orientation_reversing_obstruction(m) for m in expected}
        table = orientation_reversing_table()
    for m, (delta, eq, kind, count) in expected.items():
        rep = reports[m]
        assert rep.pell_problem.D == delta
        assert rep.pell_problem.equation() == eq
        assert rep.pell_solutions.kind == kind
        if count is not None:
            assert len(rep.pell_solutions.solutions) == count
        assert rep.involutions == []
        assert certs[m].verdict == "empty" and certs[m].verify()
    assert [row[1:] for row in table] == [
        ["-3", "x^2+3y^2=36", "6", "Ellipse", "-"],
        ["0", "x^2=64", "inf", "Two vertical lines", "-"],
        ["5", "x^2-5y^2=100", "inf", "Hyperbola", "-"],
    ]


def _minimal_unit_by_scan(D):
    u = 1
    while True:
        t = math.isqrt(1 + D * u * u)
        if t * t == 1 + D * u * u:
            return t, u
        u += 1


@criterion(3, "Pell solver vs brute-force oracle")
def test_pell_against_oracle():
    mismatches = []
    with budget(30.0):
        for D in range(-30, 31):
            for N in range(-100, 101):
                p = PellProblem(D, N)
                if solve_pell(p).within(500) != set(brute_force_pell(p, 500)):
                    mismatches.append((D, N))
        for D in (2, 5, 12, 396):
            t, u = fundamental_unit(D)
            assert t * t - D * u * u == 1
            assert (t, u) == _minimal_unit_by_scan(D)
    assert mismatches == []


def _involutions_by_parameters(bound):
    r = range(-bound, bound + 1)
    for g in r:
        for s in (1, -1):
            yield M(s, 0, g, -s)
            yield M(s, g, 0, -s)
    for alpha in r:
        for beta in r:
            if beta != 0 and (1 - alpha * alpha) % beta == 0:
                yield M(alpha, beta, (1 - alpha * alpha) // beta, -alpha)


@criterion(4, "constructor soundness")
def test_constructor_soundness():
    count, bad = 0, []
    with budget(5.0):
        for a in set(_involutions_by_parameters(20)):
            assert is_involution(a)
            m = construct_reversible_anosov(a)
            count += 1
            if not (m.det == 1 and is_hyperbolic(m) and reversibility_check(a, m)):
                bad.append(a)
    assert count > 80 and bad == []


@criterion(5, "Lyapunov accuracy")
def test_lyapunov_accuracy():
    with budget(60.0):
        cat = lyapunov_plus(ToralAutomorphism(M(2, 1, 1, 1)), (0.1, 0.2), n=100_000).lambda_plus
        other = lyapunov_plus(ToralAutomorphism(M(2, 1, 3, 2)), (0.3, 0.7), n=100_000).lambda_plus
        shear = lyapunov_plus(StandardMap(0.0), (0.3, 0.7), n=100_000).lambda_plus
    assert abs(cat - math.log((3 + math.sqrt(5)) / 2)) < 1e-3
    assert abs(other - math.log(2 + math.sqrt(3))) < 1e-3
    assert abs(shear) < 2e-4


@criterion(6, "lemma-rigidity suite")
def test_lemma_rigidity():
    pts = np.random.default_rng(2024).random((100, 2))
    with budget(120.0):
        for m, a in PAIRS:
            assert reversibility_check(a, m)
            f, r = ToralAutomorphism(m), LinearInvolution(a)
            diff = exponent_symmetry(f, r, pts, n=100_000, seed=1)
            assert diff.shape == (100,)
            assert diff.max() < 5e-3, (m, diff.max())
            _, vu, vs = eigen(m)
            A = np.array(a.rows(), dtype=float)
            assert line_angle(A @ vu, vs) < 1e-8
            assert line_angle(A @ vs, vu) < 1e-8


@criterion(7, "domination suite")
def test_domination():
    p = np.array([0.137, 0.642])
    with budget(10.0):
        for m, a in PAIRS:
            f, r = ToralAutomorphism(m), LinearInvolution(a)
            lam, _, _ = eigen(m)
            # dominated once lam^(-2k) <= 1/2
            threshold = math.ceil(math.log(2) / (2 * math.log(lam)))
            for k in range(1, 11):
                est = domination_check(f, p, k)
                want = lam ** (-2 * k)
                assert abs(est.ratio - want) <= 1e-9 * want
                assert est.dominated == (k >= threshold)
                refl = reflected_domination_ratio(f, r, p, k)
                assert abs(refl - est.ratio) <= 1e-9 * est.ratio
            assert not domination_check(f, p, 0).dominated


@criterion(8, "reversibility residuals")
def test_reversibility_residuals():
    with budget(10.0):
        for sigma in (0.5, 1.0, 6.0):
            res = check_reversibility(StandardMap(sigma), StandardReversor(sigma), samples=10_000, seed=0)
            assert res.reversal < 1e-10, sigma
            assert res.involution < 1e-12, sigma


def _eta_pair(eta):
    s = 1 + Fraction(eta)
    return (s, 0, Fraction(eta), -1 / s), (s, 0, 0, -1 / s)


@criterion(9, "noFranks constraint")
def test_nofranks():
    a = M(1, 0, 0, -1)
    with budget(1.0):
        lp, lfp = _eta_pair(Fraction(1, 10))
        rejected = derivative_constraint_check(a, lp, a, lfp)
        lp, lfp = _eta_pair(0)
        accepted = derivative_constraint_check(a, lp, a, lfp)
    assert rejected is False
    assert accepted is True


@criterion(10, "r-centralizer orbit")
def test_centralizer_orbit():
    a, m = M(2, 1, -3, -2), M(2, 1, 3, 2)
    with budget(1.0):
        orbit = r_centralizer_orbit(a, m, range(-5, 6))
    assert len(orbit) == 11 and len(set(orbit)) == 11
    assert all(is_involution(r) and reversibility_check(r, m) for r in orbit)
