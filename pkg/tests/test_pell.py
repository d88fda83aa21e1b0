import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revtorus import (
    PellProblem,
    PellSolution,
    brute_force_pell,
    cf_sqrt,
    fundamental_unit,
    solve_pell,
)
from revtorus.pell import convergents
from revtorus.exceptions import LimitZero, SquareOrNonpositive

S = PellSolution


@pytest.mark.parametrize("D, a0, period", [(5, 2, [4]), (12, 3, [2, 6]), (2, 1, [2]), (7, 2, [1, 1, 1, 4])])
def test_cf_sqrt(D, a0, period):
    cf = cf_sqrt(D)
    assert cf.a0 == a0 and list(cf.period) == period
    assert cf.period[-1] == 2 * cf.a0


@pytest.mark.parametrize("D", [0, -3, 16])
def test_cf_sqrt_rejects(D):
    with pytest.raises(SquareOrNonpositive):
        cf_sqrt(D)


def _scan_unit(D):
    u = 1
    while True:
        t2 = 1 + D * u * u
        t = int(t2**0.5)
        for c in (t - 1, t, t + 1):
            if c > 0 and c * c == t2:
                return c, u
        u += 1


@pytest.mark.parametrize("D, unit", [(5, (9, 4)), (12, (7, 2)), (2, (3, 2))])
def test_fundamental_unit_examples(D, unit):
    assert fundamental_unit(D) == unit


def test_fundamental_unit_396():
    t, u = fundamental_unit(396)
    assert t * t - 396 * u * u == 1
    assert (t, u) == _scan_unit(396)


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 10, 12, 13, 29, 61])
def test_unit_from_convergents(D):
    cf = cf_sqrt(D)
    k = len(cf.period)
    p, q = convergents(cf, k)[k - 1]
    t, u = fundamental_unit(D)
    if k % 2 == 0:
        assert (p, q) == (t, u)
    else:
        # norm -1 at the end of an odd period: the unit is its square
        assert p * p - D * q * q == -1
        assert (p * p + D * q * q, 2 * p * q) == (t, u)
    assert t * t - D * u * u == 1
    if u < 10**5:
        assert (t, u) == _scan_unit(D)


def test_ellipse_example():
    s = solve_pell(PellProblem(-3, 36))
    assert s.kind == "Finite"
    assert set(s.solutions) == {S(6, 0), S(-6, 0), S(3, 3), S(3, -3), S(-3, 3), S(-3, -3)}


def test_degenerate_lines_example():
    s = solve_pell(PellProblem(0, 64))
    assert s.kind == "DegenerateLines"
    assert s.is_infinite
    assert {S(8, 5), S(-8, -100)} <= s.within(100)


@pytest.mark.parametrize("D, N, members", [(12, 4, [(4, 1), (2, 0)]), (5, 4, [(3, 1), (7, 3)])])
def test_infinite_classes_examples(D, N, members):
    s = solve_pell(PellProblem(D, N))
    assert s.kind == "InfiniteClasses"
    box = s.within(1000)
    for m in members:
        assert S(*m) in box


def test_396_has_infinite_classes():
    s = solve_pell(PellProblem(396, 324))
    assert s.kind == "InfiniteClasses"
    assert s.fundamental_unit == (199, 10)


def test_limit_zero():
    with pytest.raises(LimitZero):
        solve_pell(PellProblem(5, 4), limit=0)


def test_materialized_count_respects_limit():
    s = solve_pell(PellProblem(5, 4), limit=3)
    assert all(len(c) == 3 for c in s.classes)
    assert len(s.solutions) == 3 * len(s.class_representatives)


def test_brute_force_examples():
    want = {S(2, 0), S(-2, 0)} | {S(sx * 4, sy) for sx in (1, -1) for sy in (1, -1)}
    want |= {S(sx * 14, sy * 4) for sx in (1, -1) for sy in (1, -1)}
    assert set(brute_force_pell(PellProblem(12, 4), 20)) == want
    assert len(brute_force_pell(PellProblem(-3, 36), 10)) == 6
    assert brute_force_pell(PellProblem(7, -1), 100) == []


def test_square_D_cases():
    # (x - 2y)(x + 2y) = 12 has finitely many solutions
    s = solve_pell(PellProblem(4, 12))
    assert s.kind == "Finite"
    assert set(s.solutions) == set(brute_force_pell(PellProblem(4, 12), 50))
    # N = 0 with square D: two lines x = +-2y
    s = solve_pell(PellProblem(4, 0))
    assert s.kind == "DegenerateLines"
    assert s.within(30) == set(brute_force_pell(PellProblem(4, 0), 30))


def test_oracle_agreement_small_grid():
    for D in range(-6, 7):
        for N in range(-20, 21):
            p = PellProblem(D, N)
            assert solve_pell(p).within(120) == set(brute_force_pell(p, 120)), (D, N)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 60), st.integers(-60, 60))
def test_unit_action_closure(D, N):
    p = PellProblem(D, N)
    s = solve_pell(p, limit=4)
    if s.kind != "InfiniteClasses":
        return
    t, u = s.fundamental_unit
    for sol in s.solutions:
        assert p.residual(sol.x, sol.y) == 0
        x2, y2 = t * sol.x + D * u * sol.y, u * sol.x + t * sol.y
        assert p.residual(x2, y2) == 0


def test_json_shapes():
    obj = solve_pell(PellProblem(12, 4)).to_json()
    assert obj["kind"] == "InfiniteClasses"
    assert obj["fundamental_unit"] == ["7", "2"]
    assert solve_pell(PellProblem(-3, 36)).to_json()["count"] == 6


def test_equation_rendering():
    assert PellProblem(-3, 36).equation() == "x^2+3y^2=36"
    assert PellProblem(0, 64).equation() == "x^2=64"
    assert PellProblem(5, 100).equation() == "x^2-5y^2=100"
