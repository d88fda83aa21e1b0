from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revtorus import (
    IDENTITY,
    IntMatrix2,
    derivative_constraint_check,
    det,
    enumerate_involutions,
    is_hyperbolic,
    is_involution,
    mat_inv,
    mat_mul,
    mat_pow,
    reversibility_check,
    unimodular,
)
from revtorus.algebra import RationalVec2, is_perfect_square
from revtorus.exceptions import NonUnimodular, PreconditionViolated

M = IntMatrix2


@pytest.mark.parametrize(
    "m, expected",
    [(M(2, 1, 3, 2), 1), (IDENTITY, 1), (M(2, 3, 1, 1), -1)],
)
def test_det(m, expected):
    assert det(m) == expected


def test_mat_mul_examples():
    m = M(5, -7, 2, 9)
    assert mat_mul(IDENTITY, m) == m
    assert mat_mul(M(2, 1, -3, -2), M(2, 1, -3, -2)) == IDENTITY
    assert mat_mul(M(2, 1, 1, 1), M(1, -1, -1, 2)) == IDENTITY


def test_mat_inv_examples():
    assert mat_inv(IDENTITY) == IDENTITY
    assert mat_inv(M(2, 1, 1, 1)) == M(1, -1, -1, 2)
    assert mat_inv(M(0, 1, 1, 0)) == M(0, 1, 1, 0)
    with pytest.raises(NonUnimodular):
        mat_inv(M(2, 0, 0, 1))


def test_is_involution_examples():
    assert is_involution(M(1, 0, 5, -1))
    assert is_involution(M(2, 1, -3, -2))
    assert not is_involution(M(2, 1, 1, 1))


def test_is_hyperbolic_examples():
    assert is_hyperbolic(M(2, 1, 3, 2))
    assert not is_hyperbolic(IDENTITY)
    assert is_hyperbolic(M(2, 3, 1, 1))
    # det -1, trace 0: (a+d)^2 + 4 = 4 is a square
    assert not is_hyperbolic(M(7, 4, -12, -7))
    with pytest.raises(NonUnimodular):
        is_hyperbolic(M(2, 0, 0, 2))


def test_reversibility_check_examples():
    assert reversibility_check(M(2, 1, -3, -2), M(2, 1, 3, 2))
    assert reversibility_check(M(5, 3, -8, -5), M(2, 1, 1, 1))
    assert not reversibility_check(IDENTITY, M(2, 1, 1, 1))


def test_reversibility_check_preconditions_are_named():
    with pytest.raises(PreconditionViolated, match="involution"):
        reversibility_check(M(2, 1, 1, 1), M(2, 1, 3, 2))
    with pytest.raises(PreconditionViolated, match="det"):
        reversibility_check(M(1, 0, 0, -1), M(2, 0, 0, 1))


def _eta_pair(eta):
    s = 1 + Fraction(eta)
    return (s, 0, Fraction(eta), -1 / s), (s, 0, 0, -1 / s)


def test_derivative_constraint_examples():
    a = M(1, 0, 0, -1)
    assert derivative_constraint_check(a, a, a, a)
    lp, lfp = _eta_pair(Fraction(1, 10))
    assert not derivative_constraint_check(a, lp, a, lfp)
    r, l = M(2, 1, -3, -2), M(2, 1, 3, 2)
    assert derivative_constraint_check(r, l, r, l)
    with pytest.raises(NonUnimodular):
        derivative_constraint_check(a, (2, 0, 0, 1), a, a)


def test_derivative_constraint_accepts_strings():
    a = M(1, 0, 0, -1)
    lp = ("11/10", "0", "1/10", "-10/11")
    lfp = ("11/10", "0", "0", "-10/11")
    assert not derivative_constraint_check(a, lp, a, lfp)


def test_matrix_parse_and_json_round_trip():
    big = 10**40 + 7
    m = M.parse(f"{big}, 1, -3 ,2")
    assert m.a == big
    assert M.from_json(m.to_json()) == m
    assert m.to_json()[0][0] == str(big)
    with pytest.raises(ValueError):
        M.parse("1,2,3")
    with pytest.raises(ValueError):
        M.parse("1,2,3,x")


def test_matrix_is_immutable_and_hashable():
    m = M(1, 2, 3, 4)
    with pytest.raises(Exception):
        m.a = 5
    assert len({m, M(1, 2, 3, 4)}) == 1


def test_unimodular_wrapper():
    assert unimodular(2, 1, 1, 1) == M(2, 1, 1, 1)
    assert unimodular(M(0, 1, 1, 0)).det == -1
    with pytest.raises(NonUnimodular):
        unimodular(2, 0, 0, 1)


def test_mat_pow_negative_and_big():
    l = M(2, 1, 1, 1)
    assert mat_pow(l, -3) == mat_inv(mat_pow(l, 3))
    assert mat_pow(l, 0) == IDENTITY
    # entries far past 64 bits stay exact
    p = mat_pow(l, 200)
    assert p.det == 1 and p.a > 2**64


def test_perfect_square_is_exact():
    n = (10**30 + 1) ** 2
    assert is_perfect_square(n)
    assert not is_perfect_square(n + 1)
    assert not is_perfect_square(-4)


def test_rational_vec_mod1():
    v = RationalVec2(Fraction(-1, 3), Fraction(7, 2)).mod1()
    assert (v.x, v.y) == (Fraction(2, 3), Fraction(1, 2))


shear = st.tuples(st.booleans(), st.integers(-(10**6), 10**6))


@settings(max_examples=300, deadline=None)
@given(st.lists(shear, min_size=1, max_size=6), st.booleans())
def test_inverse_property(shears, flip):
    m = IDENTITY
    for upper, k in shears:
        m = m @ (M(1, k, 0, 1) if upper else M(1, 0, k, 1))
    if flip:
        m = m @ M(0, 1, 1, 0)
    assert mat_mul(m, mat_inv(m)) == IDENTITY
    assert mat_mul(mat_inv(m), m) == IDENTITY


def test_involutions_have_det_minus_one_or_are_trivial():
    for a in enumerate_involutions(50):
        assert a.det == -1 or a in (IDENTITY, -IDENTITY)


REVERSIBLE_PAIRS = [
    (M(2, 1, -3, -2), M(2, 1, 3, 2)),
    (M(5, 3, -8, -5), M(2, 1, 1, 1)),
    (M(1, 0, 0, -1), M(3, 4, 2, 3)),
]


@pytest.mark.parametrize("a, l", REVERSIBLE_PAIRS)
def test_reversing_f_reverses_inverse(a, l):
    assert reversibility_check(a, mat_inv(l))
    assert a @ l @ a == mat_inv(l)
