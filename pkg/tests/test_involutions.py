import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from revtorus import (
    IDENTITY,
    IntMatrix2,
    InvolutionClass,
    classify_involution,
    construct_reversible_anosov,
    enumerate_involutions,
    fixed_line,
    is_hyperbolic,
    reconstruct,
    reversibility_check,
)
from revtorus.exceptions import NotInvolution, TrivialInvolution

M = IntMatrix2


def test_classify_examples():
    c = classify_involution(M(1, 0, 7, -1))
    assert (c.branch, c.sign, c.gamma) == ("LowerTriangular", 1, 7)
    assert classify_involution(IDENTITY).branch == "TrivialPlus"
    assert classify_involution(-IDENTITY).branch == "TrivialMinus"
    c = classify_involution(M(2, 1, -3, -2))
    assert (c.branch, c.alpha, c.beta) == ("Generic", 2, 1)


def test_branch_order():
    assert classify_involution(M(1, 0, 0, -1)).branch == "LowerTriangular"
    c = classify_involution(M(-1, 5, 0, 1))
    assert (c.branch, c.sign, c.beta) == ("UpperTriangular", -1, 5)
    # alpha = 1 gives c = 0: matched by the upper template first
    assert classify_involution(M(1, 4, 0, -1)).branch == "UpperTriangular"


def test_generic_allows_alpha_zero():
    c = classify_involution(M(0, 1, 1, 0))
    assert (c.branch, c.alpha, c.beta) == ("Generic", 0, 1)


def test_classify_rejects_non_involution():
    with pytest.raises(NotInvolution):
        classify_involution(M(2, 1, 1, 1))


def test_class_json_round_trip():
    for a in enumerate_involutions(6):
        cls = classify_involution(a)
        obj = cls.to_json()
        assert set(obj) == {"branch", "params"}
        assert all(isinstance(v, str) for v in obj["params"].values())
        assert InvolutionClass.from_json(obj) == cls


def test_invalid_classes_rejected():
    with pytest.raises(ValueError):
        InvolutionClass("Generic", alpha=2, beta=0)
    with pytest.raises(ValueError):
        InvolutionClass("Generic", alpha=2, beta=2)
    with pytest.raises(ValueError):
        InvolutionClass("Sideways")


def _brute_involutions(bound):
    r = range(-bound, bound + 1)
    return {M(*e) for e in itertools.product(r, repeat=4) if M(*e) @ M(*e) == IDENTITY}


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_enumeration_matches_brute_force(bound):
    got = enumerate_involutions(bound)
    assert len(got) == len(set(got))
    assert set(got) == _brute_involutions(bound)
    assert got == sorted(got, key=IntMatrix2.as_tuple)


def test_enumeration_small_contents():
    got = set(enumerate_involutions(1))
    for m in [IDENTITY, -IDENTITY, M(1, 0, 0, -1), M(-1, 0, 0, 1), M(0, 1, 1, 0), M(1, 1, 0, -1)]:
        assert m in got
    with pytest.raises(ValueError):
        enumerate_involutions(0)


def test_round_trip_bound_50():
    for a in enumerate_involutions(50):
        assert reconstruct(classify_involution(a)) == a


def test_fixed_line_examples():
    assert fixed_line(M(1, 0, 4, -1)).direction == (1, 2)
    assert fixed_line(M(-1, 0, 0, 1)).direction == (0, 1)
    assert fixed_line(M(2, 1, -3, -2)).direction == (1, -1)
    with pytest.raises(TrivialInvolution):
        fixed_line(IDENTITY)


@pytest.mark.parametrize("gamma", [-5, -2, 0, 3, 8])
def test_fixed_line_matches_table_formulas(gamma):
    # y = (gamma/2) x for the (1,0;gamma,-1) row, direction (2, gamma)
    d = fixed_line(M(1, 0, gamma, -1)).direction
    assert d[0] * gamma == 2 * d[1]
    # x = 0 for the (-1,0;gamma,1) row
    assert fixed_line(M(-1, 0, gamma, 1)).direction == (0, 1)


def test_fixed_line_properties():
    import math

    for a in enumerate_involutions(20):
        if a in (IDENTITY, -IDENTITY):
            continue
        line = fixed_line(a)
        v, w = line.direction, line.reflected
        assert a.apply(v) == v
        assert a.apply(w) == (-w[0], -w[1])
        assert math.gcd(*v) == 1
        assert v[0] * w[1] - v[1] * w[0] != 0


def test_construct_examples():
    assert construct_reversible_anosov(M(1, 0, 0, -1)) == M(3, 4, 2, 3)
    assert construct_reversible_anosov(M(1, 0, 3, -1)) == M(3, 1, 17, 6)
    assert construct_reversible_anosov(M(2, 1, -3, -2)) == M(2, 1, 3, 2)
    with pytest.raises(TrivialInvolution):
        construct_reversible_anosov(-IDENTITY)


def test_construct_transposed_recipes():
    assert construct_reversible_anosov(M(1, 3, 0, -1)) == M(3, 1, 17, 6).T
    assert construct_reversible_anosov(M(-1, 0, 3, 1)) == M(3, -1, -17, 6)


params = st.integers(-20, 20)


@given(params, params)
def test_construct_soundness_generic(alpha, beta):
    if beta == 0 or (1 - alpha * alpha) % beta:
        return
    a = M(alpha, beta, (1 - alpha * alpha) // beta, -alpha)
    l = construct_reversible_anosov(a)
    assert l.det == 1 and is_hyperbolic(l) and reversibility_check(a, l)
