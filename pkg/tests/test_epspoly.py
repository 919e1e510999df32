from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowup_stability import (
    EpsPoly,
    Sign,
    ZeroPolynomialError,
    lex_sign,
    positive_root_bound,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=40
)
polys = st.lists(rationals, min_size=1, max_size=5).map(EpsPoly)


def test_lex_sign_examples():
    assert lex_sign(EpsPoly([0, 0, F(3, 2)])) == Sign.POSITIVE
    assert lex_sign(EpsPoly([0, 0, 0])) == Sign.ZERO
    assert lex_sign(EpsPoly([0, -1, 100])) == Sign.NEGATIVE


def test_lex_sign_matches_evaluation_at_small_eps():
    p = EpsPoly([0, -1, 100])
    assert p.evaluate(F(1, 1000)) < 0


def test_root_bound_examples():
    bound = positive_root_bound(EpsPoly([0, -1, 100]), F(1, 1000))
    assert bound is not None
    assert bound.lo <= F(1, 100) <= bound.hi
    assert bound.width <= F(1, 1000)

    assert positive_root_bound(EpsPoly([0, 0, F(3, 2)])) is None

    bound = positive_root_bound(EpsPoly([1, -2]), F(1, 100))
    assert bound.lo <= F(1, 2) <= bound.hi
    assert bound.width <= F(1, 100)


def test_root_bound_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError):
        positive_root_bound(EpsPoly([0, 0]))


def test_root_bound_root_at_one():
    bound = positive_root_bound(EpsPoly([-1, 1]))
    assert (bound.lo, bound.hi) == (F(1), F(1))


def test_root_bound_double_root():
    # (2x - 1)^2 touches zero at 1/2 without a sign change
    bound = positive_root_bound(EpsPoly([1, -4, 4]), F(1, 64))
    assert bound is not None
    assert bound.lo <= F(1, 2) <= bound.hi


def test_sign_constant_below_root_bound():
    # spot-check the contract on 1000 seeded random polynomials
    import random

    rng = random.Random(7)
    for _ in range(1000):
        coeffs = [
            F(rng.randint(-9, 9), rng.choice([1, 2, 3, 4])) for _ in range(rng.randint(1, 5))
        ]
        p = EpsPoly(coeffs)
        s = lex_sign(p)
        if s == Sign.ZERO:
            continue
        bound = positive_root_bound(p)
        eps0 = (bound.lo if bound else F(1)) / 2
        if eps0 == 0:
            continue
        value = p.evaluate(eps0)
        assert (value > 0) == (s == Sign.POSITIVE)
        assert (value < 0) == (s == Sign.NEGATIVE)


@given(polys, polys)
def test_lex_positive_cone(p, q):
    if p.max_degree != q.max_degree:
        return
    if lex_sign(p) == Sign.POSITIVE and lex_sign(q) == Sign.POSITIVE:
        assert lex_sign(p + q) == Sign.POSITIVE


@given(polys)
def test_lex_negation(p):
    assert lex_sign(-p) == -lex_sign(p)


@given(polys, rationals)
def test_lex_scaling(p, c):
    if c == 0:
        return
    expected = lex_sign(p) if c > 0 else Sign(-lex_sign(p))
    assert lex_sign(p * c) == expected


@given(polys, polys)
def test_addition_commutes_with_evaluation(p, q):
    if p.max_degree != q.max_degree:
        return
    at = F(3, 7)
    assert (p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at)


def test_truncation_mismatch_refused():
    with pytest.raises(ValueError):
        EpsPoly([1, 2]) + EpsPoly([1, 2, 3])


def test_fixed_length_padding():
    p = EpsPoly([5], max_degree=2)
    assert p.coeffs == (F(5), F(0), F(0))
    with pytest.raises(ValueError):
        EpsPoly([1, 2, 3, 4], max_degree=2)
