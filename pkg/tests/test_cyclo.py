from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympref.cyclo import (Cyclotomic, DivisionByZero, cyclotomic_polynomial,
                           parse_cyclotomic, root_of_unity)

ORDERS = [1, 2, 3, 4, 6, 8, 12]


def test_root_of_unity_identity():
    assert root_of_unity(1, 0).is_one()


def test_zeta4_squared_is_minus_one():
    assert root_of_unity(4, 2) == Cyclotomic.rational(-1)


def test_cube_roots_sum_to_minus_one():
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == Cyclotomic.rational(-1)


@pytest.mark.parametrize("order,k,expected", [(4, 1, 4), (4, 2, 2), (6, 2, 3), (12, 8, 3)])
def test_root_multiplicative_order(order, k, expected):
    assert root_of_unity(order, k).multiplicative_order() == expected


def test_inverse_of_one_minus_i():
    # Oracle: extended Euclid of 1 - x against x^2 + 1 gives (1 + x)/2.
    i = root_of_unity(4, 1)
    inv = (Cyclotomic.one() - i).inverse()
    assert inv == (Cyclotomic.one() + i) * Fraction(1, 2)
    assert inv * (Cyclotomic.one() - i) == 1


def test_inverse_of_one_minus_zeta2():
    assert (Cyclotomic.one() - root_of_unity(2, 1)).inverse() == Fraction(1, 2)


def test_mul_by_one_fixes():
    z = root_of_unity(12, 5) + 3
    assert z * Cyclotomic.one() == z


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Cyclotomic.one() / Cyclotomic.zero()
    with pytest.raises(DivisionByZero):
        Cyclotomic.zero(4).inverse()


def test_one_minus_alpha_invertible_for_all_catalog_roots():
    for order in range(1, 13):
        for k in range(1, order):
            alpha = root_of_unity(order, k)
            inv = (Cyclotomic.one() - alpha).inverse()
            assert (inv * (Cyclotomic.one() - alpha)).is_one()


def test_phi_polynomials():
    assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_polynomial(4) == (Fraction(1), Fraction(0), Fraction(1))
    assert cyclotomic_polynomial(12) == (Fraction(1), Fraction(0), Fraction(-1),
                                         Fraction(0), Fraction(1))


def small_cyclotomics(order):
    deg = len(cyclotomic_polynomial(order)) - 1
    coeff = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return st.lists(coeff, min_size=deg, max_size=deg).map(
        lambda cs: Cyclotomic(order, tuple(cs), reduce=False))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(
    lambda n: st.tuples(small_cyclotomics(n), small_cyclotomics(n), small_cyclotomics(n))))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 4), (2, 6), (3, 12), (4, 12), (6, 12)]),
       st.data())
def test_embedding_preserves_arithmetic(orders, data):
    small, big = orders
    a = data.draw(small_cyclotomics(small))
    b = data.draw(small_cyclotomics(small))
    assert (a + b).embed(big) == a.embed(big) + b.embed(big)
    assert (a * b).embed(big) == a.embed(big) * b.embed(big)
    assert a.embed(big) == a


def test_mixed_order_arithmetic_embeds_to_lcm():
    z2 = root_of_unity(2, 1)
    z3 = root_of_unity(3, 1)
    assert z2 * z3 == root_of_unity(6, 5)
    s = z3 + z2
    assert s.order == 6
    assert s == root_of_unity(6, 2) + root_of_unity(6, 3)


def test_text_round_trip():
    z = root_of_unity(12, 7) * Fraction(3, 2) + Fraction(-1, 4)
    text = z.to_text()
    assert parse_cyclotomic(text, 12) == z
    assert parse_cyclotomic("1/2 + -1/3*z^2", 12) == \
        Cyclotomic.rational(Fraction(1, 2)) + root_of_unity(12, 2) * Fraction(-1, 3)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cyclotomic("1 + spam", 4)
