import math

import pytest
from hypothesis import given, settings, strategies as st

from errors import NotAUnitError, NotDivisibleError, PrecisionError
from padic.padic_num import (IndistinguishableFromZero, PadicNum, arith, divide_by_p, factorial_valuation,
                             int_valuation, padic_binomial, teichmuller, valuation)

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def padic_pairs(draw):
    p = draw(PRIMES)
    n = draw(st.integers(1, 30))
    a = draw(st.integers(0, p ** n - 1))
    b = draw(st.integers(0, p ** n - 1))
    return PadicNum(p, n, a), PadicNum(p, n, b)


@settings(max_examples=100, deadline=None)
@given(padic_pairs())
def test_ring_laws(pair):
    a, b = pair
    assert arith("sub", arith("add", a, b), b) == a
    assert arith("mul", a, b) == arith("mul", b, a)
    assert arith("neg", arith("neg", a)) == a
    if a.is_unit():
        assert (a * arith("inv", a)).value == 1
    else:
        with pytest.raises(NotAUnitError):
            arith("inv", a)


def test_mixed_precision_keeps_the_smaller():
    a = PadicNum(3, 10, 5)
    b = PadicNum(3, 4, 7)
    assert (a + b).precision == 4
    assert (a * b).precision == 4
    assert (a + 1).precision == 10


def test_representatives_and_digits():
    a = PadicNum.from_int(-1, 5, 3)
    assert a.value == 124
    assert a.signed() == -1
    assert a.digits() == [4, 4, 4]


def test_valuations():
    assert int_valuation(0, 3) is None
    assert int_valuation(54, 3) == 3
    assert valuation(PadicNum(2, 8, 12)) == 2
    assert valuation(PadicNum(2, 8, 256)) == IndistinguishableFromZero(8)
    assert factorial_valuation(27, 3) == 13
    assert factorial_valuation(4, 2) == 3


def test_divide_by_p():
    assert divide_by_p(PadicNum(3, 5, 6)) == PadicNum(3, 4, 2)
    with pytest.raises(NotDivisibleError):
        divide_by_p(PadicNum(3, 5, 7))
    with pytest.raises(PrecisionError):
        divide_by_p(PadicNum(3, 0, 0))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_teichmuller_lifts(p):
    n = 20
    for a0 in range(p):
        x = teichmuller(a0, p, n)
        assert x.value % p == a0
        assert x ** p == x
    # -1 is its own lift for odd p
    if p > 2:
        assert teichmuller(p - 1, p, n) == PadicNum(p, n, -1)


@settings(max_examples=60, deadline=None)
@given(PRIMES, st.integers(0, 40), st.integers(0, 12))
def test_binomial_of_integers(p, m, k):
    n = 20
    value = padic_binomial(PadicNum(p, n, m), k)
    assert value.precision == n - factorial_valuation(k, p)
    assert value.value == math.comb(m, k) % p ** value.precision


def test_binomial_of_minus_one():
    for k in range(10):
        assert padic_binomial(PadicNum(3, 20, -1), k) == PadicNum(3, 20 - factorial_valuation(k, 3), (-1) ** k)


def test_binomial_precision_contract():
    a = PadicNum(2, 3, 5)
    # 4! carries 2^3, so nothing is left
    assert padic_binomial(a, 4).precision == 0
    with pytest.raises(PrecisionError):
        padic_binomial(a, 4, target=1)
    with pytest.raises(PrecisionError):
        a.reduce(5)


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(1, 25), st.integers(0, 10 ** 12), st.integers(0, 10))
def test_binomial_pascal_identity(p, n, value, k):
    if n <= factorial_valuation(k + 1, p):
        return
    a = PadicNum(p, n, value)
    lower = padic_binomial(a, k)
    upper = padic_binomial(a, k + 1)
    common = upper.precision
    total = lower.reduce(common) + upper.reduce(common)
    assert total == padic_binomial(a + 1, k + 1).reduce(common)


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(1, 20), st.integers(1, 10), st.integers(0, 10 ** 12), st.integers(0, 12))
def test_binomial_agrees_with_a_more_precise_exponent(p, n, extra, value, k):
    loss = factorial_valuation(k, p)
    fine = PadicNum(p, n + loss + extra, value)
    coarse = fine.reduce(n + loss)
    assert padic_binomial(coarse, k).precision == n
    assert padic_binomial(coarse, k) == padic_binomial(fine, k).reduce(n)
    # any other lift of the coarse digits gives the same answer
    other = PadicNum(p, n + loss + extra, value + p ** (n + loss) * (value + 1))
    assert padic_binomial(other, k).reduce(n) == padic_binomial(coarse, k)


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(1, 20), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_teichmuller_is_multiplicative(p, n, a0, b0):
    product = teichmuller(a0, p, n) * teichmuller(b0, p, n)
    assert product == teichmuller(a0 * b0, p, n)
