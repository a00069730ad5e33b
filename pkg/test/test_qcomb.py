import pytest
import sympy
from hypothesis import given, settings, strategies as st

from errors import NotDivisibleError, UnknownIdentityError
from qcomb.cyclotomic import (cyclotomic_modulus, cyclotomic_reduce, divide_out_cyclotomic, frobenius_power_of_xi,
                              xi_r_poly)
from qcomb.identities import check_identity
from qcomb.laurent import LaurentPoly, ONE, Q, X, Y, ZERO
from qcomb.qanalogs import (q_binomial, q_binomial_by_division, q_derivative, q_factorial, q_int, q_pochhammer,
                            specialize_y)

Z = sympy.Symbol("q")


def from_sympy(expr) -> LaurentPoly:
    coeffs = sympy.Poly(expr, Z).all_coeffs()
    return LaurentPoly.from_q_coefficients([int(c) for c in reversed(coeffs)])


def test_q_integers():
    assert q_int(0) == ZERO
    assert q_int(1) == ONE
    assert q_int(3) == 1 + Q + Q ** 2
    assert q_int(-2) == -(Q ** -1 + Q ** -2)


def test_q_integer_specializes_to_n():
    for n in range(-6, 7):
        assert q_int(n).evaluate_q(1) == n


def test_q_factorial_and_binomial_examples():
    assert q_factorial(0) == ONE
    assert q_factorial(3) == (1 + Q) * (1 + Q + Q ** 2)
    assert q_binomial(4, 2) == 1 + Q + 2 * Q ** 2 + Q ** 3 + Q ** 4
    assert q_binomial(5, 0) == ONE
    assert q_binomial(5, 5) == ONE


@pytest.mark.parametrize("n", range(12))
def test_binomials_against_sympy_quotient(n):
    for k in range(n + 1):
        numerator = sympy.prod([1 - Z ** (n - i) for i in range(k)])
        denominator = sympy.prod([1 - Z ** (i + 1) for i in range(k)])
        assert q_binomial(n, k) == from_sympy(sympy.quo(numerator, denominator, Z))
        assert q_binomial(n, k) == q_binomial_by_division(n, k)


@pytest.mark.parametrize("n", range(1, 31))
def test_pascal_recursion(n):
    for k in range(1, n + 1):
        assert check_identity("pascal", [n, k]).passed


@pytest.mark.parametrize("n", range(21))
def test_binomial_theorem(n):
    assert check_identity("binomial-theorem", [n]).passed


@pytest.mark.parametrize("n", range(1, 21))
def test_pochhammer_derivative(n):
    assert check_identity("pochhammer-derivative", [n]).passed


@settings(max_examples=200, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20))
def test_addition_and_negation(n, k):
    assert check_identity("addition", [n, k]).passed
    assert check_identity("negation", [n]).passed


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_q_leibniz(seed):
    assert check_identity("leibniz", [seed]).passed


def test_divisible_relation():
    for m in range(1, 25):
        for n in range(1, m + 1):
            if m % n == 0:
                assert check_identity("divisible-relation", [m, n]).passed


def test_pochhammer_at_y_minus_one():
    assert specialize_y(q_pochhammer(2), -1) == (X - 1) * (X - Q)


def test_q_derivative_of_monomials():
    for n in range(-4, 6):
        assert q_derivative(X ** n) == q_int(n) * X ** (n - 1)


def test_identity_failure_is_reported_not_raised():
    with pytest.raises(UnknownIdentityError):
        check_identity("no-such-identity", [1])
    with pytest.raises(ValueError):
        check_identity("pascal", [3, 5])


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_cyclotomic_modulus_matches_sympy(p, r):
    assert cyclotomic_modulus(p, r) == from_sympy(sympy.cyclotomic_poly(p ** r, Z))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_cyclotomic_congruence(p, r):
    assert check_identity("cyclotomic-congruence", [p, r]).passed


def test_xi_r_is_q_integer():
    for p in (2, 3, 5):
        for r in (1, 2, 3):
            assert xi_r_poly(p, r) == q_int(p ** r)


def test_reduction_clears_negative_exponents():
    assert cyclotomic_reduce(Q ** -1, 2, 1).lift() == LaurentPoly.constant(-1)
    assert cyclotomic_reduce(Q ** 3, 3, 1).lift() == ONE


def test_frobenius_of_xi_is_p_modulo_xi():
    for p in (2, 3, 5):
        assert cyclotomic_reduce(frobenius_power_of_xi(p, 1), p, 1).lift() == LaurentPoly.constant(p)


def test_factorial_cofactor_is_exact():
    # [4]_q! at p = 2 carries xi~^2 phi(xi~)
    cofactor = divide_out_cyclotomic(q_factorial(4), 2, [(1, 2), (2, 1)])
    assert cofactor == 1 + Q + Q ** 2
    with pytest.raises(NotDivisibleError):
        divide_out_cyclotomic(q_factorial(4), 2, [(1, 3)])


def test_laurent_display_and_shift():
    assert str(ZERO) == "0"
    assert (X * Y).shift(q=2) == LaurentPoly.monomial(q=2, x=1, y=1)
    assert (Q ** 3 - 1).divide_by_q_minus_1() == q_int(3)


def test_negative_powers_of_unit_monomials():
    assert Q ** -2 == LaurentPoly.monomial(q=-2)
    assert X ** -3 * X ** 3 == ONE
    assert (-(Q * Y)) ** -3 == -LaurentPoly.monomial(q=-3, y=-3)
    assert (-Q) ** -2 == LaurentPoly.monomial(q=-2)
    with pytest.raises(ValueError):
        (2 * Q) ** -1
