import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errors import (InternalConsistencyError, LevelMismatchError, NotAUnitError, NotDivisibleError, PrecisionError,
                    ShapeError)
from padic.padic_num import PadicNum, factorial_valuation
from prism.delta import xi_tilde
from qcomb.laurent import Q, X, Y
from qcomb.qanalogs import q_int
from series.bivar import (BivarSeries, bivar_arith, nabla_q, qtaylor_basis, qtaylor_expand, qtaylor_reconstruct,
                          series_log)
from series.certificates import check_distinguished_shape, distinguished_divide
from series.serialization import (bivar_from_json, bivar_to_json, divisibility_from_json, divisibility_to_json,
                                  tower_from_json, tower_to_json)
from series.tower import (TowerSeries, binomial_qpower, divide, embed, evaluate_q1, frobenius, generalized_binomial,
                          phi_inverse, tower_arith)
from suites.series_suite import random_bivar, random_tower


@st.composite
def towers(draw, p=3, level=0, precision=12, order=10, unit=False):
    coeffs = draw(st.lists(st.integers(0, p ** precision - 1), min_size=order, max_size=order))
    if unit and coeffs[0] % p == 0:
        coeffs[0] += 1
    return TowerSeries(p, level, order, precision, tuple(coeffs))


def test_q_in_the_tower():
    assert TowerSeries.q(3, 0, 5, 4).coeffs == (1, 1, 0, 0)
    # at level 1 the variable is q^{1/3}, so q = (1 + s)^3
    assert TowerSeries.q(3, 1, 5, 4).coeffs == (1, 3, 3, 1)
    assert TowerSeries.variable(3, 1, 5, 4).coeffs == (1, 1, 0, 0)


def test_negative_powers_of_q():
    q = TowerSeries.q(2, 0, 10, 8)
    q_inverse = TowerSeries.from_laurent(Q ** -1, 2, 0, 10, 8)
    assert q * q_inverse == TowerSeries.constant(1, 2, 0, 10, 8)
    assert generalized_binomial(-1, 5) == -1


@settings(max_examples=40, deadline=None)
@given(towers(unit=True))
def test_inverse(f):
    assert f * f.inverse() == TowerSeries.constant(1, 3, 0, 12, 10)
    assert tower_arith("inv", f) == f.inverse()


def test_non_units_do_not_invert():
    with pytest.raises(NotAUnitError):
        (TowerSeries.q(3, 0, 5, 4) - 1).inverse()


def test_levels_do_not_mix():
    with pytest.raises(LevelMismatchError):
        TowerSeries.q(3, 0, 5, 4) + TowerSeries.q(3, 1, 5, 4)
    with pytest.raises(LevelMismatchError):
        embed(TowerSeries.q(3, 1, 5, 4), 0)


def test_precision_cannot_be_raised():
    f = TowerSeries.q(3, 0, 5, 4)
    assert f.truncate(3, 2).coeffs == (1, 1)
    with pytest.raises(PrecisionError):
        f.truncate(6)


def test_mixed_precision_arithmetic():
    f = TowerSeries.q(5, 0, 8, 6)
    g = TowerSeries.q(5, 0, 3, 4)
    assert (f * g).precision == 3
    assert (f * g).order == 4
    assert (f * PadicNum(5, 2, 7)).precision == 2


@settings(max_examples=30, deadline=None)
@given(towers(level=1), towers(level=1))
def test_frobenius_is_a_ring_map(f, g):
    assert frobenius(f + g) == frobenius(f) + frobenius(g)
    assert frobenius(f * g) == frobenius(f) * frobenius(g)


@settings(max_examples=30, deadline=None)
@given(towers())
def test_frobenius_after_phi_inverse_is_the_embedding(f):
    assert frobenius(phi_inverse(f)).agrees_with(embed(f, 1))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("level", [0, 1])
def test_mu_is_a_frobenius_eigenvector(p, level):
    mu = TowerSeries.q(p, level, 10, 12) - 1
    assert frobenius(mu) == xi_tilde(p, 10, 12, level) * mu


def test_embedding_of_q():
    assert embed(TowerSeries.q(3, 0, 6, 8), 2) == TowerSeries.q(3, 2, 6, 8)


def test_qpower():
    p, n, m = 3, 10, 9
    digits = n + factorial_valuation(m, p)
    q = TowerSeries.q(p, 0, n, m)
    assert binomial_qpower(PadicNum(p, digits, 1), m, n) == q
    assert binomial_qpower(PadicNum(p, digits, -1), m, n) == q.inverse()
    assert binomial_qpower(PadicNum(p, digits, 4), m, n) == q ** 4
    assert binomial_qpower(PadicNum(p, digits, 1), m, n, level=1) == TowerSeries.q(p, 1, n, m)
    with pytest.raises(PrecisionError):
        binomial_qpower(PadicNum(p, n, 1), m, n)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3 ** 14 - 1), st.integers(0, 3 ** 14 - 1))
def test_qpower_is_exponential(a, b):
    p, n, m = 3, 10, 9
    digits = n + factorial_valuation(m, p)
    qa = binomial_qpower(PadicNum(p, digits, a), m, n)
    qb = binomial_qpower(PadicNum(p, digits, b), m, n)
    assert qa * qb == binomial_qpower(PadicNum(p, digits, a + b), m, n)
    assert frobenius(qa) == qa ** p
    assert evaluate_q1(qa) == PadicNum(p, n, 1)


def test_division_loses_one_order_of_digits_per_unit_of_valuation():
    p, n, m = 3, 30, 8
    xi = xi_tilde(p, n, m)
    quotient = divide(xi * xi, xi)
    assert quotient.precision == n - m
    assert quotient.agrees_with(xi)


def test_division_by_content_costs_its_valuation():
    p, n, m = 3, 10, 6
    unit = TowerSeries.q(p, 0, n, m)
    quotient = divide(unit * 9, TowerSeries.constant(9, p, 0, n, m) * unit)
    assert quotient.precision == n - 2
    assert quotient == TowerSeries.constant(1, p, 0, n - 2, m)


def test_division_failure_carries_the_residue():
    p = 3
    mu = TowerSeries.q(p, 0, 20, 6) - 1
    with pytest.raises(NotDivisibleError) as info:
        divide(mu, xi_tilde(p, 20, 6))
    assert info.value.evidence == {"index": 1, "residue": 1, "modulus": 3}


def test_division_needs_working_precision():
    p = 3
    xi = xi_tilde(p, 5, 8)
    with pytest.raises(PrecisionError):
        divide(xi * xi, xi)
    with pytest.raises(PrecisionError):
        divide(xi, TowerSeries.q(p, 0, 5, 8) - 1)


def test_distinguished_shape():
    assert check_distinguished_shape(xi_tilde(5, 6, 8)) == 4
    with pytest.raises(ShapeError):
        check_distinguished_shape(TowerSeries.zero(3, 0, 4, 4))
    with pytest.raises(ShapeError):
        check_distinguished_shape(TowerSeries.from_coefficients([1, 1], 3, 0, 4, 4))
    with pytest.raises(ShapeError):
        check_distinguished_shape(TowerSeries.from_coefficients([3, 3], 3, 0, 4, 4))


def test_divisibility_certificate_detects_tampering():
    p, n, m = 2, 24, 8
    xi = xi_tilde(p, n, m)
    mu = TowerSeries.q(p, 0, n, m) - 1
    certificate = distinguished_divide(frobenius(mu), xi)
    assert certificate.verify()
    assert certificate.quotient.agrees_with(mu)

    data = divisibility_to_json(certificate)
    assert divisibility_from_json(data).verify()
    data["quotient"]["coefficients"][2] = str(int(data["quotient"]["coefficients"][2]) + 1)
    assert not divisibility_from_json(data).verify()
    data["precision"] += 1
    with pytest.raises(ShapeError):
        divisibility_from_json(data)


def test_tower_json():
    f = random_tower(random.Random(7), 5, 2, 12, 9)
    assert tower_from_json(tower_to_json(f)) == f
    with pytest.raises(ShapeError):
        tower_from_json(bivar_to_json(BivarSeries.q(3, 3)))
    data = tower_to_json(f)
    data["coefficients"][0] = str(5 ** 12)
    with pytest.raises(ShapeError):
        tower_from_json(data)
    data["coefficients"][0] = "-1"
    with pytest.raises(ShapeError):
        tower_from_json(data)


# Q[[q-1, x-1]]

def test_truncation_ideal():
    f = BivarSeries(4, 6, {(3, 2): 1, (4, 0): 1, (2, 4): 1, (1, 4): 5})
    assert dict(f.items()) == {(3, 2): 1, (1, 4): 5}
    assert f.truncate(3, 6) == BivarSeries(3, 6, {(1, 4): 5})
    assert f.truncate(4, 5).is_zero()
    with pytest.raises(PrecisionError):
        f.truncate(5, 6)


def test_inverse_of_x():
    x = BivarSeries.x(6, 6)
    assert x.inverse() == BivarSeries(6, 6, {(0, j): (-1) ** j for j in range(6)})
    assert x.inverse() == BivarSeries.from_laurent(X ** -1, 6, 6)
    with pytest.raises(NotAUnitError):
        (x - 1).inverse()


def test_shift_x_to_qx():
    f = BivarSeries.from_laurent(X ** 3 + 2 * X * Q ** -1, 8, 8)
    assert f.shift_x_to_qx() == BivarSeries.from_laurent(Q ** 3 * X ** 3 + 2 * X, 8, 8)
    assert bivar_arith("shift_x_to_qx", f) == f.shift_x_to_qx()
    with pytest.raises(ValueError):
        BivarSeries.from_laurent(Y, 4, 4)


@pytest.mark.parametrize("n", range(-3, 8))
def test_nabla_of_powers(n):
    result = nabla_q(BivarSeries.from_laurent(X ** n, 10, 10))
    assert (result.order_q, result.order_x) == (9, 9)
    assert result == BivarSeries.from_laurent(q_int(n) * X ** (n - 1), 9, 9)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_nabla_contracts(seed):
    rng = random.Random(seed)
    f = random_bivar(rng, 8, 8)
    g = random_bivar(rng, 8, 8)
    assert nabla_q(f * g).agrees_with(nabla_q(f) * g.shift_x_to_qx() + f * nabla_q(g))
    assert nabla_q(f).reduce_mod_q_minus_1().agrees_with(f.partial_x().reduce_mod_q_minus_1())


def test_divide_by_q_minus_1_refuses_x_terms():
    with pytest.raises(InternalConsistencyError):
        BivarSeries.x(4, 4).divide_by_q_minus_1()


def test_log():
    log_q = series_log(BivarSeries.q(6, 6))
    assert log_q.u_coefficients() == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)]
    with pytest.raises(NotAUnitError):
        series_log(BivarSeries.constant(2, 4, 4))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_log_is_additive(seed):
    rng = random.Random(seed)
    u = random_bivar(rng, 7, 7)
    v = random_bivar(rng, 7, 7)
    u = u - u.coefficient(0, 0) + 1
    v = v - v.coefficient(0, 0) + 1
    assert series_log(u * v) == series_log(u) + series_log(v)


def test_taylor_basis_expands_to_unit_vectors():
    for k in range(6):
        coeffs = qtaylor_expand(qtaylor_basis(k, 8, 8))
        for n, a in enumerate(coeffs):
            assert a == BivarSeries.constant(1 if n == k else 0, a.order_q, a.order_x)


def test_taylor_expansion_of_a_polynomial():
    # x^2 = 1 + [2]_q (x - 1) + (x - 1)(x - q)
    coeffs = qtaylor_expand(BivarSeries.from_laurent(X ** 2, 6, 6))
    assert coeffs[0] == BivarSeries.constant(1, 6, 6)
    assert coeffs[1].agrees_with(BivarSeries.from_laurent(1 + Q, 6, 6))
    assert coeffs[2].agrees_with(BivarSeries.from_laurent(1 + Q, 6, 6))
    assert all(a.is_zero() for a in coeffs[3:])


def test_taylor_round_trip_at_acceptance_orders():
    rng = random.Random(20)
    for _ in range(3):
        f = random_bivar(rng, 20, 20)
        rebuilt = qtaylor_reconstruct(qtaylor_expand(f))
        assert (rebuilt.order_q, rebuilt.order_x) == (20, 20)
        assert rebuilt == f


def test_taylor_expand_needs_order():
    with pytest.raises(PrecisionError):
        qtaylor_expand(BivarSeries.x(4, 4), 5)


def test_bivar_json():
    f = random_bivar(random.Random(3), 6, 9)
    assert bivar_from_json(bivar_to_json(f)) == f


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 8), st.integers(1, 10), st.integers(0, 10 ** 12),
       st.integers(1, 6))
def test_qpower_agrees_with_a_more_precise_exponent(p, precision, order, value, extra):
    required = precision + factorial_valuation(order, p)
    fine = PadicNum(p, required + extra, value)
    coarse = binomial_qpower(fine.reduce(required), order, precision)
    assert binomial_qpower(fine, order, precision + extra).truncate(precision) == coarse
    other = PadicNum(p, required + extra, value + p ** required * (value + 1))
    assert binomial_qpower(other, order, precision) == coarse


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 6), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_divide_agrees_with_a_more_precise_quotient(p, precision, order, seed):
    rng = random.Random(seed)
    working, extra = precision + order, 5
    # v_p(g(0)) = 1
    g = xi_tilde(p, working + extra, order) * random_tower(rng, p, 0, working + extra, order, unit=True)
    h = random_tower(rng, p, 0, working + extra, order)
    f = g * h
    quotient = divide(f.truncate(working), g.truncate(working), target=precision)
    assert quotient == h.truncate(precision)
    assert divide(f, g).truncate(precision) == quotient
