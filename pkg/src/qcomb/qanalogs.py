"""q-integers, q-factorials, q-binomials, q-Pochhammer symbols and the q-derivative."""
import logging
from functools import lru_cache

from qcomb.laurent import LaurentPoly, ONE, Q, X, Y, ZERO

logger = logging.getLogger(__name__)


def q_int(n: int) -> LaurentPoly:
    """
    The q-integer [n]_q = (q^n - 1)/(q - 1).

    Args:
        n (int): Any integer; negative n uses [-n]_q = -q^{-n}[n]_q

    Returns:
        LaurentPoly: 1 + q + ... + q^{n-1} for n >= 1, 0 for n = 0
    """
    if n >= 0:
        return LaurentPoly({(i, 0, 0): 1 for i in range(n)})
    return LaurentPoly({(i, 0, 0): -1 for i in range(n, 0)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    """[n]_q! = [1]_q [2]_q ... [n]_q with [0]_q! = 1."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    if n == 0:
        return ONE
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentPoly:
    """
    Gaussian binomial via the q-Pascal recursion.

    binom(n,k)_q = q^k binom(n-1,k)_q + binom(n-1,k-1)_q, so every value is
    built from additions and shifts and has integer coefficients without any
    division step.

    Args:
        n (int): Upper index, n >= 0
        k (int): Lower index, 0 <= k <= n

    Returns:
        LaurentPoly: binom(n, k)_q as a polynomial in q
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return ONE
    return q_binomial(n - 1, k).shift(q=k) + q_binomial(n - 1, k - 1)


def q_binomial_by_division(n: int, k: int) -> LaurentPoly:
    """[n]_q!/([k]_q! [n-k]_q!) by exact polynomial division; kept as an oracle."""
    return q_factorial(n).exact_divide(q_factorial(k) * q_factorial(n - k))


@lru_cache(maxsize=None)
def q_pochhammer(n: int) -> LaurentPoly:
    """Generalized q-Pochhammer symbol (x,y;q)_n = (x+y)(x+qy)...(x+q^{n-1}y)."""
    if n < 0:
        raise ValueError("q-Pochhammer needs n >= 0")
    if n == 0:
        return ONE
    return q_pochhammer(n - 1) * (X + Y.shift(q=n - 1))


def specialize_y(f: LaurentPoly, value: int) -> LaurentPoly:
    """Set y to an integer (negative y-exponents only for value = ±1)."""
    terms = {}
    for (a, b, c), coeff in f.items():
        if c < 0 and value not in (1, -1):
            raise ValueError("negative y-exponent at a non-unit value")
        key = (a, b, 0)
        terms[key] = terms.get(key, 0) + coeff * value ** abs(c)
    return LaurentPoly(terms)


def q_derivative(f: LaurentPoly) -> LaurentPoly:
    """
    The q-derivative in x: (f(qx) - f(x))/(qx - x).

    The numerator vanishes at q = 1 slice by slice and every x^0 term cancels,
    so the division by (q - 1)x is exact on Laurent polynomials.
    """
    numerator = f.scale_variable("x", 1) - f
    if numerator.is_zero():
        return ZERO
    return numerator.divide_by_q_minus_1().shift(x=-1)


def q_power_relation(m: int, n: int) -> LaurentPoly:
    """((q^n)^{m/n} - 1)/(q^n - 1) * [n]_q for n | m."""
    if n == 0 or m % n:
        raise ValueError(f"{n} does not divide {m}")
    qn = Q ** n
    return (qn ** (m // n) - 1).exact_divide(qn - 1) * q_int(n)
