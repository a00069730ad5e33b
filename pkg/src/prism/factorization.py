"""Factorization of [n]_q! and [n]_q into a unit times Frobenius twists of xi~."""
import logging
from dataclasses import dataclass
from typing import List, Tuple

from errors import NotAUnitError, PrecisionError
from padic.padic_num import int_valuation
from prism.delta import phi_power_xi
from qcomb.cyclotomic import divide_out_cyclotomic
from qcomb.qanalogs import q_factorial, q_int
from series.tower import TowerSeries, evaluate_q1

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationCertificate:
    """
    [n]_q! = unit * prod_r phi^{r-1}(xi~)^{a_r}, or the same for [n]_q when
    ``factorial`` is False.

    Args:
        prime (int): The prime p
        n (int): The factored index
        exponents (tuple): a_1, a_2, ... for the factors phi^0(xi~), phi^1(xi~), ...
        unit (TowerSeries): The cofactor
        precision (int): Coefficient precision of the identity
        order (int): Series order of the identity
        factorial (bool): Whether [n]_q! or [n]_q is factored
    """

    prime: int
    n: int
    exponents: Tuple[int, ...]
    unit: TowerSeries
    precision: int
    order: int
    factorial: bool = True

    def factors(self) -> List[Tuple[int, int]]:
        """(r, a_r) pairs with the factor phi^{r-1}(xi~), r >= 1."""
        return [(r, a) for r, a in enumerate(self.exponents, start=1) if a]

    def target(self) -> TowerSeries:
        poly = q_factorial(self.n) if self.factorial else q_int(self.n)
        u = self.unit
        return TowerSeries.from_laurent(poly, self.prime, u.level, self.precision, self.order)

    def verify(self) -> bool:
        """Re-multiply the factors and test that the cofactor is a unit."""
        u = self.unit
        if not evaluate_q1(u).is_unit():
            return False
        try:
            product = u.truncate(self.precision, self.order)
            for r, a in self.factors():
                product = product * phi_power_xi(r - 1, self.prime, self.precision, self.order, u.level) ** a
        except PrecisionError:
            return False
        return product.coeffs == self.target().coeffs


def factorial_exponents(n: int, p: int) -> Tuple[int, ...]:
    """a_r = floor(n / p^r) for every r with p^r <= n."""
    exponents, power = [], p
    while power <= n:
        exponents.append(n // power)
        power *= p
    return tuple(exponents)


def divisor_degree(exponents: Tuple[int, ...], p: int) -> int:
    """Degree in q of prod_r phi^{r-1}(xi~)^{a_r}."""
    return sum(a * (p ** r - p ** (r - 1)) for r, a in enumerate(exponents, start=1))


def _certify(n: int, exponents: Tuple[int, ...], cofactor, p: int, precision: int, order: int,
             level: int, factorial: bool) -> FactorizationCertificate:
    degree = divisor_degree(exponents, p) * p ** level
    if factorial and degree and degree >= order:
        raise PrecisionError(f"divisor degree {degree} does not fit below series order {order}", required=degree + 1)
    unit = TowerSeries.from_laurent(cofactor, p, level, precision, order)
    if not evaluate_q1(unit).is_unit():
        raise NotAUnitError(f"cofactor of [{n}]_q{'!' if factorial else ''} has u(1) divisible by {p}")
    return FactorizationCertificate(
        prime=p, n=n, exponents=exponents, unit=unit, precision=precision, order=order, factorial=factorial
    )


def qfact_factorize(n: int, p: int, precision: int, order: int, level: int = 0) -> FactorizationCertificate:
    """
    Split [n]_q! into a unit and the factors phi^{r-1}(xi~)^{a_r}.

    The cofactor is found by exact division in Z[q], one cyclotomic factor at
    a time, and then mapped into the tower.

    Args:
        n (int): n >= 1
        p (int): Prime
        precision (int): Coefficient precision N
        order (int): Series order M, at least the total divisor degree
        level (int): Tower level of the certificate

    Returns:
        FactorizationCertificate: With a_r = floor(n / p^r)
    """
    if n < 1:
        raise ValueError("qfact_factorize needs n >= 1")
    exponents = factorial_exponents(n, p)
    cofactor = divide_out_cyclotomic(q_factorial(n), p, list(enumerate(exponents, start=1)))
    logger.debug(f"[{n}]_q! at p={p}: exponents {exponents}")
    return _certify(n, exponents, cofactor, p, precision, order, level, factorial=True)


def qint_factorize(n: int, p: int, precision: int, order: int, level: int = 0) -> FactorizationCertificate:
    """[n]_q = unit * xi~ phi(xi~) ... phi^{s-1}(xi~) with s = v_p(n)."""
    if n < 1:
        raise ValueError("qint_factorize needs n >= 1")
    s = int_valuation(n, p)
    exponents = (1,) * s
    cofactor = divide_out_cyclotomic(q_int(n), p, [(r, 1) for r in range(1, s + 1)])
    return _certify(n, exponents, cofactor, p, precision, order, level, factorial=False)
