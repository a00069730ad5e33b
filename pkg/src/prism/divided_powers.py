"""q-divided powers gamma_{n,q}(x-1) = (x-1)(x-q)...(x-q^{n-1}) / [n]_q!."""
import logging
from typing import Tuple

from pydantic import BaseModel

from errors import HypothesisError
from padic.padic_num import factorial_valuation
from prism.delta import phi_power_xi, rank_one_check
from prism.factorization import qfact_factorize
from prism.nygaard import NygaardCertificate, nygaard_level
from qcomb.cyclotomic import cyclotomic_reduce, frobenius_power_of_xi, reduction_congruence
from series.certificates import distinguished_divide
from series.tower import TowerSeries

logger = logging.getLogger(__name__)


def qdivided_working_precision(p: int, n: int, precision: int, order: int) -> int:
    """
    Input precision for gamma_{n,q} and its level-n certificate at ``precision``.

    Dividing by [n]_q! costs v_p(n!) divisions by twists of xi~, the Nygaard
    chain n more; each costs ``order`` digits.
    """
    return precision + (factorial_valuation(n, p) + n) * order


def pochhammer_at(x: TowerSeries, n: int) -> TowerSeries:
    """(x - 1)(x - q)...(x - q^{n-1}) in the tower."""
    q = TowerSeries.q(x.prime, x.level, x.precision, x.order)
    result = TowerSeries.constant(1, x.prime, x.level, x.precision, x.order)
    q_power = TowerSeries.constant(1, x.prime, x.level, x.precision, x.order)
    for _ in range(n):
        result = result * (x - q_power)
        q_power = q_power * q
    return result


def qdivided_power(x: TowerSeries, n: int) -> Tuple[TowerSeries, NygaardCertificate]:
    """
    The q-divided power of x - 1 together with a Nygaard certificate of level n.

    Requires x of rank 1 (phi(x) = x^p) with x - 1 in N^{>=1}. The Pochhammer
    product is divided by each factor phi^{r-1}(xi~) of [n]_q! in turn, every
    step with its own divisibility certificate, and then by the unit cofactor.

    Args:
        x (TowerSeries): Input at the precision given by qdivided_working_precision
        n (int): n >= 1

    Returns:
        tuple: (gamma, certificate that gamma lies in N^{>=n})
    """
    if n < 1:
        raise ValueError("q-divided powers need n >= 1")
    if not rank_one_check(x):
        raise HypothesisError("x is not of rank 1: phi(x) differs from x^p")
    if nygaard_level(x - 1, 1).level < 1:
        raise HypothesisError("x - 1 is not in N^{>=1}: xi~ does not divide phi(x - 1)")

    p = x.prime
    factorization = qfact_factorize(n, p, x.precision, x.order, x.level)
    current = pochhammer_at(x, n)
    for r, a in factorization.factors():
        for _ in range(a):
            divisor = phi_power_xi(r - 1, p, current.precision, current.order, x.level)
            current = distinguished_divide(current, divisor).quotient
    gamma = current * factorization.unit.truncate(current.precision).inverse()
    logger.info(f"gamma_{n},q computed at p={p} to precision {gamma.precision}")

    certificate = nygaard_level(gamma, n)
    if certificate.level < n:
        raise HypothesisError(f"gamma_{n},q only reached Nygaard level {certificate.level}")
    return gamma, certificate


class CongruenceReport(BaseModel):
    prime: int
    level: int
    power_difference_ok: bool
    frobenius_residue: list
    unit: int
    frobenius_ok: bool

    @property
    def passed(self) -> bool:
        return self.power_difference_ok and self.frobenius_ok


def congruence_check(r: int, p: int) -> CongruenceReport:
    """
    Both congruences modulo cyclotomic factors.

    x^{p^r} - y^{p^r} = prod_i (x - q^i y) modulo phi^{r-1}(xi~), and
    phi^r(xi~) = p * u modulo xi~ with the unit u read off the residue.
    """
    if r < 1:
        raise ValueError("congruence_check needs r >= 1")
    lhs, rhs = reduction_congruence(p, r)
    residue = cyclotomic_reduce(frobenius_power_of_xi(p, r), p, 1)
    vector = residue.as_dict().get((0, 0), (0,) * residue.degree)
    constant_only = not any(vector[1:])
    unit = vector[0] // p if vector[0] % p == 0 else 0
    return CongruenceReport(
        prime=p,
        level=r,
        power_difference_ok=lhs == rhs,
        frobenius_residue=list(vector),
        unit=unit,
        frobenius_ok=constant_only and unit % p != 0,
    )
