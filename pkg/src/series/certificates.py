"""Divisibility certificates in the tower, re-checkable by multiplication."""
import logging
from dataclasses import dataclass
from typing import Optional

from errors import PrecisionError, ShapeError
from series.tower import TowerSeries, divide

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DivisibilityCertificate:
    """
    Evidence that ``divisor * quotient = dividend`` modulo (p^precision, s^order).

    Args:
        dividend (TowerSeries): The divided element
        divisor (TowerSeries): A distinguished polynomial in the level variable
        quotient (TowerSeries): The solved quotient
        precision (int): Coefficient precision N' the identity holds at
        order (int): Series order M' the identity holds at
    """

    dividend: TowerSeries
    divisor: TowerSeries
    quotient: TowerSeries
    precision: int
    order: int

    def verify(self) -> bool:
        """Multiply back and compare at the stated precision."""
        try:
            product = (self.divisor * self.quotient).truncate(self.precision, self.order)
            return product.coeffs == self.dividend.truncate(self.precision, self.order).coeffs
        except PrecisionError:
            return False


def check_distinguished_shape(d: TowerSeries) -> int:
    """
    Degree of d if it is a distinguished polynomial, else ShapeError.

    The top nonzero coefficient must be a p-adic unit and every lower one
    divisible by p.
    """
    degree = d.degree()
    if degree < 0:
        raise ShapeError("divisor is zero to precision")
    if d.coeffs[degree] % d.prime == 0:
        raise ShapeError(f"leading coefficient {d.coeffs[degree]} is not a unit")
    for i in range(degree):
        if d.coeffs[i] % d.prime:
            raise ShapeError(f"coefficient of s^{i} is not divisible by {d.prime}")
    return degree


def distinguished_divide(f: TowerSeries, d: TowerSeries, target: Optional[int] = None) -> DivisibilityCertificate:
    """
    Divide by a distinguished polynomial and return the certificate.

    Raises NotDivisibleError with the failing coefficient as evidence when d
    does not divide f, and PrecisionError when the inputs are too coarse for
    the requested quotient precision.
    """
    check_distinguished_shape(d)
    quotient = divide(f, d, target)
    logger.debug(f"Divided at p={f.prime}, h={f.level}: quotient known mod p^{quotient.precision}")
    return DivisibilityCertificate(
        dividend=f,
        divisor=d,
        quotient=quotient,
        precision=quotient.precision,
        order=quotient.order,
    )
