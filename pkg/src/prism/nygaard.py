"""Nygaard filtration certificates: phi(f) = xi~^n g, witnessed by g."""
import logging
from dataclasses import dataclass
from typing import Optional

from errors import NotDivisibleError, PrecisionError
from prism.delta import require_below_order, xi_r, xi_tilde
from series.certificates import DivisibilityCertificate, distinguished_divide
from series.tower import TowerSeries, frobenius

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NygaardCertificate:
    """
    Evidence that f lies in N^{>=level}: phi(f) = xi~^level * quotient.

    The identity holds modulo (p^precision, s^order).
    """

    element: TowerSeries
    level: int
    quotient: TowerSeries
    precision: int
    order: int

    def verify(self) -> bool:
        f = self.element
        try:
            divisor = xi_tilde(f.prime, f.precision, f.order, f.level) ** self.level
            lhs = frobenius(f).truncate(self.precision, self.order)
            rhs = (divisor * self.quotient).truncate(self.precision, self.order)
        except PrecisionError:
            return False
        return lhs.coeffs == rhs.coeffs


def nygaard_level(f: TowerSeries, cap: int) -> NygaardCertificate:
    """
    The largest n <= cap with xi~^n | phi(f), with the quotient as witness.

    Every division by xi~ costs ``order`` digits of coefficient precision, so
    certifying level n needs f at precision at least n*M + 1.

    Args:
        f (TowerSeries): The element
        cap (int): Highest level to try

    Returns:
        NygaardCertificate: At level 0 when xi~ does not divide phi(f)

    Raises:
        PrecisionError: when precision runs out below ``cap`` and below the
            first failed division; ``achieved`` carries the level reached
    """
    divisor = xi_tilde(f.prime, f.precision, f.order, f.level)
    degree = (f.prime - 1) * f.prime ** f.level
    if degree >= f.order or cap * degree > f.order:
        raise PrecisionError(
            f"level {cap} needs series order >= {cap * degree}, got {f.order}", required=cap * degree
        )
    current = frobenius(f)
    level = 0
    while level < cap:
        try:
            step = distinguished_divide(current, divisor.truncate(current.precision))
        except NotDivisibleError as e:
            logger.debug(f"xi~ stops dividing phi(f) at level {level}: {e.evidence}")
            break
        except PrecisionError as e:
            raise PrecisionError(
                f"precision exhausted at Nygaard level {level} of {cap}",
                required=f.precision + (cap - level) * f.order,
                achieved=level,
            ) from e
        current = step.quotient
        level += 1
    return NygaardCertificate(element=f, level=level, quotient=current, precision=current.precision, order=current.order)


def ideal_membership(f: TowerSeries, r: int, target: Optional[int] = None) -> DivisibilityCertificate:
    """Certify f in I_r = (xi~_r) = ([p^r]_q) by division by xi~_r."""
    require_below_order((f.prime ** r - 1) * f.prime ** f.level, f.order, f"xi~_{r}")
    generator = xi_r(r, f.prime, f.precision, f.order, f.level)
    return distinguished_divide(f, generator, target)
