"""The q-logarithm of rank-one elements of 1 + N^{>=1} in the tower."""
import logging
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel

from errors import HypothesisError
from padic.padic_num import PadicNum, factorial_valuation, int_valuation
from prism.delta import phi_power_xi, rank_one_check, xi_tilde
from prism.factorization import qint_factorize
from prism.nygaard import nygaard_level
from prism.serialization import nygaard_to_json
from series.certificates import distinguished_divide
from series.tower import TowerSeries, divide, evaluate_q1, frobenius

logger = logging.getLogger(__name__)


def division_loss(n: int, p: int, order: int, level: int = 0) -> int:
    """Digits lost dividing by the twists of xi~ in [n]_q: a full order per
    factor that fits below s^order, one digit per factor that does not."""
    loss = 0
    for r in range(1, int_valuation(n, p) + 1):
        degree = (p ** r - p ** (r - 1)) * p ** level
        loss += order if degree < order else 1
    return loss


def qlog_working_precision(p: int, precision: int, order: int, level: int = 0) -> int:
    """
    Input precision for qlog_element to return a result at ``precision``.

    Term n loses division_loss(n) digits and the result is certified up to
    Nygaard level 2, which costs two more orders.
    """
    deepest = max((division_loss(n, p, order, level) for n in range(1, order)), default=0)
    return precision + deepest + 2 * order


class QLogReport(BaseModel):
    """Bookkeeping for one evaluation of log_q."""

    input: str
    prime: int
    level: int
    terms_used: int
    tail_bound: Dict[str, int]
    precision: int
    order: int
    checks: Dict[str, bool]
    certificates: List[Dict[str, Any]] = []

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def qlog_element(x: TowerSeries, descriptor: str = "x") -> Tuple[TowerSeries, QLogReport]:
    """
    log_q(x) = sum_{n>=1} (-1)^{n-1} q^{-n(n-1)/2} (x-1)(x-q)...(x-q^{n-1}) / [n]_q.

    Every summand is integral: [n]_q splits as a unit times xi~ phi(xi~) ...
    phi^{v_p(n)-1}(xi~), each factor is divided out with a certificate and the
    unit is inverted. Since x(1) = 1 the product lies in (s^n), and dividing
    by a series with nonzero constant term keeps it there, so the sum stops at
    the series order. The report also records the (p, xi~)-adic order
    v_p((M-1)!) that the first dropped term carries.

    Args:
        x (TowerSeries): Rank-one x with x - 1 in N^{>=1}, at the precision of
            qlog_working_precision
        descriptor (str): Label for the report

    Returns:
        tuple: (log_q(x), QLogReport with Nygaard certificates for log_q(x) in
            N^{>=1} and log_q(x) - (x - 1) in N^{>=2})
    """
    p, level, order = x.prime, x.level, x.order
    if not rank_one_check(x):
        raise HypothesisError("log_q needs x of rank 1: phi(x) differs from x^p")
    if nygaard_level(x - 1, 1).level < 1:
        raise HypothesisError("log_q needs x - 1 in N^{>=1}")
    if evaluate_q1(x).value != 1:
        raise HypothesisError("x(1) differs from 1")

    q = TowerSeries.q(p, level, x.precision, order)
    q_inverse = q.inverse()
    result = TowerSeries.zero(p, level, x.precision, order)
    pochhammer = TowerSeries.constant(1, p, level, x.precision, order)
    q_power = TowerSeries.constant(1, p, level, x.precision, order)
    twist = TowerSeries.constant(1, p, level, x.precision, order)
    step = TowerSeries.constant(1, p, level, x.precision, order)
    for n in range(1, order):
        pochhammer = pochhammer * (x - q_power)
        q_power = q_power * q
        twist = twist * step
        step = step * q_inverse
        term = _divide_by_q_integer(pochhammer, n)
        sign = 1 if n % 2 else -1
        result = result + term * twist * sign

    level_one = nygaard_level(result, 1)
    residual = nygaard_level(result - (x - 1), 2)
    checks = {
        "in_nygaard_1": level_one.level >= 1 and level_one.verify(),
        "congruent_x_minus_1_mod_nygaard_2": residual.level >= 2 and residual.verify(),
    }
    report = QLogReport(
        input=descriptor,
        prime=p,
        level=level,
        terms_used=order - 1,
        tail_bound={"cutoff": order, "s_adic_order": order, "xi_adic_order": factorial_valuation(order - 1, p)},
        precision=residual.precision,
        order=order,
        checks=checks,
        certificates=[nygaard_to_json(level_one), nygaard_to_json(residual)],
    )
    if not report.passed:
        logger.error(f"q-log checks failed for {descriptor}: {checks}")
    return result.truncate(residual.precision), report


def _divide_by_q_integer(f: TowerSeries, n: int) -> TowerSeries:
    """f / [n]_q through the factorization [n]_q = u xi~ phi(xi~) ... phi^{v-1}(xi~)."""
    factorization = qint_factorize(n, f.prime, f.precision, f.order, f.level)
    current = f
    for r, _ in factorization.factors():
        divisor = phi_power_xi(r - 1, f.prime, current.precision, f.order, f.level)
        if (f.prime ** r - f.prime ** (r - 1)) * f.prime ** f.level < f.order:
            current = distinguished_divide(current, divisor).quotient
        else:
            # below s^order this factor is p times a unit
            current = divide(current, divisor)
    return current * factorization.unit.truncate(current.precision).inverse()


class AdditivityReport(BaseModel):
    passed: bool
    precision: int


def verify_additivity(x: TowerSeries, y: TowerSeries) -> AdditivityReport:
    """log_q(xy) = log_q(x) + log_q(y) at the common precision."""
    log_x, _ = qlog_element(x, "x")
    log_y, _ = qlog_element(y, "y")
    log_xy, _ = qlog_element(x * y, "xy")
    total = log_x + log_y
    return AdditivityReport(passed=log_xy.agrees_with(total), precision=min(log_xy.precision, total.precision))


class EigenspaceReport(BaseModel):
    passed: bool
    first_difference: int = -1


def eigenspace_check(y: TowerSeries) -> EigenspaceReport:
    """Whether phi(y) = xi~ y at the precision of y."""
    xi = xi_tilde(y.prime, y.precision, y.order, y.level)
    difference = frobenius(y) - xi * y
    nonzero = [i for i, c in enumerate(difference.coeffs) if c]
    return EigenspaceReport(passed=not nonzero, first_difference=nonzero[0] if nonzero else -1)


def mu(p: int, precision: int, order: int, level: int = 0) -> TowerSeries:
    """mu = q - 1."""
    return TowerSeries.q(p, level, precision, order) - 1


def scaled_mu(a: PadicNum, precision: int, order: int, level: int = 0) -> TowerSeries:
    """a * mu with a as a p-adic scalar."""
    return mu(a.prime, precision, order, level) * a
