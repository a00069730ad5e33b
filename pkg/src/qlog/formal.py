"""The formal q-logarithm in Q[[q-1, x-1]] and its characterizations."""
import logging
from typing import List

from pydantic import BaseModel

from qcomb.qanalogs import q_factorial
from series.bivar import BivarSeries, nabla_q, qtaylor_expand, qtaylor_reconstruct, series_log

logger = logging.getLogger(__name__)


def qlog_formal(order_q: int, order_x: int) -> BivarSeries:
    """
    log_q(x) = sum_{n>=1} (-1)^{n-1} q^{-n(n-1)/2} (x,-1;q)_n / [n]_q.

    The n-th summand lies in (q-1, x-1)^n, so the sum stops below order_x.
    """
    if order_q < 1 or order_x < 1:
        raise ValueError("truncation orders must be at least 1")
    q = BivarSeries.q(order_q, order_x)
    x = BivarSeries.x(order_q, order_x)
    q_inverse = q.inverse()
    one = BivarSeries.constant(1, order_q, order_x)

    result = BivarSeries(order_q, order_x)
    pochhammer = one
    q_power = one
    q_integer = BivarSeries(order_q, order_x)
    twist = one
    step = one
    for n in range(1, order_x):
        pochhammer = pochhammer * (x - q_power)
        q_integer = q_integer + q_power
        q_power = q_power * q
        twist = twist * step
        step = step * q_inverse
        sign = 1 if n % 2 else -1
        result = result + pochhammer * (twist * q_integer.inverse() * sign)
    return result


class CharacterizationReport(BaseModel):
    order_q: int
    order_x: int
    nabla_is_inverse_x: bool
    vanishes_at_x1: bool
    log_ratio_holds: bool

    @property
    def passed(self) -> bool:
        return self.nabla_is_inverse_x and self.vanishes_at_x1 and self.log_ratio_holds


def verify_characterization(order_q: int, order_x: int) -> CharacterizationReport:
    """
    Check nabla_q(log_q) = 1/x, log_q(1) = 0 and log(q) log_q(x) = (q-1) log(x).

    The last identity is the cross-multiplied form of log_q = (q-1)/log(q) * log.
    """
    log_q = qlog_formal(order_q, order_x)
    derivative = nabla_q(log_q)
    inverse_x = BivarSeries.x(derivative.order_q, derivative.order_x).inverse()

    q = BivarSeries.q(order_q, order_x)
    x = BivarSeries.x(order_q, order_x)
    lhs = series_log(q) * log_q
    rhs = (q - 1) * series_log(x)

    report = CharacterizationReport(
        order_q=order_q,
        order_x=order_x,
        nabla_is_inverse_x=derivative == inverse_x,
        vanishes_at_x1=log_q.evaluate_x1().is_zero(),
        log_ratio_holds=lhs == rhs,
    )
    if not report.passed:
        logger.error(f"q-log characterization failed at ({order_q}, {order_x}): {report}")
    return report


def qlog_taylor_coefficients(count: int, order_q: int, order_x: int) -> List[BivarSeries]:
    """a_0 = 0 and a_n = (-1)^{n-1} q^{-n(n-1)/2} [n-1]_q! for n >= 1."""
    coeffs = [BivarSeries(order_q, order_x)]
    for n in range(1, count):
        poly = q_factorial(n - 1).shift(q=-n * (n - 1) // 2) * (1 if n % 2 else -1)
        coeffs.append(BivarSeries.from_laurent(poly, order_q, order_x))
    return coeffs


def inverse_x_taylor_coefficients(count: int, order_q: int, order_x: int) -> List[BivarSeries]:
    """a_n(1/x) = (-1)^n q^{-n(n+1)/2} [n]_q!, one index below those of log_q."""
    coeffs = []
    for n in range(count):
        poly = q_factorial(n).shift(q=-n * (n + 1) // 2) * (-1) ** n
        coeffs.append(BivarSeries.from_laurent(poly, order_q, order_x))
    return coeffs


def taylor_coefficients_match(expanded: List[BivarSeries], closed_form: List[BivarSeries]) -> bool:
    return len(expanded) == len(closed_form) and all(
        a.agrees_with(b) for a, b in zip(expanded, closed_form)
    )


def verify_taylor_coefficients(count: int, order_q: int, order_x: int) -> bool:
    """
    The expansion of log_q has the closed-form coefficients, and so does the
    expansion of 1/x after shifting by one index.
    """
    closed = qlog_taylor_coefficients(count, order_q, order_x)
    from_log = qtaylor_expand(qlog_formal(order_q, order_x), count)
    inverse_x = BivarSeries.x(order_q, order_x).inverse()
    from_inverse = qtaylor_expand(inverse_x, count - 1)
    return (
        taylor_coefficients_match(from_log, closed)
        and taylor_coefficients_match(from_inverse, closed[1:])
        and taylor_coefficients_match(from_inverse, inverse_x_taylor_coefficients(count - 1, order_q, order_x))
    )


class UniquenessReport(BaseModel):
    vacuous: bool
    passed: bool


def verify_uniqueness(f: BivarSeries) -> UniquenessReport:
    """An element whose q-Taylor coefficients all vanish is zero to truncation."""
    coeffs = qtaylor_expand(f)
    if not all(a.is_zero() for a in coeffs):
        return UniquenessReport(vacuous=True, passed=True)
    order_x = min(f.order_q, f.order_x)
    return UniquenessReport(vacuous=False, passed=f.truncate(f.order_q, order_x).is_zero())


def round_trip(f: BivarSeries) -> bool:
    """qtaylor_reconstruct(qtaylor_expand(f)) = f modulo J(M_q, min(M_q, M_x))."""
    rebuilt = qtaylor_reconstruct(qtaylor_expand(f))
    return rebuilt == f.truncate(rebuilt.order_q, rebuilt.order_x)


def taylor_difference(f: BivarSeries) -> BivarSeries:
    """f minus its q-Taylor reconstruction; all of its q-Taylor coefficients vanish."""
    rebuilt = qtaylor_reconstruct(qtaylor_expand(f))
    return f.truncate(rebuilt.order_q, rebuilt.order_x) - rebuilt

