"""The model case of the trace formula: eps^a maps to log_q(q^a) = a (q - 1)."""
import logging
from dataclasses import dataclass
from typing import Tuple

from pydantic import BaseModel

from errors import PrecisionError
from padic.padic_num import PadicNum, factorial_valuation
from qlog.element import QLogReport, eigenspace_check, qlog_element, qlog_working_precision, scaled_mu
from series.tower import TowerSeries, binomial_qpower

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TateExponent:
    """The element eps^a of the Tate module, identified with q^a in the base prism."""

    a: PadicNum

    @classmethod
    def from_int(cls, value: int, p: int, precision: int) -> "TateExponent":
        return cls(PadicNum(p, precision, value))


def trace_model_precision(p: int, precision: int, order: int) -> int:
    """Digits of a needed for trace_map_model to answer at ``precision``."""
    return qlog_working_precision(p, precision, order) + factorial_valuation(order, p)


class TraceModelReport(BaseModel):
    exponent: str
    matches_a_mu: bool
    eigenspace: bool
    qlog: QLogReport

    @property
    def passed(self) -> bool:
        return self.matches_a_mu and self.eigenspace and self.qlog.passed


def trace_map_model(exponent: TateExponent, precision: int, order: int, level: int = 0) -> Tuple[TowerSeries, TraceModelReport]:
    """
    log_q(q^a), compared against a * mu and checked to lie in the phi = xi~ eigenspace.

    Args:
        exponent (TateExponent): a, at precision trace_model_precision(p, N, M)
        precision (int): Coefficient precision N of the answer
        order (int): Series order M

    Returns:
        tuple: (log_q(q^a) at precision N, TraceModelReport)
    """
    a = exponent.a
    working = qlog_working_precision(a.prime, precision, order)
    required = working + factorial_valuation(order, a.prime)
    if a.precision < required:
        raise PrecisionError(
            f"the exponent needs {required} digits for precision {precision} at order {order}", required=required
        )
    x = binomial_qpower(a, order, working, level)
    log_x, qlog_report = qlog_element(x, descriptor=f"q^{a.reduce(precision).signed()}")
    result = log_x.truncate(precision)
    expected = scaled_mu(a.reduce(precision), precision, order, level)
    report = TraceModelReport(
        exponent=str(a.reduce(precision)),
        matches_a_mu=result.agrees_with(expected),
        eigenspace=eigenspace_check(result).passed,
        qlog=qlog_report,
    )
    if not report.passed:
        logger.error(f"Trace model check failed for a = {a.reduce(precision)}")
    return result, report
