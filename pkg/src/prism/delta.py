"""The distinguished element xi~ = [p]_q, its Frobenius twists and the delta-structure."""
import logging
from typing import Any, Dict, Tuple

from errors import InternalConsistencyError, PrecisionError
from qcomb.cyclotomic import frobenius_power_of_xi, xi_r_poly
from qcomb.qanalogs import q_int
from series.tower import TowerSeries, embed, evaluate_q1, frobenius, phi_inverse

logger = logging.getLogger(__name__)


def require_below_order(degree: int, order: int, what: str = "divisor"):
    """Division needs the leading coefficient inside the truncation."""
    if degree >= order:
        raise PrecisionError(f"{what} has degree {degree}, beyond series order {order}", required=degree + 1)


def xi_tilde(p: int, precision: int, order: int, level: int = 0) -> TowerSeries:
    """xi~ = [p]_q = 1 + q + ... + q^{p-1}."""
    return TowerSeries.from_laurent(q_int(p), p, level, precision, order)


def phi_power_xi(r: int, p: int, precision: int, order: int, level: int = 0) -> TowerSeries:
    """phi^r(xi~) = [p]_{q^{p^r}}."""
    if r < 0:
        raise ValueError("Frobenius power must be nonnegative")
    return TowerSeries.from_laurent(frobenius_power_of_xi(p, r), p, level, precision, order)


def xi_r(r: int, p: int, precision: int, order: int, level: int = 0) -> TowerSeries:
    """xi~_r = xi~ phi(xi~) ... phi^{r-1}(xi~) as a product in the tower."""
    result = TowerSeries.constant(1, p, level, precision, order)
    for i in range(r):
        result = result * phi_power_xi(i, p, precision, order, level)
    return result


def xi_r_matches_q_integer(r: int, p: int) -> bool:
    """The exact identity xi~_r = [p^r]_q in Z[q]."""
    return xi_r_poly(p, r) == q_int(p ** r)


def xi(p: int, precision: int, order: int) -> TowerSeries:
    """xi = phi^{-1}(xi~) at level 1."""
    return phi_inverse(xi_tilde(p, precision, order))


def xi_frobenius_check(p: int, precision: int, order: int) -> bool:
    """frobenius(xi) = xi~ after embedding xi~ into level 1."""
    return frobenius(xi(p, precision, order)).agrees_with(embed(xi_tilde(p, precision, order), 1))


def delta(f: TowerSeries) -> TowerSeries:
    """
    delta(f) = (phi(f) - f^p)/p.

    Args:
        f (TowerSeries): Input carrying one guard digit, i.e. at precision N + 1

    Returns:
        TowerSeries: delta(f) at precision N
    """
    if f.precision < 1:
        raise PrecisionError("delta needs one guard digit of coefficient precision", required=1)
    p = f.prime
    difference = frobenius(f) - f ** p
    out = []
    for i, c in enumerate(difference.coeffs):
        if c % p:
            raise InternalConsistencyError(
                f"phi(f) - f^p has coefficient {c} at s^{i}, not divisible by {p}"
            )
        out.append(c // p)
    return TowerSeries(p, f.level, f.order, f.precision - 1, tuple(out))


def is_distinguished(f: TowerSeries) -> Tuple[bool, Dict[str, Any]]:
    """
    f is distinguished when f(1) is not a unit while delta(f)(1) is.

    Returns:
        tuple: (verdict, evidence with both residues modulo p)
    """
    if f.precision < 2:
        raise PrecisionError("the unit test on delta(f) needs f at precision >= 2", required=2)
    f_at_1 = evaluate_q1(f)
    delta_at_1 = evaluate_q1(delta(f))
    evidence = {
        "f_at_1_mod_p": f_at_1.value % f.prime,
        "delta_at_1_mod_p": delta_at_1.value % f.prime if delta_at_1.precision else None,
    }
    verdict = not f_at_1.is_unit() and delta_at_1.is_unit()
    return verdict, evidence


def rank_one_check(x: TowerSeries) -> bool:
    """phi(x) = x^p at the precision of x."""
    return frobenius(x).agrees_with(x ** x.prime)
