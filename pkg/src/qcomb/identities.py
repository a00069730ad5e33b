"""Exact checks of the q-analog identities.

Each checker computes both sides as LaurentPoly values and compares them
exactly; the report carries the difference when they disagree.
"""
import logging
import random
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel

from errors import UnknownIdentityError
from qcomb.cyclotomic import reduction_congruence
from qcomb.laurent import LaurentPoly
from qcomb.qanalogs import (q_binomial, q_derivative, q_int, q_pochhammer,
                            q_power_relation)

logger = logging.getLogger(__name__)


class IdentityReport(BaseModel):
    name: str
    params: List[int]
    passed: bool
    lhs: str
    rhs: str
    difference: Optional[str] = None


def _addition(n: int, k: int) -> Tuple[LaurentPoly, LaurentPoly]:
    return q_int(n + k), q_int(n).shift(q=k) + q_int(k)


def _negation(n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    return q_int(-n), -q_int(n).shift(q=-n)


def _pascal(n: int, k: int) -> Tuple[LaurentPoly, LaurentPoly]:
    rhs = q_binomial(n - 1, k - 1)
    if k <= n - 1:
        rhs = rhs + q_binomial(n - 1, k).shift(q=k)
    return q_binomial(n, k), rhs


def _binomial_theorem(n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    rhs = LaurentPoly()
    for k in range(n + 1):
        rhs = rhs + q_binomial(n, k).shift(q=k * (k - 1) // 2, x=n - k, y=k)
    return q_pochhammer(n), rhs


def _pochhammer_derivative(n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    return q_derivative(q_pochhammer(n)), q_int(n) * q_pochhammer(n - 1)


def random_laurent(rng: random.Random, degree: int = 10, terms: int = 6) -> LaurentPoly:
    """A random Laurent polynomial in q and x with small integer coefficients."""
    return LaurentPoly({
        (rng.randint(-degree, degree), rng.randint(-degree, degree), 0): rng.randint(-9, 9)
        for _ in range(terms)
    })


def _leibniz(seed: int) -> Tuple[LaurentPoly, LaurentPoly]:
    rng = random.Random(seed)
    f, g = random_laurent(rng), random_laurent(rng)
    lhs = q_derivative(f * g)
    rhs = q_derivative(f) * g.scale_variable("x", 1) + f * q_derivative(g)
    return lhs, rhs


def _cyclotomic_congruence(p: int, r: int) -> Tuple[LaurentPoly, LaurentPoly]:
    lhs, rhs = reduction_congruence(p, r)
    return lhs.lift(), rhs.lift()


def _divisible_relation(m: int, n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    return q_int(m), q_power_relation(m, n)


IDENTITIES: Dict[str, Tuple[Callable[..., Tuple[LaurentPoly, LaurentPoly]], int]] = {
    "addition": (_addition, 2),
    "negation": (_negation, 1),
    "pascal": (_pascal, 2),
    "binomial-theorem": (_binomial_theorem, 1),
    "pochhammer-derivative": (_pochhammer_derivative, 1),
    "leibniz": (_leibniz, 1),
    "cyclotomic-congruence": (_cyclotomic_congruence, 2),
    "divisible-relation": (_divisible_relation, 2),
}


def _validate(name: str, params: List[int]):
    if name in ("pascal",) and not 1 <= params[1] <= params[0]:
        raise ValueError("pascal needs 1 <= k <= n")
    if name in ("binomial-theorem",) and params[0] < 0:
        raise ValueError("binomial-theorem needs n >= 0")
    if name == "pochhammer-derivative" and params[0] < 1:
        raise ValueError("pochhammer-derivative needs n >= 1")
    if name == "cyclotomic-congruence" and params[1] < 1:
        raise ValueError("cyclotomic-congruence needs r >= 1")
    if name == "divisible-relation" and (params[1] < 1 or params[0] % params[1]):
        raise ValueError("divisible-relation needs n >= 1 dividing m")


def _preview(poly: LaurentPoly, limit: int = 240) -> str:
    text = str(poly)
    return text if len(text) <= limit else text[:limit] + " ..."


def check_identity(name: str, params: List[int]) -> IdentityReport:
    """
    Check one named identity at the given parameters.

    Args:
        name (str): One of the keys of IDENTITIES
        params (list): Integer parameters, e.g. [n, k] for pascal, [p, r] for
            cyclotomic-congruence, [seed] for leibniz

    Returns:
        IdentityReport: pass/fail with the exact difference on failure
    """
    if name not in IDENTITIES:
        raise UnknownIdentityError(f"unknown identity: {name}")
    checker, arity = IDENTITIES[name]
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    _validate(name, params)
    lhs, rhs = checker(*params)
    passed = lhs == rhs
    if not passed:
        logger.error(f"Identity {name}{params} failed")
    return IdentityReport(
        name=name,
        params=list(params),
        passed=passed,
        lhs=_preview(lhs),
        rhs=_preview(rhs),
        difference=None if passed else str(lhs - rhs),
    )
